#include "klein/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace klein {

namespace {

using Poly = std::vector<BigInt>;  // ascending coefficients

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division of polynomials over Z, remainder must vanish
Poly exact_div(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, BigInt(0));
    while (num.size() >= den.size() && !num.empty()) {
        BigInt c = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        trim(num);
    }
    if (!num.empty()) throw std::logic_error("cyclotomic division left a remainder");
    return q;
}

std::map<int, Poly> g_cyclo;
std::map<int, std::vector<Rational>> g_cyclo_q;
std::mutex g_cyclo_mutex;

const Poly& cyclo_locked(int n) {
    auto it = g_cyclo.find(n);
    if (it != g_cyclo.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    Poly num(n + 1, BigInt(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = exact_div(std::move(num), cyclo_locked(d));
    }
    return g_cyclo.emplace(n, std::move(num)).first->second;
}

struct Ctx {
    int phi;
    const std::vector<Rational>* mod;  // Phi_n with rational coefficients
};

Ctx context(int n) {
    std::lock_guard lock(g_cyclo_mutex);
    const Poly& p = cyclo_locked(n);
    auto it = g_cyclo_q.find(n);
    if (it == g_cyclo_q.end()) {
        std::vector<Rational> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) q[i] = Rational(p[i]);
        it = g_cyclo_q.emplace(n, std::move(q)).first;
    }
    return {static_cast<int>(p.size()) - 1, &it->second};
}

using QPoly = std::vector<Rational>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of p modulo the monic modulus
QPoly qmod(QPoly p, const QPoly& m) {
    qtrim(p);
    while (p.size() >= m.size()) {
        Rational c = p.back();  // modulus is monic
        std::size_t shift = p.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) p[shift + i] -= c * m[i];
        qtrim(p);
    }
    return p;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

QPoly qsub_scaled(QPoly a, const QPoly& b, const QPoly& q) {
    // a - q*b
    QPoly qb = qmul(q, b);
    if (a.size() < qb.size()) a.resize(qb.size(), Rational(0));
    for (std::size_t i = 0; i < qb.size(); ++i) a[i] -= qb[i];
    qtrim(a);
    return a;
}

QPoly qdivmod(QPoly& rem, const QPoly& den) {
    QPoly q(rem.size() >= den.size() ? rem.size() - den.size() + 1 : 0, Rational(0));
    while (rem.size() >= den.size() && !rem.empty()) {
        Rational c = rem.back() / den.back();
        std::size_t shift = rem.size() - den.size();
        q[shift] += c;
        for (std::size_t i = 0; i < den.size(); ++i) rem[shift + i] -= c * den[i];
        qtrim(rem);
    }
    qtrim(q);
    return q;
}

std::string rat_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q) << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

}  // namespace

const std::vector<BigInt>& cyclotomic_poly(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
    std::lock_guard lock(g_cyclo_mutex);
    return cyclo_locked(n);
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_poly(n).size()) - 1; }

CycNumber::CycNumber(int n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}

void CycNumber::reduce(std::vector<Rational>& poly) const {
    Ctx ctx = context(n_);
    poly = qmod(std::move(poly), *ctx.mod);
    poly.resize(ctx.phi, Rational(0));
}

CycNumber CycNumber::zero(int n) {
    return CycNumber(n, std::vector<Rational>(context(n).phi, Rational(0)));
}

CycNumber CycNumber::one(int n) { return from_rational(n, Rational(1)); }

CycNumber CycNumber::from_rational(int n, const Rational& q) {
    CycNumber r = zero(n);
    if (!r.c_.empty()) r.c_[0] = q;
    return r;
}

CycNumber CycNumber::zeta_pow(int n, long e) {
    long m = ((e % n) + n) % n;
    std::vector<Rational> p(m + 1, Rational(0));
    p[m] = 1;
    CycNumber r = zero(n);
    r.reduce(p);
    r.c_ = std::move(p);
    return r;
}

bool CycNumber::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycNumber: conductor mismatch");
    CycNumber r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

CycNumber CycNumber::operator-(const CycNumber& o) const { return *this + (-o); }

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycNumber: conductor mismatch");
    QPoly prod = qmul(c_, o.c_);
    CycNumber r = zero(n_);
    r.reduce(prod);
    r.c_ = std::move(prod);
    return r;
}

bool CycNumber::operator==(const CycNumber& o) const { return n_ == o.n_ && c_ == o.c_; }

CycNumber CycNumber::invert() const {
    if (is_zero()) throw std::invalid_argument("CycNumber: cannot invert zero");
    // extended Euclid on (this, Phi_n) over Q; Phi_n is irreducible so the
    // gcd is a nonzero constant
    Ctx ctx = context(n_);
    QPoly r0 = *ctx.mod, r1 = c_;
    qtrim(r1);
    QPoly s0 = {}, s1 = {Rational(1)};  // coefficients of `this`
    while (true) {
        QPoly q = qdivmod(r0, r1);
        // r0 is now r0 mod r1
        std::swap(r0, r1);
        QPoly s2 = qsub_scaled(std::move(s0), s1, q);
        s0 = std::move(s1);
        s1 = std::move(s2);
        if (r1.empty()) break;
    }
    // r0 = gcd (constant), s0 * this == r0 (mod Phi_n)
    if (r0.size() != 1) throw std::logic_error("CycNumber: modulus not coprime to element");
    Rational inv_c = Rational(1) / r0[0];
    for (auto& c : s0) c *= inv_c;
    CycNumber out = zero(n_);
    out.reduce(s0);
    out.c_ = std::move(s0);
    return out;
}

std::complex<double> CycNumber::to_complex() const {
    const double angle = 2.0 * std::numbers::pi / n_;
    std::complex<double> zeta(std::cos(angle), std::sin(angle));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = c_.size(); i-- > 0;)
        acc = acc * zeta + std::complex<double>(static_cast<double>(c_[i]), 0.0);
    return acc;
}

double CycNumber::to_float() const { return to_complex().real(); }

std::string CycNumber::coeff_string(std::size_t idx) const { return rat_string(c_.at(idx)); }

CycNumber sin_value(int a, Level level) {
    const int k = level.value();
    if (a < 1 || a > k + 1)
        throw std::invalid_argument("sin_value: argument out of range 1..k+1");
    const int n = 4 * (k + 2);
    // (zeta^{2a} - zeta^{-2a}) / (2i) with i = zeta^{n/4}
    CycNumber num = CycNumber::zeta_pow(n, 2 * a) - CycNumber::zeta_pow(n, -2 * a);
    CycNumber inv_2i = CycNumber::zeta_pow(n, 3 * (n / 4)) * CycNumber::from_rational(n, Rational(1, 2));
    return num * inv_2i;
}

namespace {

// 1/sin(pi/(k+2)) per level, behind a read-mostly cache
const CycNumber& inverse_sin1(Level level) {
    static std::map<int, CycNumber> cache;
    static std::mutex m;
    std::lock_guard lock(m);
    auto it = cache.find(level.value());
    if (it == cache.end())
        it = cache.emplace(level.value(), sin_value(1, level).invert()).first;
    return it->second;
}

}  // namespace

CycNumber qdim(const Label& lab, Level level) {
    const int k = level.value();
    if (!is_canonical(lab, k)) throw std::invalid_argument("qdim: label not canonical for level");
    const CycNumber& inv_sin1 = inverse_sin1(level);
    const int n = 4 * (k + 2);
    CycNumber val = [&] {
        if (is_half_level(lab, k)) return inv_sin1;
        CycNumber ratio = sin_value(lab.i + 1, level) * inv_sin1;
        bool doubled = lab.sector != Sector::E || lab.dec == Dec::Plus;
        return doubled ? ratio * CycNumber::from_int(n, 2) : ratio;
    }();
    auto z = val.to_complex();
    if (std::abs(z.imag()) >= 1e-9 || z.real() <= 0.0)
        throw std::logic_error("qdim: value is not a positive real");
    return val;
}

}  // namespace klein
