#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

#include "klein/labels.hpp"

namespace klein {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
const std::vector<BigInt>& cyclotomic_poly(int n);
int euler_phi(int n);

/// An element of Q(zeta_n), stored as a rational polynomial in zeta_n of
/// degree < phi(n), fully reduced mod Phi_n. Quantum dimensions at level k
/// live at conductor n = 4(k+2).
class CycNumber {
public:
    CycNumber() = default;

    static CycNumber zero(int n);
    static CycNumber one(int n);
    static CycNumber from_rational(int n, const Rational& q);
    static CycNumber from_int(int n, long v) { return from_rational(n, Rational(v)); }
    /// zeta_n^e, any integer exponent (reduced mod n).
    static CycNumber zeta_pow(int n, long e);

    int conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;

    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator*(const CycNumber& o) const;
    CycNumber operator-() const;
    bool operator==(const CycNumber& o) const;

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// Phi_n over the rationals. Throws on zero.
    CycNumber invert() const;

    /// Evaluate at zeta_n = exp(2*pi*i/n) in double precision.
    std::complex<double> to_complex() const;
    /// Real part of to_complex().
    double to_float() const;

    /// {"conductor": n, "coeffs": ["p/q", ...], "approx": float} (serialized
    /// by the callers; kept header-light here).
    std::string coeff_string(std::size_t idx) const;

private:
    CycNumber(int n, std::vector<Rational> c);
    void reduce(std::vector<Rational>& poly) const;

    int n_ = 0;
    std::vector<Rational> c_;
};

/// Exact sin(a*pi/(k+2)) as an element of Q(zeta_{4(k+2)}), for 1 <= a <= k+1.
CycNumber sin_value(int a, Level k);

/// Exact quantum dimension of a canonical label:
///   2*sin((i+1)t)/sin(t) for odd untwisted and twisted non-half weights,
///   sin((i+1)t)/sin(t)   for even untwisted variants,
///   1/sin(t)             for the four half-level variants,  t = pi/(k+2).
CycNumber qdim(const Label& lab, Level k);

}  // namespace klein
