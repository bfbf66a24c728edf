#include "klein/fusion.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace klein {

namespace {

// canonical current that flips the +/- decorations of sector r
constexpr int kFlipCurrent[4] = {0, 3, 2, 2};

// half-level decoration pair produced by T_r(i)^+ x T_s(k/2)^{v1} for even i.
// The (1,2) entry is the printed rule; the rest close the ring under
// associativity and are certified by the exact oracles.
constexpr int kCrossHalfPair[4][4][2] = {
    {{0, 0}, {0, 0}, {0, 0}, {0, 0}},
    {{0, 0}, {0, 0}, {1, 4}, {1, 3}},
    {{0, 0}, {1, 3}, {0, 0}, {1, 3}},
    {{0, 0}, {1, 4}, {1, 4}, {0, 0}},
};

int third_sector(int r, int s) { return r ^ s; }

Dec oriented_sign(int i, int j, int l, Dec orientation) {
    Dec base = sign_rule(i, j, l);
    return orientation == Dec::Plus ? base : flip_sign(base);
}

// weights reachable when one factor sits at the half weight k/2
std::vector<int> half_range(int i, int k) {
    std::vector<int> out;
    for (int l = std::abs(i - k / 2); l <= k / 2 - 1; ++l)
        if ((i + k / 2 + l) % 2 == 0) out.push_back(l);
    return out;
}

class OutcomeBuilder {
public:
    explicit OutcomeBuilder(int k) : k_(k) {}

    void add_untwisted(int l, Dec dec, int mult = 1) { add({Sector::E, l, dec}, mult); }

    // twisted term with a +/- decoration: fold l > k/2, expand l == k/2
    void add_twisted(Sector r, int l, Dec sign, int mult = 1) {
        if (2 * l > k_) l = k_ - l;
        if (k_ % 2 == 0 && l == k_ / 2) {
            int v = sign == Dec::Plus ? 1 : 3;
            add({r, l, variant_dec(v)}, mult);
            add({r, l, variant_dec(v + 1)}, mult);
        } else {
            add({r, l, sign}, mult);
        }
    }

    void add_half(Sector r, int variant, int mult = 1) {
        add({r, k_ / 2, variant_dec(variant)}, mult);
    }

    FusionOutcome take() { return std::move(out_); }

private:
    void add(const Label& lab, int mult) {
        assert(is_canonical(lab, k_));
        out_[lab] += mult;
    }

    int k_;
    FusionOutcome out_;
};

bool same_sector_twisted(const Label& a, const Label& b) {
    return a.sector != Sector::E && a.sector == b.sector;
}

const char* family_name(const Label& a, const Label& b, int k) {
    if (a.sector == Sector::E && b.sector == Sector::E) {
        bool oa = a.i % 2, ob = b.i % 2;
        return oa && ob ? "uu-odd-odd" : (oa || ob ? "uu-odd-even" : "uu-even-even");
    }
    if (a.sector == Sector::E) {
        if (is_half_level(b, k)) return a.i % 2 ? "ut-odd-half" : "ut-even-half";
        return a.i % 2 ? "ut-odd" : "ut-even";
    }
    if (same_sector_twisted(a, b)) return "tt-same-closure";
    bool ha = is_half_level(a, k), hb = is_half_level(b, k);
    if (ha && hb) return k % 4 == 0 ? "tt-half-half-4Z" : "tt-half-half";
    if (ha || hb) {
        const Label& n = ha ? b : a;
        if (n.i % 2) return "tt-half-odd";
        int r = static_cast<int>(n.sector);
        int s = static_cast<int>((ha ? a : b).sector);
        return (r == 1 && s == 2) ? "tt-half-even" : "tt-half-even-derived";
    }
    return "tt-generic";
}

}  // namespace

Dec sign_rule(int i, int j, int l) {
    if ((i + j + l) % 2 != 0)
        throw std::invalid_argument("sign_rule: i+j+l must be even");
    return ((i + j - l) % 4 + 4) % 4 == 0 ? Dec::Plus : Dec::Minus;
}

std::vector<int> affine_range(int i, int j, int k) {
    std::vector<int> out;
    int hi = std::min(i + j, 2 * k - i - j);
    for (int l = std::abs(i - j); l <= hi; ++l)
        if ((i + j + l) % 2 == 0) out.push_back(l);
    return out;
}

FusionOutcome fuse_uu(const Label& a, const Label& b, Level level) {
    const int k = level.value();
    if (a.sector != Sector::E || b.sector != Sector::E)
        throw std::invalid_argument("fuse_uu: untwisted labels required");
    OutcomeBuilder out(k);
    bool oa = a.i % 2, ob = b.i % 2;
    if (oa && ob) {
        for (int l : affine_range(a.i, b.i, k))
            for (int v = 1; v <= 4; ++v) out.add_untwisted(l, variant_dec(v));
    } else if (oa || ob) {
        for (int l : affine_range(a.i, b.i, k)) out.add_untwisted(l, Dec::Plus);
    } else {
        int v0 = variant_mul(variant_index(a.dec), variant_index(b.dec));
        int v2 = variant_mul(v0, 4);
        for (int l : affine_range(a.i, b.i, k))
            out.add_untwisted(l, variant_dec((a.i + b.i + l) % 4 == 0 ? v0 : v2));
    }
    return out.take();
}

FusionOutcome fuse_ut(const Label& a, const Label& b, Level level) {
    const int k = level.value();
    if (a.sector != Sector::E || b.sector == Sector::E || is_half_level(b, k))
        throw std::invalid_argument("fuse_ut: untwisted x twisted below the half weight");
    OutcomeBuilder out(k);
    Sector r = b.sector;
    if (a.i % 2 == 1) {
        for (int l : affine_range(a.i, b.i, k)) {
            out.add_twisted(r, l, Dec::Plus);
            out.add_twisted(r, l, Dec::Minus);
        }
    } else {
        int d = sigma_dec(static_cast<int>(r), variant_index(a.dec), a.i);
        Dec orient = d <= 2 ? b.dec : flip_sign(b.dec);
        for (int l : affine_range(a.i, b.i, k))
            out.add_twisted(r, l, oriented_sign(a.i, b.i, l, orient));
    }
    return out.take();
}

FusionOutcome fuse_ut_half(const Label& a, const Label& b, Level level) {
    const int k = level.value();
    if (k % 2 != 0) throw std::invalid_argument("fuse_ut_half: level must be even");
    if (a.sector != Sector::E || !is_half_level(b, k))
        throw std::invalid_argument("fuse_ut_half: untwisted x half-level required");
    OutcomeBuilder out(k);
    Sector r = b.sector;
    if (a.i % 2 == 1) {
        for (int l : half_range(a.i, k)) {
            out.add_twisted(r, l, Dec::Plus);
            out.add_twisted(r, l, Dec::Minus);
        }
        return out.take();
    }
    // reduce the variant pair to the base case through the vacuum variants,
    // then apply the rule for that base
    int d = sigma_dec(static_cast<int>(r), variant_index(a.dec), a.i);
    int e = variant_mul(d, variant_index(b.dec));
    int bar = a.i % 4 == 2 ? 2 : 0;
    Dec pos = e <= 2 ? Dec::Plus : Dec::Minus;
    int trail = e <= 2 ? e + bar : e - bar;
    for (int l : half_range(a.i, k))
        out.add_twisted(r, l, (a.i + k / 2 - l) % 4 == 0 ? pos : flip_sign(pos));
    out.add_half(r, trail);
    return out.take();
}

FusionOutcome fuse_tt_cross(const Label& a, const Label& b, Level level) {
    const int k = level.value();
    const int r = static_cast<int>(a.sector), s = static_cast<int>(b.sector);
    if (r == s || r == 0 || s == 0)
        throw std::invalid_argument("fuse_tt_cross: distinct twisted sectors required");
    Sector t = static_cast<Sector>(third_sector(r, s));
    OutcomeBuilder out(k);
    bool ha = is_half_level(a, k), hb = is_half_level(b, k);

    if (!ha && !hb) {
        for (int l : affine_range(a.i, b.i, k)) {
            out.add_twisted(t, l, Dec::Plus);
            out.add_twisted(t, l, Dec::Minus);
        }
        return out.take();
    }
    if (ha && hb) {
        int c = variant_mul(sigma_dec(r, variant_index(a.dec), 0),
                            sigma_dec(s, variant_index(b.dec), 0));
        int cd = sigma_dec(static_cast<int>(t), c, 0);
        Dec pm = cd <= 2 ? Dec::Plus : Dec::Minus;
        for (int l = 0; l < k / 2; l += 2) out.add_twisted(t, l, pm);
        if (k % 4 == 0) out.add_half(t, cd);
        return out.take();
    }
    const Label& nh = ha ? b : a;
    const Label& hf = ha ? a : b;
    if (nh.i % 2 == 1) {
        for (int l : half_range(nh.i, k)) {
            out.add_twisted(t, l, Dec::Plus);
            out.add_twisted(t, l, Dec::Minus);
        }
        return out.take();
    }
    // even weight: base case (+, v1) plus simple-current transport
    const int rn = static_cast<int>(nh.sector), sh = static_cast<int>(hf.sector);
    for (int l : half_range(nh.i, k)) {
        out.add_twisted(t, l, Dec::Plus);
        out.add_twisted(t, l, Dec::Minus);
    }
    int ca = nh.dec == Dec::Plus ? 1 : kFlipCurrent[rn];
    int cm = sigma_dec(sh, variant_index(hf.dec), 0);
    int cd = sigma_dec(static_cast<int>(t), variant_mul(ca, cm), 0);
    const int* base = kCrossHalfPair[rn][sh];
    out.add_half(t, variant_mul(cd, base[0]));
    out.add_half(t, variant_mul(cd, base[1]));
    return out.take();
}

namespace {

FusionOutcome fuse_pair_direct(const Label& a, const Label& b, Level level) {
    const Label& lo = a <= b ? a : b;
    const Label& hi = a <= b ? b : a;
    const int k = level.value();
    if (lo.sector == Sector::E && hi.sector == Sector::E) return fuse_uu(lo, hi, level);
    if (lo.sector == Sector::E)
        return is_half_level(hi, k) ? fuse_ut_half(lo, hi, level) : fuse_ut(lo, hi, level);
    if (lo.sector != hi.sector) return fuse_tt_cross(lo, hi, level);
    throw IncompleteError("no direct formula for pair " + to_string(lo) + ", " + to_string(hi));
}

}  // namespace

FusionOutcome fuse_tt_same(const Label& a, const Label& b, Level level) {
    if (!same_sector_twisted(a, b))
        throw std::invalid_argument("fuse_tt_same: equal twisted sectors required");
    FusionOutcome out;
    for (const Label& c : enumerate_labels(level)) {
        if (c.sector != Sector::E) continue;
        FusionOutcome row = fuse_pair_direct(c, a, level);
        auto it = row.find(b);
        if (it != row.end()) out[c] = it->second;
    }
    return out;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t n = jobs > 0 ? static_cast<std::size_t>(jobs) : (hw ? hw : 1);
    n = std::min(n, count ? count : 1);
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        constexpr std::size_t chunk = 8;
        while (true) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            std::size_t end = std::min(begin + chunk, count);
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

FusionTable::FusionTable(int k, std::vector<Label> labels,
                         std::map<std::array<std::int32_t, 3>, std::int32_t> triples)
    : k_(k), labels_(std::move(labels)), triples_(std::move(triples)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
    rebuild_rows();
}

std::size_t FusionTable::pair_id(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    const std::size_t n = labels_.size();
    return a * n - a * (a - 1) / 2 + (b - a);
}

void FusionTable::rebuild_rows() {
    const std::size_t n = labels_.size();
    rows_.assign(n * (n + 1) / 2, {});
    for (const auto& [key, m] : triples_) {
        auto [a, b, c] = key;
        rows_[pair_id(a, b)][labels_[c]] = m;
        rows_[pair_id(a, c)][labels_[b]] = m;
        rows_[pair_id(b, c)][labels_[a]] = m;
    }
}

std::size_t FusionTable::index_of(const Label& lab) const {
    auto it = index_.find(lab);
    if (it == index_.end())
        throw std::invalid_argument("unknown label " + to_string(lab) + " at level " +
                                    std::to_string(k_));
    return it->second;
}

const FusionOutcome& FusionTable::fuse(const Label& a, const Label& b) const {
    return rows_[pair_id(index_of(a), index_of(b))];
}

const FusionOutcome& FusionTable::fuse_by_index(std::size_t a, std::size_t b) const {
    return rows_[pair_id(a, b)];
}

int FusionTable::mult(const Label& a, const Label& b, const Label& c) const {
    std::array<std::int32_t, 3> key{static_cast<std::int32_t>(index_of(a)),
                                    static_cast<std::int32_t>(index_of(b)),
                                    static_cast<std::int32_t>(index_of(c))};
    std::sort(key.begin(), key.end());
    auto it = triples_.find(key);
    return it == triples_.end() ? 0 : it->second;
}

FusionTable FusionTable::with_entry(std::size_t a, std::size_t b, std::size_t c,
                                    std::int32_t mult) const {
    std::array<std::int32_t, 3> key{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b),
                                    static_cast<std::int32_t>(c)};
    std::sort(key.begin(), key.end());
    auto triples = triples_;
    if (mult == 0) triples.erase(key);
    else triples[key] = mult;
    return FusionTable(k_, labels_, std::move(triples));
}

FusionTable build_table(Level level, const BuildOptions& opt) {
    const int k = level.value();
    std::vector<Label> labels = enumerate_labels(level);
    const std::size_t n = labels.size();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) pairs.emplace_back(a, b);

    std::vector<FusionOutcome> rows(pairs.size());
    std::vector<const char*> family(pairs.size(), nullptr);
    std::vector<std::size_t> deferred;
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (same_sector_twisted(labels[pairs[p].first], labels[pairs[p].second]))
            deferred.push_back(p);

    parallel_for(pairs.size(), opt.jobs, [&](std::size_t p) {
        auto [a, b] = pairs[p];
        if (same_sector_twisted(labels[a], labels[b])) return;
        rows[p] = fuse_pair_direct(labels[a], labels[b], level);
        family[p] = family_name(labels[a], labels[b], k);
    });

    // same-sector products through duality: N(a,b,c) = N(c,a,b) with c
    // untwisted, read off the rows already built
    auto pid = [n](std::size_t a, std::size_t b) {
        if (a > b) std::swap(a, b);
        return a * n - a * (a - 1) / 2 + (b - a);
    };
    parallel_for(deferred.size(), opt.jobs, [&](std::size_t d) {
        std::size_t p = deferred[d];
        auto [a, b] = pairs[p];
        FusionOutcome out;
        for (std::size_t c = 0; c < n && labels[c].sector == Sector::E; ++c) {
            const FusionOutcome& row = rows[pid(c, a)];
            auto it = row.find(labels[b]);
            if (it != row.end()) out[labels[c]] = it->second;
        }
        rows[p] = std::move(out);
        family[p] = "tt-same-closure";
    });

    // deterministic merge with conflict detection
    std::map<std::array<std::int32_t, 3>, std::int32_t> triples;
    std::map<std::array<std::int32_t, 3>, std::pair<const char*, std::size_t>> source;
    std::map<Label, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[labels[i]] = i;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (family[p] == nullptr)
            throw IncompleteError("pair " + to_string(labels[pairs[p].first]) + ", " +
                                  to_string(labels[pairs[p].second]) + " covered by no formula");
        auto [a, b] = pairs[p];
        for (const auto& [lab, m] : rows[p]) {
            if (m > 2)
                throw ConflictError("multiplicity " + std::to_string(m) + " above the alias bound in " +
                                    to_string(labels[a]) + " x " + to_string(labels[b]) + " (" +
                                    family[p] + ")");
            std::array<std::int32_t, 3> key{static_cast<std::int32_t>(a),
                                            static_cast<std::int32_t>(b),
                                            static_cast<std::int32_t>(index[lab])};
            std::sort(key.begin(), key.end());
            auto [it, inserted] = triples.emplace(key, m);
            if (inserted) {
                source.emplace(key, std::make_pair(family[p], p));
            } else if (it->second != m) {
                const auto& first = source[key];
                std::ostringstream os;
                os << "conflicting multiplicities for ("
                   << to_string(labels[key[0]]) << ", " << to_string(labels[key[1]]) << ", "
                   << to_string(labels[key[2]]) << ") at k=" << k << ": " << it->second
                   << " from " << first.first << " (pair "
                   << to_string(labels[pairs[first.second].first]) << " x "
                   << to_string(labels[pairs[first.second].second]) << ") vs " << m << " from "
                   << family[p] << " (pair " << to_string(labels[a]) << " x "
                   << to_string(labels[b]) << ")";
                throw ConflictError(os.str());
            }
        }
    }

    FusionTable table(k, std::move(labels), std::move(triples));

    if (opt.check_qdim) {
        std::vector<CycNumber> D = qdim_vector(table);
        std::mutex m;
        std::string failure;
        parallel_for(pairs.size(), opt.jobs, [&](std::size_t p) {
            auto [a, b] = pairs[p];
            if (!qdim_balanced(table, a, b, D)) {
                std::lock_guard lock(m);
                if (failure.empty())
                    failure = "quantum-dimension imbalance in row " +
                              to_string(table.labels()[a]) + " x " + to_string(table.labels()[b]) +
                              " (" + family[p] + ") at k=" + std::to_string(k);
            }
        });
        if (!failure.empty()) throw ConflictError(failure);
    }
    return table;
}

std::vector<CycNumber> qdim_vector(const FusionTable& t) {
    Level level(t.level());
    std::vector<CycNumber> D;
    D.reserve(t.labels().size());
    for (const Label& lab : t.labels()) D.push_back(qdim(lab, level));
    return D;
}

bool qdim_balanced(const FusionTable& t, std::size_t a, std::size_t b,
                   const std::vector<CycNumber>& D) {
    const int n = 4 * (t.level() + 2);
    CycNumber rhs = CycNumber::zero(n);
    for (const auto& [lab, m] : t.fuse_by_index(a, b))
        rhs = rhs + D[t.index_of(lab)] * CycNumber::from_int(n, m);
    return D[a] * D[b] == rhs;
}

std::string FusionTable::to_json() const {
    nlohmann::json j;
    j["k"] = k_;
    std::vector<std::string> names;
    names.reserve(labels_.size());
    for (const auto& lab : labels_) names.push_back(to_string(lab));
    j["labels"] = names;
    auto arr = nlohmann::json::array();
    for (const auto& [key, m] : triples_) arr.push_back({key[0], key[1], key[2], m});
    j["triples"] = arr;
    return j.dump();
}

FusionTable FusionTable::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Level level(j.at("k").get<int>());
    std::vector<Label> labels = enumerate_labels(level);
    auto names = j.at("labels").get<std::vector<std::string>>();
    if (names.size() != labels.size())
        throw std::invalid_argument("table JSON: label list does not match the level");
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (names[i] != to_string(labels[i]))
            throw std::invalid_argument("table JSON: unexpected label " + names[i]);
    std::map<std::array<std::int32_t, 3>, std::int32_t> triples;
    const auto limit = static_cast<std::int32_t>(labels.size());
    for (const auto& row : j.at("triples")) {
        if (!row.is_array() || row.size() != 4)
            throw std::invalid_argument("table JSON: malformed triple");
        std::array<std::int32_t, 3> key{row[0].get<std::int32_t>(), row[1].get<std::int32_t>(),
                                        row[2].get<std::int32_t>()};
        std::int32_t m = row[3].get<std::int32_t>();
        if (key[0] > key[1] || key[1] > key[2] || key[0] < 0 || key[2] >= limit || m <= 0)
            throw std::invalid_argument("table JSON: invalid triple entry");
        triples[key] = m;
    }
    return FusionTable(level.value(), std::move(labels), std::move(triples));
}

namespace {

std::string outcome_terms(const FusionOutcome& out, bool always_mult) {
    std::string s;
    for (const auto& [lab, m] : out) {
        if (!s.empty()) s += " + ";
        s += to_string(lab);
        if (always_mult || m != 1) s += "*" + std::to_string(m);
    }
    return s;
}

}  // namespace

std::string FusionTable::to_csv() const {
    std::string s = "A,B,outcome\n";
    for (std::size_t a = 0; a < labels_.size(); ++a)
        for (std::size_t b = a; b < labels_.size(); ++b)
            s += to_string(labels_[a]) + "," + to_string(labels_[b]) + "," +
                 outcome_terms(rows_[pair_id(a, b)], true) + "\n";
    return s;
}

std::string FusionTable::to_text() const {
    std::string s;
    for (std::size_t a = 0; a < labels_.size(); ++a)
        for (std::size_t b = a; b < labels_.size(); ++b)
            s += to_string(labels_[a]) + " x " + to_string(labels_[b]) + " = " +
                 outcome_terms(rows_[pair_id(a, b)], false) + "\n";
    return s;
}

std::string render_outcome(const FusionOutcome& out) { return outcome_terms(out, false); }

}  // namespace klein
