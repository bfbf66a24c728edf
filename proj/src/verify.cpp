#include "klein/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace klein {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CheckResult finish(std::string name, bool pass, std::string counterexample,
                   Clock::time_point start, bool advisory = false) {
    return {std::move(name), pass, advisory, std::move(counterexample), elapsed_ms(start)};
}

// dense fusion matrices (N_A)_{BC} = N(A,B,C)
std::vector<std::vector<std::int32_t>> fusion_matrices(const FusionTable& t) {
    const std::size_t n = t.labels().size();
    std::vector<std::vector<std::int32_t>> mats(n, std::vector<std::int32_t>(n * n, 0));
    for (const auto& [key, m] : t.triples()) {
        std::array<std::int32_t, 3> idx{key[0], key[1], key[2]};
        std::sort(idx.begin(), idx.end());
        // write all permutations; duplicates overwrite with the same value
        const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                                       {0, 2, 1},
                                                       {1, 0, 2},
                                                       {1, 2, 0},
                                                       {2, 0, 1},
                                                       {2, 1, 0}}};
        for (const auto& p : perms)
            mats[idx[p[0]]][static_cast<std::size_t>(idx[p[1]]) * n + idx[p[2]]] = m;
    }
    return mats;
}

int sector_index(const Label& lab) { return static_cast<int>(lab.sector); }

}  // namespace

CheckResult check_unit(const FusionTable& t) {
    auto start = Clock::now();
    const auto& labels = t.labels();
    const Label unit{Sector::E, 0, Dec::V1};
    for (std::size_t b = 0; b < labels.size(); ++b) {
        const FusionOutcome& row = t.fuse(unit, labels[b]);
        if (row.size() != 1 || row.begin()->first != labels[b] || row.begin()->second != 1)
            return finish("unit", false,
                          "U:0:v1 x " + to_string(labels[b]) + " = " + render_outcome(row),
                          start);
    }
    return finish("unit", true, "", start);
}

CheckResult check_grading(const FusionTable& t) {
    auto start = Clock::now();
    const auto& labels = t.labels();
    for (const auto& [key, m] : t.triples()) {
        if (m == 0) continue;
        int g = sector_index(labels[key[0]]) ^ sector_index(labels[key[1]]) ^
                sector_index(labels[key[2]]);
        if (g != 0)
            return finish("grading", false,
                          "(" + to_string(labels[key[0]]) + ", " + to_string(labels[key[1]]) +
                              ", " + to_string(labels[key[2]]) + ") x" + std::to_string(m),
                          start);
    }
    return finish("grading", true, "", start);
}

CheckResult check_qdim_homomorphism(const FusionTable& t, int jobs) {
    auto start = Clock::now();
    std::vector<CycNumber> D = qdim_vector(t);
    const std::size_t n = t.labels().size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) pairs.emplace_back(a, b);
    std::mutex m;
    std::string fail;
    std::atomic<bool> found{false};
    parallel_for(pairs.size(), jobs, [&](std::size_t p) {
        if (found.load(std::memory_order_relaxed)) return;
        auto [a, b] = pairs[p];
        if (!qdim_balanced(t, a, b, D)) {
            std::lock_guard lock(m);
            found = true;
            if (fail.empty())
                fail = to_string(t.labels()[a]) + " x " + to_string(t.labels()[b]);
        }
    });
    return finish("qdim_homomorphism", fail.empty(), fail, start);
}

CheckResult check_associativity(const FusionTable& t, int jobs) {
    auto start = Clock::now();
    const std::size_t n = t.labels().size();
    auto mats = fusion_matrices(t);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) pairs.emplace_back(a, b);
    std::mutex m;
    std::string fail;
    std::atomic<bool> found{false};
    parallel_for(pairs.size(), jobs, [&](std::size_t p) {
        if (found.load(std::memory_order_relaxed)) return;
        auto [a, b] = pairs[p];
        // lhs = N_a * N_b
        std::vector<std::int64_t> lhs(n * n, 0);
        const auto& A = mats[a];
        const auto& B = mats[b];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t x = 0; x < n; ++x) {
                std::int64_t v = A[i * n + x];
                if (!v) continue;
                const std::int32_t* brow = B.data() + x * n;
                std::int64_t* lrow = lhs.data() + i * n;
                for (std::size_t j = 0; j < n; ++j) lrow[j] += v * brow[j];
            }
        std::vector<std::int64_t> rhs(n * n, 0);
        const FusionOutcome& row = t.fuse_by_index(a, b);
        for (const auto& [lab, mult] : row) {
            const auto& X = mats[t.index_of(lab)];
            for (std::size_t e = 0; e < n * n; ++e) rhs[e] += std::int64_t(mult) * X[e];
        }
        if (lhs != rhs) {
            std::lock_guard lock(m);
            found = true;
            if (fail.empty())
                fail = to_string(t.labels()[a]) + " x " + to_string(t.labels()[b]);
        }
    });
    return finish("associativity", fail.empty(), fail, start);
}

CheckResult check_counts_and_duality(const FusionTable& t, std::uint64_t seed) {
    auto start = Clock::now();
    Level level(t.level());
    const auto& labels = t.labels();
    if (labels.size() != label_count(level))
        return finish("counts_and_duality", false,
                      "count " + std::to_string(labels.size()) + " != " +
                          std::to_string(label_count(level)),
                      start);
    const Label unit{Sector::E, 0, Dec::V1};
    for (const Label& a : labels)
        if (t.mult(a, a, unit) != 1)
            return finish("counts_and_duality", false, "N(A,A,1) != 1 for A=" + to_string(a),
                          start);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    for (int s = 0; s < 1000; ++s) {
        const Label &a = labels[pick(rng)], &b = labels[pick(rng)], &c = labels[pick(rng)];
        int m = t.mult(a, b, c);
        if (t.mult(b, a, c) != m || t.mult(c, a, b) != m || t.mult(b, c, a) != m)
            return finish("counts_and_duality", false,
                          "asymmetric triple (" + to_string(a) + ", " + to_string(b) + ", " +
                              to_string(c) + ")",
                          start);
    }
    return finish("counts_and_duality", true, "", start);
}

CheckResult check_simple_currents(const FusionTable& t) {
    auto start = Clock::now();
    Level level(t.level());
    const int k = t.level();
    const auto& labels = t.labels();
    const std::size_t n = labels.size();

    // permutation action of each vacuum variant
    std::array<std::vector<std::size_t>, 5> perm;
    for (int v = 1; v <= 4; ++v) {
        Label cur{Sector::E, 0, variant_dec(v)};
        auto& img = perm[v];
        img.assign(n, n);
        CycNumber d = qdim(cur, level);
        if (!(d == CycNumber::one(d.conductor())))
            return finish("simple_currents", false, to_string(cur) + " has qdim != 1", start);
        for (std::size_t b = 0; b < n; ++b) {
            const FusionOutcome& row = t.fuse(cur, labels[b]);
            if (row.size() != 1 || row.begin()->second != 1)
                return finish("simple_currents", false,
                              to_string(cur) + " x " + to_string(labels[b]) + " = " +
                                  render_outcome(row),
                              start);
            img[b] = t.index_of(row.begin()->first);
        }
        std::vector<bool> hit(n, false);
        for (std::size_t b = 0; b < n; ++b) hit[img[b]] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end())
            return finish("simple_currents", false, to_string(cur) + " is not a permutation",
                          start);
    }
    // Klein four-group composition
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
            int c = variant_mul(a, b);
            for (std::size_t x = 0; x < n; ++x)
                if (perm[a][perm[b][x]] != perm[c][x])
                    return finish("simple_currents", false,
                                  "variant composition broken at v" + std::to_string(a) + "*v" +
                                      std::to_string(b),
                                  start);
        }
    // twisted-sector action: variants with sigma_r decoration 1,2 fix the
    // signs, 3,4 flip them, and half-level variants permute regularly
    for (int v = 1; v <= 4; ++v)
        for (std::size_t x = 0; x < n; ++x) {
            const Label& lab = labels[x];
            if (lab.sector == Sector::E) continue;
            int d = sigma_dec(sector_index(lab), v, 0);
            Label expect = lab;
            if (is_half_level(lab, k))
                expect.dec = variant_dec(variant_mul(d, variant_index(lab.dec)));
            else if (d > 2)
                expect.dec = flip_sign(lab.dec);
            if (labels[perm[v][x]] != expect)
                return finish("simple_currents", false,
                              "U:0:v" + std::to_string(v) + " x " + to_string(lab) + " = " +
                                  to_string(labels[perm[v][x]]) + ", expected " +
                                  to_string(expect),
                              start);
        }
    return finish("simple_currents", true, "", start);
}

CheckResult check_perron_frobenius(const FusionTable& t) {
    auto start = Clock::now();
    Level level(t.level());
    const std::size_t n = t.labels().size();
    auto mats = fusion_matrices(t);
    for (std::size_t a = 0; a < n; ++a) {
        double want = qdim(t.labels()[a], level).to_float();
        // shifted power iteration; the fusion matrix is symmetric and
        // nonnegative, so N + I has a strictly dominant eigenvalue
        std::vector<double> v(n, 1.0 / std::sqrt(double(n))), w(n);
        double lambda = 0.0, prev = -1.0;
        int iter = 0;
        const int max_iter = 5000;
        for (; iter < max_iter; ++iter) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = v[i];  // +I shift
                const std::int32_t* row = mats[a].data() + i * n;
                for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
                w[i] = acc;
            }
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
            lambda = norm - 1.0;
            if (std::abs(lambda - prev) < 1e-13) break;
            prev = lambda;
        }
        if (iter == max_iter)
            return finish("perron_frobenius", true,
                          "inconclusive: no convergence for " + to_string(t.labels()[a]), start,
                          true);
        if (std::abs(lambda - want) > 1e-6)
            return finish("perron_frobenius", false,
                          to_string(t.labels()[a]) + ": spectral radius " +
                              std::to_string(lambda) + " vs qdim " + std::to_string(want),
                          start, true);
    }
    return finish("perron_frobenius", true, "", start, true);
}

VerificationReport run_checks(const FusionTable& t, std::uint64_t seed, int jobs) {
    VerificationReport rep;
    rep.k = t.level();
    rep.seed = seed;
    rep.checks.push_back(check_unit(t));
    rep.checks.push_back(check_grading(t));
    rep.checks.push_back(check_counts_and_duality(t, seed));
    rep.checks.push_back(check_simple_currents(t));
    rep.checks.push_back(check_qdim_homomorphism(t, jobs));
    rep.checks.push_back(check_associativity(t, jobs));
    rep.checks.push_back(check_perron_frobenius(t));
    return rep;
}

VerificationReport verify_all(Level k, std::uint64_t seed, int jobs) {
    BuildOptions opt;
    opt.jobs = jobs;
    FusionTable t = build_table(k, opt);
    return run_checks(t, seed, jobs);
}

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["seed"] = seed;
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["status"] = c.pass ? "pass" : "fail";
        jc["counterexample"] = c.counterexample;
        jc["ms"] = c.ms;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    return j.dump();
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    os << "verification at k=" << k << " (seed " << seed << ")\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (c.advisory) os << " (advisory float check)";
        os << "  " << std::fixed << c.ms << " ms";
        if (!c.counterexample.empty()) os << "\n         " << c.counterexample;
        os << "\n";
    }
    os << (all_pass() ? "all checks passed" : "VERIFICATION FAILED") << "\n";
    return os.str();
}

Mutation random_mutation(const FusionTable& t, std::mt19937_64& rng) {
    const std::size_t n = t.labels().size();
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Mutation m;
    m.a = pick(rng);
    m.b = pick(rng);
    m.c = pick(rng);
    m.before = t.mult(t.labels()[m.a], t.labels()[m.b], t.labels()[m.c]);
    if (m.before == 0) m.after = 1;
    else m.after = m.before + (rng() & 1 ? 1 : -1);
    return m;
}

FusionTable apply_mutation(const FusionTable& t, const Mutation& m) {
    return t.with_entry(m.a, m.b, m.c, m.after);
}

bool mutation_detected(const FusionTable& mutated, int jobs) {
    if (!check_grading(mutated).pass) return true;
    if (!check_unit(mutated).pass) return true;
    if (!check_qdim_homomorphism(mutated, jobs).pass) return true;
    return !check_associativity(mutated, jobs).pass;
}

}  // namespace klein
