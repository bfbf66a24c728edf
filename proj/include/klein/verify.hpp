#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "klein/fusion.hpp"

namespace klein {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool advisory = false;  // float-level cross-check, not authoritative
    std::string counterexample;
    double ms = 0.0;
};

struct VerificationReport {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string to_json() const;
    std::string to_text() const;
};

/// N(1,A,B) = delta_{AB} for the vacuum label.
CheckResult check_unit(const FusionTable& t);
/// Matrix identity N_A N_B = sum_X N(A,B,X) N_X over all pairs.
CheckResult check_associativity(const FusionTable& t, int jobs = 0);
/// Exact D_A D_B = sum_C N(A,B,C) D_C in the cyclotomic field; no floats
/// in the verdict.
CheckResult check_qdim_homomorphism(const FusionTable& t, int jobs = 0);
/// Every stored triple's sectors multiply to the identity.
CheckResult check_grading(const FusionTable& t);
/// Label count formula, N(A,A,1) = 1 for all A, and sampled permutation
/// symmetry of the tensor.
CheckResult check_counts_and_duality(const FusionTable& t, std::uint64_t seed);
/// The four vacuum variants act as a Klein four-group of permutations with
/// the expected twisted-sector action and quantum dimension one.
CheckResult check_simple_currents(const FusionTable& t);
/// Spectral radius of each fusion matrix vs the float quantum dimension
/// (advisory; non-convergence is inconclusive, not a failure).
CheckResult check_perron_frobenius(const FusionTable& t);

VerificationReport run_checks(const FusionTable& t, std::uint64_t seed, int jobs = 0);
/// Build the table for level k and run every check.
VerificationReport verify_all(Level k, std::uint64_t seed = 0, int jobs = 0);

struct Mutation {
    std::size_t a = 0, b = 0, c = 0;
    std::int32_t before = 0, after = 0;
};

/// A random single-entry perturbation of the tensor (zero entries bump to 1,
/// nonzero entries move by +-1).
Mutation random_mutation(const FusionTable& t, std::mt19937_64& rng);
FusionTable apply_mutation(const FusionTable& t, const Mutation& m);
/// True when the oracle suite (grading, unit, qdim, associativity) flags the
/// table, cheapest checks first.
bool mutation_detected(const FusionTable& mutated, int jobs = 0);

}  // namespace klein
