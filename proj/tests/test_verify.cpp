#include <doctest.h>

#include <json.hpp>
#include <random>

#include "klein/verify.hpp"
#include "table_cache.hpp"

using namespace klein;

TEST_CASE("full suite passes on small levels") {
    for (int k : {3, 4, 6}) {
        VerificationReport rep = run_checks(cached_table(k), 42);
        CHECK(rep.all_pass());
        for (const auto& c : rep.checks) {
            INFO(c.name << ": " << c.counterexample);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("checks fail loudly on a corrupted tensor") {
    const FusionTable& t = cached_table(4);
    std::size_t u = t.index_of({Sector::E, 0, Dec::V1});
    std::size_t a = t.index_of({Sector::E, 1, Dec::Plus});
    std::size_t s1 = t.index_of({Sector::S1, 0, Dec::Plus});

    // unit row mutation
    FusionTable no_unit = t.with_entry(u, a, a, 0);
    CHECK_FALSE(check_unit(no_unit).pass);
    CHECK(!check_unit(no_unit).counterexample.empty());

    // grading violation
    FusionTable bad_sector = t.with_entry(s1, s1, s1, 1);
    CHECK_FALSE(check_grading(bad_sector).pass);

    // multiplicity bump breaks the exact balance and associativity
    FusionTable bumped = t.with_entry(a, a, u, 2);
    CHECK_FALSE(check_qdim_homomorphism(bumped).pass);
    CHECK_FALSE(check_associativity(bumped).pass);
    CHECK(mutation_detected(bumped));
}

TEST_CASE("sampled duality check and its counterexample payloads") {
    const FusionTable& t = cached_table(5);
    CHECK(check_counts_and_duality(t, 1).pass);
    std::size_t a = t.index_of({Sector::S2, 1, Dec::Plus});
    std::size_t u = t.index_of({Sector::E, 0, Dec::V1});
    FusionTable not_self_dual = t.with_entry(a, a, u, 0);
    CHECK_FALSE(check_counts_and_duality(not_self_dual, 1).pass);
}

TEST_CASE("simple currents form the expected permutation group") {
    for (int k : {4, 5, 6}) {
        CheckResult r = check_simple_currents(cached_table(k));
        INFO(r.counterexample);
        CHECK(r.pass);
    }
    // image multiset of one twisted label under the four currents
    const FusionTable& t = cached_table(6);
    std::map<Label, int> orbit;
    for (int v = 1; v <= 4; ++v) {
        const FusionOutcome& row = t.fuse({Sector::E, 0, variant_dec(v)}, {Sector::S2, 1, Dec::Plus});
        REQUIRE(row.size() == 1);
        orbit[row.begin()->first] += 1;
    }
    CHECK(orbit[{Sector::S2, 1, Dec::Plus}] == 2);
    CHECK(orbit[{Sector::S2, 1, Dec::Minus}] == 2);
}

TEST_CASE("perron-frobenius agrees with the float embedding") {
    const FusionTable& t = cached_table(5);
    CheckResult r = check_perron_frobenius(t);
    CHECK(r.pass);
    CHECK(r.advisory);
}

TEST_CASE("report serialization") {
    VerificationReport rep = run_checks(cached_table(3), 99);
    auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("k") == 3);
    CHECK(j.at("seed") == 99);
    CHECK(j.at("checks").size() == rep.checks.size());
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.at("status") == "pass");
        CHECK(c.contains("counterexample"));
        CHECK(c.contains("ms"));
    }
    CHECK(rep.to_text().find("all checks passed") != std::string::npos);
}

TEST_CASE("random mutations are detected") {
    const FusionTable& t = cached_table(4);
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        Mutation m = random_mutation(t, rng);
        CHECK(mutation_detected(apply_mutation(t, m)));
    }
}

TEST_CASE("verify_all builds and reports") {
    VerificationReport rep = verify_all(Level(5), 7);
    CHECK(rep.k == 5);
    CHECK(rep.all_pass());
}
