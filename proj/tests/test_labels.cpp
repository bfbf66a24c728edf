#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "klein/labels.hpp"

using namespace klein;

namespace {

// every raw name the classification uses at level k
std::vector<RawLabel> raw_space(int k) {
    std::vector<RawLabel> out;
    for (int i = 0; i <= k; ++i) {
        if (i % 2 == 1) {
            out.push_back({Sector::E, 1, i, Dec::Plus});
            out.push_back({Sector::E, 1, i, Dec::Minus});
        } else {
            for (int b = 1; b <= 3; ++b)
                for (int v = 1; v <= 4; ++v) out.push_back({Sector::E, b, i, variant_dec(v)});
        }
    }
    for (int r = 1; r <= 3; ++r) {
        auto sec = static_cast<Sector>(r);
        for (int i = 0; i <= k; ++i) {
            if (k % 2 == 0 && i == k / 2) {
                for (int v = 1; v <= 4; ++v) out.push_back({sec, r, i, variant_dec(v)});
            } else {
                out.push_back({sec, r, i, Dec::Plus});
                out.push_back({sec, r, i, Dec::Minus});
            }
        }
    }
    return out;
}

RawLabel as_raw(const Label& lab) {
    return {lab.sector, lab.sector == Sector::E ? 1 : static_cast<int>(lab.sector), lab.i,
            lab.dec};
}

}  // namespace

TEST_CASE("sector group law") {
    CHECK(sector_mul(Sector::S1, Sector::S2) == Sector::S3);
    CHECK(sector_mul(Sector::E, Sector::S2) == Sector::S2);
    CHECK(sector_mul(Sector::S3, Sector::S3) == Sector::E);
    CHECK(sector_mul(Sector::S2, Sector::S3) == Sector::S1);
}

TEST_CASE("module counts match the classification") {
    CHECK(enumerate_labels(Level(3)).size() == 22);
    CHECK(enumerate_labels(Level(4)).size() == 38);
    CHECK(enumerate_labels(Level(6)).size() == 49);
    for (int k = 3; k <= 24; ++k) {
        auto labs = enumerate_labels(Level(k));
        std::size_t want = k % 2 ? 11u * (k + 1) / 2 : (11u * k + 32) / 2;
        CHECK(labs.size() == want);
        CHECK(labs.size() == label_count(Level(k)));
        CHECK(std::is_sorted(labs.begin(), labs.end()));
        for (const auto& lab : labs) CHECK(is_canonical(lab, k));
    }
    CHECK_THROWS_AS(Level(2), std::invalid_argument);
}

TEST_CASE("canonicalize applies the identification tables") {
    CHECK(canonicalize({Sector::E, 2, 2, Dec::V3}, Level(6)) == Label{Sector::E, 2, Dec::V2});
    CHECK(canonicalize({Sector::E, 2, 2, Dec::V2}, Level(6)) == Label{Sector::E, 2, Dec::V3});
    CHECK(canonicalize({Sector::E, 3, 2, Dec::V1}, Level(6)) == Label{Sector::E, 2, Dec::V3});
    CHECK(canonicalize({Sector::E, 3, 2, Dec::V3}, Level(6)) == Label{Sector::E, 2, Dec::V1});
    CHECK(canonicalize({Sector::E, 2, 4, Dec::V3}, Level(8)) == Label{Sector::E, 4, Dec::V2});
    CHECK(canonicalize({Sector::E, 3, 4, Dec::V2}, Level(8)) == Label{Sector::E, 4, Dec::V4});
    CHECK(canonicalize({Sector::E, 3, 4, Dec::V4}, Level(8)) == Label{Sector::E, 4, Dec::V2});
    CHECK(canonicalize({Sector::E, 2, 4, Dec::V4}, Level(8)) == Label{Sector::E, 4, Dec::V4});
    // weight reflection on twisted labels keeps the sign
    CHECK(canonicalize({Sector::S1, 1, 4, Dec::Plus}, Level(5)) == Label{Sector::S1, 1, Dec::Plus});
    CHECK(canonicalize({Sector::S2, 2, 5, Dec::Minus}, Level(6)) ==
          Label{Sector::S2, 1, Dec::Minus});
    // already canonical
    CHECK(canonicalize({Sector::E, 1, 0, Dec::V1}, Level(7)) == Label{Sector::E, 0, Dec::V1});
    // odd untwisted minus collapses onto plus
    CHECK(canonicalize({Sector::E, 1, 3, Dec::Minus}, Level(5)) == Label{Sector::E, 3, Dec::Plus});
}

TEST_CASE("canonicalize rejects malformed names") {
    CHECK_THROWS_AS(canonicalize({Sector::E, 1, 9, Dec::Plus}, Level(5)), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize({Sector::E, 1, 2, Dec::Plus}, Level(5)), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize({Sector::E, 1, 1, Dec::V1}, Level(5)), std::invalid_argument);
    CHECK_THROWS_AS(canonicalize({Sector::E, 2, 1, Dec::Plus}, Level(5)), std::invalid_argument);
    // reducible half-level sum where a simple module is required
    CHECK_THROWS_AS(canonicalize({Sector::S1, 1, 2, Dec::Plus}, Level(4)), std::invalid_argument);
    // twisted basis must match the sector
    CHECK_THROWS_AS(canonicalize({Sector::S1, 2, 1, Dec::Plus}, Level(5)), std::invalid_argument);
    // v decorations below the half weight
    CHECK_THROWS_AS(canonicalize({Sector::S1, 1, 1, Dec::V2}, Level(6)), std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent over the raw naming space") {
    for (int k : {3, 4, 5, 6, 7, 8, 9, 10, 11, 12}) {
        Level level(k);
        auto canon = enumerate_labels(level);
        for (const RawLabel& raw : raw_space(k)) {
            if (raw.sector != Sector::E && k % 2 == 0 && raw.i == k / 2 && is_sign(raw.dec))
                continue;  // reducible names are rejected, not canonicalized
            Label c = canonicalize(raw, level);
            CHECK(is_canonical(c, k));
            CHECK(std::binary_search(canon.begin(), canon.end(), c));
            CHECK(canonicalize(as_raw(c), level) == c);
            // twisted reflection is an involution with the sign untouched
            if (raw.sector != Sector::E && !is_half_level(c, k)) {
                RawLabel refl = raw;
                refl.i = k - raw.i;
                CHECK(canonicalize(refl, level) == Label{c.sector, c.i, raw.dec});
            }
        }
    }
}

TEST_CASE("expand_half splits the two reducible sums") {
    FusionOutcome plus = expand_half(Sector::S2, Dec::Plus, Level(6));
    REQUIRE(plus.size() == 2);
    CHECK(plus.at({Sector::S2, 3, Dec::V1}) == 1);
    CHECK(plus.at({Sector::S2, 3, Dec::V2}) == 1);
    FusionOutcome minus = expand_half(Sector::S1, Dec::Minus, Level(4));
    REQUIRE(minus.size() == 2);
    CHECK(minus.at({Sector::S1, 2, Dec::V3}) == 1);
    CHECK(minus.at({Sector::S1, 2, Dec::V4}) == 1);
    CHECK_THROWS_AS(expand_half(Sector::S3, Dec::Plus, Level(5)), std::invalid_argument);
    CHECK_THROWS_AS(expand_half(Sector::E, Dec::Plus, Level(4)), std::invalid_argument);
}

TEST_CASE("label strings round-trip and aliases resolve") {
    Level k5(5), k6(6);
    CHECK(to_string(parse_label("U:2:v4", k5)) == "U:2:v4");
    CHECK(to_string(parse_label("T1:4:+", k5)) == "T1:1:+");
    CHECK(to_string(parse_label("U:3:-", k5)) == "U:3:+");
    CHECK(to_string(parse_label("T2:3:v3", k6)) == "T2:3:v3");
    CHECK(to_string(parse_label("T3:0:-", k6)) == "T3:0:-");
    for (const auto& lab : enumerate_labels(k6))
        CHECK(parse_label(to_string(lab), k6) == lab);
    CHECK_THROWS_AS(parse_label("U:1", k5), std::invalid_argument);
    CHECK_THROWS_AS(parse_label("T4:0:+", k5), std::invalid_argument);
    CHECK_THROWS_AS(parse_label("U:2:+", k5), std::invalid_argument);
    CHECK_THROWS_AS(parse_label("T1:2:v5", k6), std::invalid_argument);
    CHECK_THROWS_AS(parse_label("T1:3:+", k6), std::invalid_argument);
    CHECK_THROWS_AS(parse_label("U:x:v1", k5), std::invalid_argument);
}

TEST_CASE("enumeration order is the documented one") {
    auto labs = enumerate_labels(Level(3));
    CHECK(to_string(labs[0]) == "U:0:v1");
    CHECK(to_string(labs[4]) == "U:1:+");
    CHECK(to_string(labs[9]) == "U:3:+");
    CHECK(to_string(labs[10]) == "T1:0:+");
    CHECK(to_string(labs[11]) == "T1:0:-");
    CHECK(to_string(labs[21]) == "T3:1:-");
}
