#include <doctest.h>

#include "golden_cases.hpp"
#include "klein/labels.hpp"
#include "table_cache.hpp"

using namespace klein;

TEST_CASE("golden fusion products") {
    CHECK(kGoldenCaseCount >= 40);
    for (const GoldenCase& g : kGoldenCases) {
        const FusionTable& t = cached_table(g.k);
        Level level(g.k);
        Label a = parse_label(g.a, level);
        Label b = parse_label(g.b, level);
        INFO("k=" << g.k << "  " << g.a << " x " << g.b);
        CHECK(render_outcome(t.fuse(a, b)) == g.expected);
        CHECK(render_outcome(t.fuse(b, a)) == g.expected);
    }
}
