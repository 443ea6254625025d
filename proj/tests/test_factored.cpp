#include <doctest.h>

#include <cmath>
#include <map>

#include "eok/factored.hpp"
#include "eok/rng.hpp"
#include "test_helpers.hpp"

using namespace eok;

// The factored route must reproduce every direct computation exactly.
TEST_CASE("factored space matches direct geometry") {
    Rng rng(31);
    for (int t = 0; t < 120; ++t) {
        const std::size_t n = 4 + rng.below(9);
        Formula f = gen_counting({n, 3, 0.5 * rng.uniform(), 0.1 + 0.4 * rng.uniform(), rng.next()});
        auto direct = enumerate_solutions(f);
        auto space = FactoredSolutionSpace::build(f);

        CHECK(space.satisfiable() == !direct.empty());
        CHECK(space.count() == double(direct.size()));
        CHECK(space.expand().solutions == direct.solutions);

        if (direct.size() >= 2) {
            CHECK(space.min_overlap() == overlap_stats(direct).min_overlap);
            CHECK(space.min_connect_l() == min_connect_l(direct));
        } else {
            CHECK_FALSE(space.min_overlap().has_value());
            CHECK_FALSE(space.min_connect_l().has_value());
        }

        for (std::size_t min_size : {2, 3, 5}) {
            auto want = hole_size_counts(f, direct, min_size);
            auto got = space.hole_size_counts(min_size);
            REQUIRE(want.size() == got.size());
            for (std::size_t d = 0; d < want.size(); ++d) CHECK(got[d] == double(want[d]));
        }

        if (direct.size() >= 2) {
            Rng pr(t);
            for (int i = 0; i < 5; ++i) {
                auto [a, b] = space.sample_distinct_pair(pr);
                CHECK(a != b);
                CHECK(check_assignment(f, a));
                CHECK(check_assignment(f, b));
            }
        }
    }
}

TEST_CASE("sampled pairs are uniform over ordered distinct pairs") {
    // Solutions of (x1,x2,x3) on four variables: 3 * 2 = 6, so 30 ordered pairs.
    Formula f = testing::formula(4, {{1, 2, 3}});
    auto space = FactoredSolutionSpace::build(f);
    Rng rng(4);
    std::map<std::pair<std::string, std::string>, int> tally;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) {
        auto [a, b] = space.sample_distinct_pair(rng);
        ++tally[{a.to_string(), b.to_string()}];
    }
    CHECK(tally.size() == 30);
    const double p = 1.0 / 30.0, se = std::sqrt(p * (1 - p) / draws);
    for (const auto& [pair, c] : tally) CHECK(std::fabs(double(c) / draws - p) < 4.5 * se);
}
