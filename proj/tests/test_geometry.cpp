#include <doctest.h>

#include <map>
#include <set>

#include "eok/errors.hpp"
#include "eok/geometry.hpp"
#include "eok/rng.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace eok;
using testing::bits;
using testing::formula;

namespace {

SolutionSet set_of(std::vector<const char*> members) {
    SolutionSet s;
    for (const char* m : members) s.solutions.push_back(bits(m));
    s.n = s.solutions.empty() ? 0 : s.solutions[0].size();
    std::sort(s.solutions.begin(), s.solutions.end());
    return s;
}

Formula random_formula(Rng& rng, std::size_t max_n = 12) {
    const std::size_t n = 3 + rng.below(max_n - 2);
    if (rng.below(2)) return gen_counting({n, 3, 0.5 * rng.uniform(), 0.1 + 0.5 * rng.uniform(), rng.next()});
    return gen_constant_prob({n, 3, 0.5 * rng.uniform(), 0.02 + 0.1 * rng.uniform(), rng.next()});
}

}  // namespace

TEST_CASE("overlap") {
    CHECK(overlap(bits("000"), bits("000")) == Overlap{3, 3});
    CHECK(overlap(bits("000"), bits("111")) == Overlap{0, 3});
    CHECK(overlap(bits("100"), bits("010")) == Overlap{1, 3});
    CHECK(overlap(bits("100"), bits("010")).value() == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(overlap(bits("10"), bits("100")), DomainError);
}

TEST_CASE("overlap_stats") {
    auto st = overlap_stats(set_of({"100", "010", "001"}));
    CHECK(st.histogram == std::vector<std::uint64_t>{0, 3, 0, 0});
    CHECK(st.pair_count == 3);
    CHECK(st.min_overlap == Overlap{1, 3});

    auto single = overlap_stats(set_of({"000"}));
    CHECK(single.pair_count == 0);
    CHECK_FALSE(single.min_overlap.has_value());

    // Full cube on two variables: brute-force tally of the 6 pairs.
    auto full = enumerate_solutions(Formula(2, 3, 0.5, {}));
    auto sf = overlap_stats(full);
    std::vector<std::uint64_t> expect(3, 0);
    for (std::size_t i = 0; i < full.size(); ++i)
        for (std::size_t j = i + 1; j < full.size(); ++j)
            ++expect[2 - oracle::dist(full[i].to_string(), full[j].to_string())];
    CHECK(sf.histogram == expect);
    CHECK(sf.histogram == std::vector<std::uint64_t>{2, 4, 0});

    SolutionSet truncated = set_of({"00", "01"});
    truncated.complete = false;
    CHECK_THROWS_AS(overlap_stats(truncated), DomainError);
}

TEST_CASE("cluster_components examples") {
    auto s = set_of({"100", "010", "001"});
    auto r2 = cluster_components(s, 2);
    CHECK(r2.components.size() == 1);
    CHECK(r2.is_single_cluster);
    auto r1 = cluster_components(s, 1);
    CHECK(r1.components.size() == 3);
    CHECK(r1.largest_component_size == 1);
    auto empty = cluster_components(SolutionSet{}, 1);
    CHECK(empty.components.empty());
    CHECK_FALSE(empty.is_single_cluster);
}

TEST_CASE("min_connect_l examples") {
    CHECK(min_connect_l(set_of({"100", "010", "001"})) == 2u);
    CHECK(min_connect_l(set_of({"00", "11"})) == 2u);
    CHECK(min_connect_l(set_of({"0000", "0001"})) == 1u);
    CHECK_FALSE(min_connect_l(set_of({"0000"})).has_value());
}

TEST_CASE("holes examples") {
    Formula f = formula(3, {{1, 2, 3}});
    auto s = enumerate_solutions(f);
    CHECK(is_hole(f, bits("100"), bits("010"), s));
    CHECK_FALSE(is_hole(f, bits("100"), bits("100"), s));
    CHECK_THROWS_AS(is_hole(f, bits("110"), bits("010"), s), DomainError);

    Formula g = formula(4, {{1, 2, 3}, {1, 2, 4}});
    CHECK(is_hole(g, bits("1000"), bits("0100"), enumerate_solutions(g)));

    auto holes = find_holes(f, s, 2);
    REQUIRE(holes.size() == 3);
    for (const auto& h : holes) CHECK(h.size == 2);
    CHECK(holes[0].a == bits("001"));
    CHECK(holes[0].b == bits("010"));
    CHECK(find_holes(f, s, 4).empty());

    Formula free3(3, 3, 0.5, {});
    CHECK(find_holes(free3, enumerate_solutions(free3), 2).empty());
}

TEST_CASE("agreement_is_cover examples") {
    Formula f = formula(3, {{1, 2, 3}});
    auto c = agreement_is_cover(f, bits("100"), bits("010"));
    CHECK(c.agreement == std::vector<Var>{2});
    CHECK(c.is_cover);
    auto same = agreement_is_cover(f, bits("110"), bits("110"));
    CHECK(same.agreement.size() == 3);
    CHECK(same.is_cover);
    auto bad = agreement_is_cover(f, bits("110"), bits("001"));
    CHECK(bad.agreement.empty());
    CHECK_FALSE(bad.is_cover);
}

TEST_CASE("min_cover_size examples") {
    CHECK(min_cover_size(formula(3, {{1, 2, 3}})) == 1);
    CHECK(min_cover_size(formula(6, {{1, 2, 3}, {4, 5, 6}})) == 2);
    CHECK(min_cover_size(Formula(5, 3, 0.5, {})) == 0);
}

TEST_CASE("geometry properties on random formulas") {
    Rng rng(77);
    for (int t = 0; t < 150; ++t) {
        Formula f = random_formula(rng, 9);
        auto s = enumerate_solutions(f);
        const auto strs = testing::strings(s);

        // overlap + d/n = 1 exactly, and the cover lemma.
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const auto ov = overlap(s[i], s[j]);
                CHECK(ov.agree + hamming(s[i], s[j]) == ov.n);
                CHECK(agreement_is_cover(f, s[i], s[j]).is_cover);
            }

        const std::size_t cover = min_cover_size(f);
        CHECK(cover == oracle::brute_min_cover(f));
        if (s.size() >= 2) CHECK(overlap_stats(s).min_overlap->agree >= cover);

        // Both clustering paths agree with BFS, and refine as l grows.
        std::vector<std::size_t> prev_label;
        for (int l = 1; l <= int(f.num_vars()); ++l) {
            auto pw = cluster_components(s, l, ClusterMethod::pairwise);
            auto nb = cluster_components(s, l, ClusterMethod::neighborhood);
            CHECK(pw.components == nb.components);
            auto bfs = oracle::brute_clusters(strs, l);
            std::vector<std::size_t> label(s.size());
            for (std::size_t c = 0; c < pw.components.size(); ++c)
                for (auto m : pw.components[c]) label[m] = c;
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = 0; j < s.size(); ++j) {
                    CHECK((label[i] == label[j]) == (bfs[i] == bfs[j]));
                    if (!prev_label.empty() && prev_label[i] == prev_label[j]) CHECK(label[i] == label[j]);
                }
            prev_label = label;
        }
        if (s.size() >= 2) {
            const std::size_t l = *min_connect_l(s);
            CHECK(cluster_components(s, l).is_single_cluster);
            if (l > 1) CHECK_FALSE(cluster_components(s, l - 1).is_single_cluster);
        }

        // Holes against subcube brute force.
        auto holes = find_holes(f, s, 2);
        std::set<std::pair<std::string, std::string>> got;
        for (const auto& h : holes) got.insert({h.a.to_string(), h.b.to_string()});
        std::set<std::pair<std::string, std::string>> want;
        for (std::size_t i = 0; i < strs.size(); ++i)
            for (std::size_t j = i + 1; j < strs.size(); ++j)
                if (oracle::brute_is_hole(f, strs[i], strs[j])) want.insert({strs[i], strs[j]});
        CHECK(got == want);
        for (std::size_t i = 1; i < holes.size(); ++i) CHECK(holes[i - 1].size >= holes[i].size);

        // Hole endpoints are never 1-connected.
        auto c1 = cluster_components(s, 1);
        std::map<std::string, std::size_t> comp;
        for (std::size_t c = 0; c < c1.components.size(); ++c)
            for (auto m : c1.components[c]) comp[strs[m]] = c;
        for (const auto& h : holes) CHECK(comp[h.a.to_string()] != comp[h.b.to_string()]);

        auto counts = hole_size_counts(f, s, 3);
        std::size_t at_least3 = 0;
        for (const auto& h : holes) at_least3 += h.size >= 3;
        std::size_t total = 0;
        for (auto c : counts) total += c;
        CHECK(total == at_least3);
    }
}

TEST_CASE("neighborhood probing on a large solution set") {
    // 2^11 free assignments times the three solutions of one constrained component: probing is chosen automatically.
    Formula f = formula(14, {{1, 2, 3}});
    auto s = enumerate_solutions(f);
    CHECK(s.size() == 3u * 2048u);
    auto r = cluster_components(s, 1);
    CHECK(r.components.size() == 3);
    CHECK(cluster_components(s, 2).is_single_cluster);
    CHECK(min_connect_l(s) == 2u);
}
