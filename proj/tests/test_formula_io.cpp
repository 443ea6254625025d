#include <doctest.h>

#include "eok/errors.hpp"
#include "eok/formula_io.hpp"
#include "eok/rng.hpp"
#include "eok/solver.hpp"
#include "test_helpers.hpp"

using namespace eok;

TEST_CASE("parse minimal formula") {
    Formula f = parse_formula("p eok 3 1 3 0.5\n1 2 3 0\n");
    CHECK(f.num_vars() == 3);
    CHECK(f.num_clauses() == 1);
    CHECK(f.clause(0) == testing::clause({1, 2, 3}));
    CHECK(f.epsilon() == 0.5);
}

TEST_CASE("comments anywhere and negative literals") {
    Formula f = parse_formula("c hello\np eok 4 2 3 0.25\nc between\n-1 2 -4 0\n\n3 -2 1 0\nc end");
    CHECK(f.clause(0) == testing::clause({-1, 2, -4}));
    CHECK(f.clause(1) == testing::clause({3, -2, 1}));
}

TEST_CASE("parse errors name the line") {
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_formula(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("p eok 3 1 3 0.5\n1 1 2 0\n") == 2);
    CHECK_THROWS_WITH_AS(parse_formula("p eok 3 1 3 0.5\n1 1 2 0\n"), doctest::Contains("repeated variable"), ParseError);
    CHECK(line_of("p eok 3 1 3\n") == 1);
    CHECK(line_of("p eok 3 1 3 0.5\n1 2 4 0\n") == 2);
    CHECK(line_of("1 2 3 0\n") == 1);
    CHECK(line_of("p eok 3 1 3 0.5\n1 2 3\n") == 2);
    CHECK(line_of("p eok 3 2 3 0.5\n1 2 3 0\n") != 0);
    CHECK(line_of("p eok 3 1 3 0.5\n1 2 3 0\n1 2 3 0\n") == 3);
    CHECK(line_of("p eok 3 1 3 0.9\n1 2 3 0\n") == 1);
}

TEST_CASE("write then parse is the identity on generated formulas") {
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = 3 + rng.below(3);
        ModelParams p{k + rng.below(20), k, 0.5 * rng.uniform(), 1.5 * rng.uniform(), rng.next()};
        Formula f = rng.below(2) ? gen_counting(p) : gen_constant_prob({p.n, k, p.epsilon, 0.05 * rng.uniform(), p.seed});
        const std::string text = write_formula(f);
        Formula g = parse_formula(text);
        CHECK(g == f);
        CHECK(write_formula(g) == text);
    }
}

TEST_CASE("solution file round trip") {
    Formula f = testing::formula(4, {{1, 2, 3}, {1, 2, 4}});
    SolutionSet s = enumerate_solutions(f);
    const std::string text = write_solutions(s);
    CHECK(text == "s eok 4 3 1\n0011\n0100\n1000\n");
    SolutionSet back = parse_solutions(text);
    CHECK(back.solutions == s.solutions);
    CHECK(back.complete);
    CHECK_THROWS_AS(parse_solutions("s eok 4 2 1\n0011\n"), ParseError);
    CHECK_THROWS_AS(parse_solutions("s eok 4 1 1\n001\n"), ParseError);
}

TEST_CASE("format_double round trips") {
    for (double x : {0.5, 0.1, 1.0 / 3.0, 0.21132486540518713, 0.0})
        CHECK(std::stod(format_double(x)) == x);
}
