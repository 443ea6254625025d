#include <doctest.h>

#include <cmath>

#include "eok/bounds.hpp"
#include "eok/combinatorics.hpp"
#include "eok/errors.hpp"

using namespace eok;
using namespace eok::bounds;

// Reference values below were computed with mpmath at 50 digits.

TEST_CASE("lambda_c and condition_one") {
    CHECK(lambda_c(0.5) == doctest::Approx(12.0));
    CHECK(lambda_c(1e-12) == doctest::Approx(3.0));
    CHECK_THROWS_AS(lambda_c(1.0), DomainError);
    CHECK_THROWS_AS(lambda_c(0.0), DomainError);
    CHECK(condition_one(0.5, 0.5, 3));
    CHECK(condition_one(1.0, 0.5, 3));
    CHECK_FALSE(condition_one(1.0, 0.4, 3));
    CHECK_THROWS_AS(condition_one(2.0, 0.5, 3), DomainError);
}

TEST_CASE("mu_bounds") {
    auto m = mu_bounds(100, 40, 20, 1e-4, 0.25, 3);
    const double base = 40 * 0.75 + 20 * 0.25;
    CHECK(m.mu_eq == doctest::Approx(1e-4 * (0.0625 + 0.5625) * base));
    CHECK(m.mu_neq == doctest::Approx(4e-4 * 0.25 * 0.75 * base));
    auto m4 = mu_bounds(100, 40, 20, 1e-4, 0.25, 4);
    CHECK(m4.mu_eq == doctest::Approx(1e-4 * 0.625 * base * base / 2.0));
}

TEST_CASE("epsilon_0") {
    CHECK(epsilon_0() == doctest::Approx(0.21132486540518711775).epsilon(1e-15));
    CHECK(epsilon_0_residual(epsilon_0()) < 1e-15);
    CHECK(epsilon_0_residual(epsilon_0_conjugate()) < 1e-15);
    CHECK(epsilon_0_residual(0.3) > 0.1);
}

TEST_CASE("epsilon_c root and quoted value") {
    auto e = epsilon_c();
    CHECK(e.root == doctest::Approx(0.3966082527360922).epsilon(1e-11));
    CHECK(std::fabs(e.residual_at_root) < 1e-10);
    CHECK(e.residual_at_quoted == doctest::Approx(0.290307293648).epsilon(1e-9));
    CHECK(epsilon_c_cubic(0.2726) == doctest::Approx(-0.290307293648).epsilon(1e-9));
    CHECK(e.discrepancy == doctest::Approx(0.3966082527360922 - 0.2726).epsilon(1e-9));
    CHECK(epsilon_c_cubic(0.0) == -1.0);
}

TEST_CASE("connectivity bound dominates simulation") {
    CHECK(connected_prob_bound(10, 0.5) == doctest::Approx(std::pow(0.5, 9) / 10));
    for (double c : {0.3, 0.6, 0.9}) {
        auto est = simulate_connectivity(6, c, 40000, 17);
        CHECK(est.samples == 40000);
        const double bound = connected_prob_bound(6, c);
        const double se = std::sqrt(bound * (1 - bound) / 40000.0) + 1e-12;
        CHECK(est.frequency() <= bound + 4 * se);
    }
    // n = 2: exactly the edge probability c/2.
    auto two = simulate_connectivity(2, 0.8, 100000, 3);
    CHECK(two.frequency() == doctest::Approx(0.4).epsilon(0.03));
}

TEST_CASE("q_c values") {
    CHECK(q_c(0.1, 3) == doctest::Approx(0.019067657278197).epsilon(1e-9));
    CHECK(q_c(0.5, 3) == doctest::Approx(0.111827014668775).epsilon(1e-9));
    CHECK(q_c(1.0, 3) == doctest::Approx(0.203528466601469).epsilon(1e-9));
    CHECK(q_c(0.2667, 3) == doctest::Approx(0.058430850863427).epsilon(1e-9));
    CHECK(q_c(2.0, 3) == doctest::Approx(0.320565897686854).epsilon(1e-9));
    CHECK(q_c(5.0, 3) == doctest::Approx(0.482601346787481).epsilon(1e-9));
    CHECK(q_c(10.0, 3) == 0.5);
    CHECK(std::fabs(cover_exponent(q_c(1.0, 3), 1.0, 3)) < 1e-9);
    // Monotone in c.
    double prev = 0;
    for (double c = 0.1; c < 5; c += 0.1) {
        const double q = q_c(c, 3);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("hole_prob_bound reference values") {
    CHECK(hole_prob_bound(100, 50, 0.9, 3) == doctest::Approx(7.982717471246545e-14).epsilon(1e-9));
    CHECK(hole_prob_bound(60, 30, 0.9, 3) == doctest::Approx(5.162025503567116e-9).epsilon(1e-9));
    CHECK(hole_prob_bound(60, 60, 0.9, 3) == 0.0);
    CHECK(hole_prob_bound(60, 0, 0.9, 3) == 0.0);
}

TEST_CASE("log-space and exact evaluations agree") {
    for (std::size_t n : {20, 40, 60})
        for (std::size_t i = 1; i < n; i += 3)
            for (double lambda : {0.1, 0.5, 0.9})
                for (std::size_t k : {3, 4}) {
                    const double a = hole_prob_bound(n, i, lambda, k);
                    const double b = hole_prob_bound_exact(n, i, lambda, k);
                    if (b == 0.0) {
                        CHECK(a == 0.0);
                    } else {
                        CHECK(a == doctest::Approx(b).epsilon(1e-9));
                    }
                }
    CHECK_THROWS_AS(hole_prob_bound_exact(61, 30, 0.9, 3), DomainError);
}

TEST_CASE("hole exponent roots") {
    CHECK(HoleExponent(0.9, 3).root().value() == doctest::Approx(0.6257095076613267).epsilon(1e-9));
    CHECK(HoleExponent(0.5, 3).root().value() == doctest::Approx(0.6682043712788932).epsilon(1e-9));
    CHECK(HoleExponent(0.9, 4).root().value() == doctest::Approx(0.7204649972288347).epsilon(1e-9));
    CHECK(HoleExponent(0.1, 3).root().value() == doctest::Approx(0.7816453252643503).epsilon(1e-9));
    HoleExponent h(0.9, 3);
    CHECK(h.g(1.0) == doctest::Approx(0.5056471805599453).epsilon(1e-12));
    CHECK(h.g(h.root().value()) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(h.f(0.3) == doctest::Approx(std::exp(h.g(0.3))));
    // Below the root the base is < 1.
    for (double x = 0.01; x < h.root().value() - 1e-6; x += 0.01) CHECK(h.g(x) < 0);
}

TEST_CASE("stirling form") {
    for (double alpha : {0.3, 0.5, 0.7})
        for (double lambda : {0.2, 0.9}) CHECK(stirling_form_check(alpha, lambda, 3) < 1e-9);
}

TEST_CASE("smallest_root and bisect") {
    auto r = smallest_root([](double x) { return (x - 0.3) * (x - 0.7); }, 0.0, 1.0, 1000, 1e-13);
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(smallest_root([](double x) { return x * x + 1; }, 0.0, 1.0, 100, 1e-12).has_value());
    CHECK(bisect([](double x) { return x * x - 2; }, 0.0, 2.0, 1e-14) == doctest::Approx(std::sqrt(2.0)));
}
