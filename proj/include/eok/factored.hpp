#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eok/geometry.hpp"
#include "eok/instance.hpp"
#include "eok/rng.hpp"
#include "eok/solver.hpp"

namespace eok {

// The solution set of a formula is the Cartesian product of the solution sets
// of its formula-hypergraph components. This class keeps the product
// implicit, so geometry over all solutions can be computed from the factors:
//   - max pairwise distance is the sum of per-factor diameters,
//   - the smallest single-cluster radius is the max over factors,
//   - a hole differs from its partner in exactly one factor, where it is a
//     hole of that factor (any second differing factor yields a solution
//     strictly between the endpoints).
class FactoredSolutionSpace {
public:
    struct Factor {
        std::vector<Var> vars;   // ascending original indices
        Formula formula;         // component restricted and renumbered to 0..size-1
        SolutionSet solutions;
        std::size_t diameter = 0;
    };

    // Requires n <= 64. Throws DomainError if a component exceeds `factor_limit` solutions.
    static FactoredSolutionSpace build(const Formula& f, std::size_t factor_limit = kDefaultSolutionLimit);

    std::size_t num_vars() const noexcept { return n_; }
    std::span<const Factor> factors() const noexcept { return factors_; }
    bool satisfiable() const noexcept;
    // Number of solutions; saturates at 2^53 (exact below).
    double count() const noexcept;
    std::optional<Overlap> min_overlap() const;
    std::optional<std::size_t> min_connect_l() const;
    // Hole pairs with size >= min_size, bucketed by size.
    std::vector<double> hole_size_counts(std::size_t min_size) const;

    // Assignment from one solution index per factor.
    Assignment assemble(std::span<const std::size_t> choice) const;
    // Uniform pair of distinct solutions; requires count() >= 2.
    std::pair<Assignment, Assignment> sample_distinct_pair(Rng& rng) const;
    // Materialized, sorted product (for cross-checks on small instances).
    SolutionSet expand(std::size_t limit = kDefaultSolutionLimit) const;

private:
    std::size_t n_ = 0;
    std::vector<Factor> factors_;
};

}  // namespace eok
