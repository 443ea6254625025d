#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eok/instance.hpp"
#include "eok/solver.hpp"

namespace eok {

// Exact overlap agree/n.
struct Overlap {
    std::size_t agree = 0;
    std::size_t n = 0;

    double value() const noexcept { return n == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(n); }
    friend bool operator==(const Overlap&, const Overlap&) = default;
};

Overlap overlap(const Assignment& a, const Assignment& b);

struct OverlapStats {
    std::size_t n = 0;
    std::vector<std::uint64_t> histogram;  // index = agreement count, size n + 1
    std::uint64_t pair_count = 0;
    std::optional<Overlap> min_overlap;  // empty when fewer than two solutions
};

// Exact histogram over all unordered distinct pairs. DomainError if `s` is truncated.
OverlapStats overlap_stats(const SolutionSet& s);

struct ClusterReport {
    std::size_t l = 0;
    std::vector<std::vector<std::size_t>> components;  // indices into the solution set, ordered by first member
    std::size_t largest_component_size = 0;
    bool is_single_cluster = false;
};

enum class ClusterMethod { automatic, pairwise, neighborhood };

// Components of the graph on `s` with edges d_H <= l.
ClusterReport cluster_components(const SolutionSet& s, std::size_t l,
                                 ClusterMethod method = ClusterMethod::automatic);

// Smallest l making `s` a single cluster; empty when |s| < 2.
std::optional<std::size_t> min_connect_l(const SolutionSet& s);

struct HoleRecord {
    Assignment a;
    Assignment b;
    std::size_t size = 0;

    friend bool operator==(const HoleRecord&, const HoleRecord&) = default;
};

// d_H(a,b) >= 2 and no other member of `s` lies on a geodesic between a and b.
bool is_hole(const Formula& f, const Assignment& a, const Assignment& b, const SolutionSet& s);

// All hole pairs with size >= min_size, by size descending then lexicographically.
std::vector<HoleRecord> find_holes(const Formula& f, const SolutionSet& s, std::size_t min_size);

// Number of hole pairs with size >= min_size, bucketed by size (index = size).
std::vector<std::uint64_t> hole_size_counts(const Formula& f, const SolutionSet& s, std::size_t min_size);

struct CoverCheck {
    std::vector<Var> agreement;
    bool is_cover = false;
};

CoverCheck agreement_is_cover(const Formula& f, const Assignment& a, const Assignment& b);
bool is_cover(const Formula& f, const std::vector<Var>& vars);

// Minimum hitting set of the clause variable sets (branch and bound). Requires n <= 64.
std::size_t min_cover_size(const Formula& f);

}  // namespace eok
