#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eok/instance.hpp"

namespace eok {

// Variables split by their values under a pair (A, B):
// V0: A=B=0, V1: A=0 B=1, V2: A=1 B=0, V3: A=B=1.
struct VariablePartition {
    std::size_t n = 0;
    std::vector<Var> v0, v1, v2, v3;
    std::vector<std::uint8_t> part_of;  // per variable, 0..3

    std::size_t a() const noexcept { return v0.size(); }
    std::size_t b() const noexcept { return v1.size(); }
    std::size_t c() const noexcept { return v2.size(); }
    std::size_t d() const noexcept { return v3.size(); }
    double alpha() const noexcept { return frac(a()); }
    double beta() const noexcept { return frac(b()); }
    double gamma() const noexcept { return frac(c()); }
    double delta() const noexcept { return frac(d()); }
    bool disagrees(Var v) const { return part_of[v] == 1 || part_of[v] == 2; }

private:
    double frac(std::size_t x) const noexcept { return n == 0 ? 0.0 : static_cast<double>(x) / static_cast<double>(n); }
};

VariablePartition partition(const Assignment& a, const Assignment& b);

enum class ClauseTag { none, C1, C2, C3, C4 };

struct ClauseType {
    ClauseTag tag = ClauseTag::none;
    std::size_t i = 0;  // clause variables in V3

    friend bool operator==(const ClauseType&, const ClauseType&) = default;
};

const char* tag_name(ClauseTag tag);

// Row of the edge-inducing clause table, or none.
//   C1: V1 and V2 literal both positive      C2: both negated
//   C3: two V1 literals, exactly one negated C4: same for V2
// In every row V0 members appear positive and V3 members negated.
ClauseType classify_clause(const Clause& clause, const VariablePartition& part);

enum class EdgeLabel { equal, unequal };

struct LabeledEdge {
    Var x = 0;
    Var y = 0;  // x < y
    EdgeLabel label = EdgeLabel::equal;
    std::size_t witness = 0;  // clause id

    friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// Multigraph: one edge per witness clause.
struct LabeledGraph {
    std::size_t n = 0;
    std::vector<Var> vertices;
    std::vector<LabeledEdge> edges;

    // Connected components over `vertices`, ordered by smallest member.
    std::vector<std::vector<Var>> components() const;
    std::size_t largest_component() const;
};

// Graph H of a pair of satisfying assignments. DomainError if either fails to satisfy f.
LabeledGraph build_H(const Formula& f, const Assignment& a, const Assignment& b);

// True iff the labels admit a 2-colouring (equal edges same colour, unequal edges different).
bool parity_consistent(const LabeledGraph& h);

std::string to_dot(const LabeledGraph& h);

struct FormulaComponents {
    std::vector<std::vector<Var>> components;  // ordered by smallest member
    std::vector<std::size_t> component_of;
    std::size_t largest = 0;
};

// Connected components of the formula hypergraph; isolated variables are singletons.
FormulaComponents formula_components(const Formula& f);

// p -> q by rewriting one formula-hypergraph component at a time (ascending
// smallest variable). Throws InvariantViolation if an intermediate fails to satisfy f.
std::vector<Assignment> path_via_formula_components(const Formula& f, const Assignment& p, const Assignment& q);

struct HPathFailure {
    std::size_t step = 0;        // index of the offending intermediate in the path
    Assignment assignment;
    std::size_t clause = 0;      // first violated clause
    std::vector<Var> flipped;    // component flipped at that step
};

struct HPathResult {
    std::vector<Assignment> path;  // valid only when !failure
    std::size_t max_step = 0;      // largest component flipped
    std::optional<HPathFailure> failure;

    bool ok() const noexcept { return !failure.has_value(); }
};

// a -> b by flipping each connected component of H (isolated V1/V2 variables
// on their own) in one step, ascending smallest variable.
HPathResult path_via_H(const Formula& f, const Assignment& a, const Assignment& b);

}  // namespace eok
