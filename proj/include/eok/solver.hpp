#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eok/instance.hpp"

namespace eok {

// True iff every clause has exactly one true literal. DomainError on length mismatch.
bool check_assignment(const Formula& f, const Assignment& a);

enum class Value : std::int8_t { unset = -1, false_ = 0, true_ = 1 };

struct TrailEntry {
    static constexpr std::size_t kDecision = std::numeric_limits<std::size_t>::max();

    Var var = 0;
    bool value = false;
    std::size_t reason = kDecision;  // clause id that forced the value, or kDecision

    bool is_decision() const noexcept { return reason == kDecision; }
    friend bool operator==(const TrailEntry&, const TrailEntry&) = default;
};

class PartialAssignment {
public:
    explicit PartialAssignment(std::size_t n) : values_(n, Value::unset) {}

    std::size_t size() const noexcept { return values_.size(); }
    Value value(Var v) const { return values_[v]; }
    bool is_set(Var v) const { return values_[v] != Value::unset; }
    const std::vector<TrailEntry>& trail() const noexcept { return trail_; }

    // DomainError if v is already set.
    void assign(Var v, bool value, std::size_t reason = TrailEntry::kDecision);
    void undo_to(std::size_t trail_size);

    // Total assignment; requires every variable set.
    Assignment to_assignment() const;

private:
    std::vector<Value> values_;
    std::vector<TrailEntry> trail_;
};

struct Conflict {
    std::size_t clause = 0;
};

using PropagationOutcome = std::variant<PartialAssignment, Conflict>;

// Fixpoint of the exactly-one rules: a true literal forces the other literals
// false; k-1 false literals force the last one true.
PropagationOutcome propagate(const Formula& f, PartialAssignment pa);

struct SolutionSet {
    std::size_t n = 0;
    std::uint64_t formula_id = 0;
    std::vector<Assignment> solutions;  // sorted, duplicate-free
    bool complete = true;

    std::size_t size() const noexcept { return solutions.size(); }
    bool empty() const noexcept { return solutions.empty(); }
    const Assignment& operator[](std::size_t i) const { return solutions[i]; }
};

inline constexpr std::size_t kDefaultSolutionLimit = std::size_t{1} << 22;

SolutionSet enumerate_solutions(const Formula& f, std::optional<std::size_t> limit = kDefaultSolutionLimit);
bool is_satisfiable(const Formula& f);
std::uint64_t count_solutions(const Formula& f);

// FNV-1a of the canonical formula text.
std::uint64_t formula_id(const Formula& f);

// "s eok <n> <count> <complete>" followed by one bit string per line.
std::string write_solutions(const SolutionSet& s);
SolutionSet parse_solutions(std::string_view text);

}  // namespace eok
