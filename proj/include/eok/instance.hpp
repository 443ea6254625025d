#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eok {

using Var = std::uint32_t;  // 0-based internally, 1-based on disk

struct Literal {
    Var var = 0;
    bool negated = false;

    // Truth value of the literal when its variable takes `value`.
    bool eval(bool value) const noexcept { return value != negated; }

    friend bool operator==(const Literal&, const Literal&) = default;
};

// An exactly-one constraint over k literals on pairwise distinct variables.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {}

    std::span<const Literal> literals() const noexcept { return literals_; }
    std::size_t width() const noexcept { return literals_.size(); }
    const Literal& operator[](std::size_t i) const { return literals_[i]; }
    std::size_t negations() const noexcept;
    bool contains(Var v) const noexcept;

    friend bool operator==(const Clause&, const Clause&) = default;

private:
    std::vector<Literal> literals_;
};

// Length-n bit vector; bit i is the value of variable i.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    // "0110..." with variable 1 leftmost.
    static Assignment from_string(std::string_view bits);
    static Assignment from_word(std::size_t n, std::uint64_t word);

    std::size_t size() const noexcept { return n_; }
    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= bit; else words_[i >> 6] &= ~bit;
    }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }
    // Only meaningful for n <= 64.
    std::uint64_t word() const noexcept { return words_.empty() ? 0 : words_[0]; }
    std::string to_string() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
    // Lexicographic on the bit string (variable 1 first, '0' < '1').
    friend std::strong_ordering operator<=>(const Assignment& a, const Assignment& b) noexcept;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t hamming(const Assignment& a, const Assignment& b);

struct Provenance {
    enum class Kind { file, counting, constant_prob };
    Kind kind = Kind::file;
    double parameter = 0.0;  // r or p
    std::uint64_t seed = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

class Formula {
public:
    // Validates every clause against n and k; throws DomainError.
    Formula(std::size_t n, std::size_t k, double epsilon, std::vector<Clause> clauses,
            Provenance provenance = {});

    std::size_t num_vars() const noexcept { return n_; }
    std::size_t width() const noexcept { return k_; }
    double epsilon() const noexcept { return epsilon_; }
    std::span<const Clause> clauses() const noexcept { return clauses_; }
    std::size_t num_clauses() const noexcept { return clauses_.size(); }
    const Clause& clause(std::size_t id) const { return clauses_[id]; }
    const Provenance& provenance() const noexcept { return provenance_; }

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    std::size_t n_;
    std::size_t k_;
    double epsilon_;
    std::vector<Clause> clauses_;
    Provenance provenance_;
};

enum class CountingMode { multinomial, exact_counts };

struct ModelParams {
    std::size_t n = 0;
    std::size_t k = 3;
    double epsilon = 0.5;
    double density = 0.0;  // r for the counting model, p for the constant-probability model
    std::uint64_t seed = 0;
};

// r_{k,eps} = 1 / (4 eps (1 - eps) C(k,2)).
double threshold_r(std::size_t k, double epsilon);
// p_{k,eps} = (k-2)! / (2 eps (1 - eps)) * n^(1-k).
double threshold_p(std::size_t k, double epsilon, std::size_t n);
// The n-independent coefficient of threshold_p.
double threshold_p_coefficient(std::size_t k, double epsilon);

// Weight eps^i (1-eps)^(k-i) of one ordered sign pattern with i negations.
double sign_pattern_weight(std::size_t negations, std::size_t k, double epsilon);

// round(r n) clauses; duplicates allowed.
Formula gen_counting(const ModelParams& params, CountingMode mode = CountingMode::multinomial);

// Every signed clause independently with probability p eps^i (1-eps)^(k-i).
Formula gen_constant_prob(const ModelParams& params);

// Clause count the counting model produces.
std::size_t counting_clause_count(std::size_t n, double r);

// Exactly one true literal under `a`.
bool satisfies(const Clause& clause, const Assignment& a);

}  // namespace eok
