#include "eok/instance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "eok/combinatorics.hpp"
#include "eok/errors.hpp"
#include "eok/rng.hpp"

namespace eok {

std::size_t Clause::negations() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(literals_.begin(), literals_.end(), [](const Literal& l) { return l.negated; }));
}

bool Clause::contains(Var v) const noexcept {
    return std::any_of(literals_.begin(), literals_.end(), [v](const Literal& l) { return l.var == v; });
}

Assignment Assignment::from_string(std::string_view bits) {
    Assignment a(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') a.set(i, true);
        else if (bits[i] != '0') throw DomainError("assignment string must contain only 0/1");
    }
    return a;
}

Assignment Assignment::from_word(std::size_t n, std::uint64_t word) {
    if (n > 64) throw DomainError("from_word requires n <= 64");
    Assignment a(n);
    if (n > 0) a.words_[0] = n == 64 ? word : word & ((std::uint64_t{1} << n) - 1);
    return a;
}

std::string Assignment::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

std::strong_ordering operator<=>(const Assignment& a, const Assignment& b) noexcept {
    const std::size_t words = std::min(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t diff = a.words_[w] ^ b.words_[w];
        if (diff != 0) {
            const std::uint64_t lowest = diff & (~diff + 1);
            return (a.words_[w] & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return a.n_ <=> b.n_;
}

std::size_t hamming(const Assignment& a, const Assignment& b) {
    if (a.size() != b.size()) throw DomainError("hamming: assignment lengths differ");
    std::size_t d = 0;
    auto wa = a.words();
    auto wb = b.words();
    for (std::size_t w = 0; w < wa.size(); ++w) d += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
    return d;
}

Formula::Formula(std::size_t n, std::size_t k, double epsilon, std::vector<Clause> clauses,
                 Provenance provenance)
    : n_(n), k_(k), epsilon_(epsilon), clauses_(std::move(clauses)), provenance_(provenance) {
    if (k_ < 3) throw DomainError("clause width k must be at least 3");
    if (!(epsilon_ >= 0.0 && epsilon_ <= 0.5)) throw DomainError("epsilon must lie in [0, 1/2]");
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
        const Clause& cl = clauses_[c];
        if (cl.width() != k_)
            throw DomainError("clause " + std::to_string(c) + " has " + std::to_string(cl.width()) +
                              " literals, expected " + std::to_string(k_));
        for (std::size_t i = 0; i < cl.width(); ++i) {
            if (cl[i].var >= n_) throw DomainError("clause " + std::to_string(c) + ": variable index out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (cl[j].var == cl[i].var)
                    throw DomainError("clause " + std::to_string(c) + ": repeated variable");
        }
    }
}

bool satisfies(const Clause& clause, const Assignment& a) {
    int true_count = 0;
    for (const Literal& l : clause.literals())
        if (l.eval(a.get(l.var))) ++true_count;
    return true_count == 1;
}

namespace {

void check_k_eps(std::size_t k, double epsilon) {
    if (k < 3) throw DomainError("k must be at least 3");
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw DomainError("epsilon must lie in (0, 1/2]");
}

void check_params(const ModelParams& p) {
    if (p.k < 3) throw DomainError("k must be at least 3");
    if (p.k > 16) throw DomainError("k above 16 is not supported");
    if (!(p.epsilon >= 0.0 && p.epsilon <= 0.5)) throw DomainError("epsilon must lie in [0, 1/2]");
    if (p.n < p.k) throw DomainError("n must be at least k");
}

// k distinct variables, uniformly, returned sorted.
std::vector<Var> draw_variables(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<Var> vars;
    vars.reserve(k);
    while (vars.size() < k) {
        const auto v = static_cast<Var>(rng.below(n));
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    return vars;
}

// Bit j of `pattern` negates the literal on the j-th smallest variable.
Clause make_clause(std::span<const Var> vars, std::uint32_t pattern) {
    std::vector<Literal> lits;
    lits.reserve(vars.size());
    for (std::size_t j = 0; j < vars.size(); ++j) lits.push_back({vars[j], ((pattern >> j) & 1U) != 0});
    return Clause(std::move(lits));
}

}  // namespace

double threshold_r(std::size_t k, double epsilon) {
    check_k_eps(k, epsilon);
    const double pairs = static_cast<double>(k * (k - 1)) / 2.0;
    return 1.0 / (4.0 * epsilon * (1.0 - epsilon)) / pairs;
}

double threshold_p_coefficient(std::size_t k, double epsilon) {
    check_k_eps(k, epsilon);
    return factorial(static_cast<unsigned>(k - 2)) / (2.0 * epsilon * (1.0 - epsilon));
}

double threshold_p(std::size_t k, double epsilon, std::size_t n) {
    check_k_eps(k, epsilon);
    if (n < k) throw DomainError("n must be at least k");
    return threshold_p_coefficient(k, epsilon) * std::pow(static_cast<double>(n), 1.0 - static_cast<double>(k));
}

double sign_pattern_weight(std::size_t negations, std::size_t k, double epsilon) {
    return std::pow(epsilon, static_cast<double>(negations)) *
           std::pow(1.0 - epsilon, static_cast<double>(k - negations));
}

std::size_t counting_clause_count(std::size_t n, double r) {
    if (!(r >= 0.0)) throw DomainError("clause density r must be non-negative");
    return static_cast<std::size_t>(std::llround(r * static_cast<double>(n)));
}

Formula gen_counting(const ModelParams& params, CountingMode mode) {
    check_params(params);
    const std::size_t m = counting_clause_count(params.n, params.density);
    const std::size_t k = params.k;
    Rng rng(params.seed);
    std::vector<Clause> clauses;
    clauses.reserve(m);

    if (mode == CountingMode::multinomial) {
        for (std::size_t c = 0; c < m; ++c) {
            auto vars = draw_variables(rng, params.n, k);
            std::uint32_t pattern = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (rng.bernoulli(params.epsilon)) pattern |= 1U << j;
            clauses.push_back(make_clause(vars, pattern));
        }
    } else {
        // Largest-remainder apportionment of m over the 2^k ordered sign patterns.
        const std::uint32_t patterns = 1U << k;
        std::vector<std::size_t> counts(patterns);
        std::vector<std::pair<double, std::uint32_t>> remainders;
        std::size_t assigned = 0;
        for (std::uint32_t s = 0; s < patterns; ++s) {
            const double quota = static_cast<double>(m) *
                                 sign_pattern_weight(static_cast<std::size_t>(std::popcount(s)), k, params.epsilon);
            counts[s] = static_cast<std::size_t>(std::floor(quota));
            assigned += counts[s];
            remainders.emplace_back(quota - std::floor(quota), s);
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& x, const auto& y) { return x.first > y.first; });
        for (std::size_t i = 0; assigned < m && i < remainders.size(); ++i, ++assigned)
            ++counts[remainders[i].second];

        std::vector<std::uint32_t> order;
        order.reserve(m);
        for (std::uint32_t s = 0; s < patterns; ++s) order.insert(order.end(), counts[s], s);
        rng.shuffle(std::span<std::uint32_t>(order));
        for (std::uint32_t s : order) clauses.push_back(make_clause(draw_variables(rng, params.n, k), s));
    }

    return Formula(params.n, k, params.epsilon, std::move(clauses),
                   {Provenance::Kind::counting, params.density, params.seed});
}

Formula gen_constant_prob(const ModelParams& params) {
    check_params(params);
    const double p = params.density;
    const std::size_t k = params.k;
    if (!(p >= 0.0)) throw DomainError("p must be non-negative");
    if (p * sign_pattern_weight(0, k, params.epsilon) > 1.0)
        throw DomainError("p * (1-eps)^k exceeds 1; inclusion probability above 1");

    const std::uint32_t patterns = 1U << k;
    std::vector<double> prob(patterns);
    for (std::uint32_t s = 0; s < patterns; ++s)
        prob[s] = p * sign_pattern_weight(static_cast<std::size_t>(std::popcount(s)), k, params.epsilon);

    Rng rng(params.seed);
    const std::uint64_t subsets = choose_u64(params.n, k);
    constexpr std::uint64_t kSweepLimit = 10'000'000;
    std::vector<Clause> clauses;

    if (subsets <= kSweepLimit) {
        std::vector<Var> vars(k);
        for (std::size_t j = 0; j < k; ++j) vars[j] = static_cast<Var>(j);
        do {
            for (std::uint32_t s = 0; s < patterns; ++s)
                if (rng.bernoulli(prob[s])) clauses.push_back(make_clause(vars, s));
        } while (next_combination(vars, static_cast<std::uint32_t>(params.n)));
    } else {
        std::vector<std::pair<std::vector<Var>, std::uint32_t>> drawn;
        for (std::uint32_t s = 0; s < patterns; ++s) {
            const std::uint64_t count = rng.binomial(subsets, prob[s]);
            std::set<std::vector<Var>> seen;
            while (seen.size() < count) {
                auto vars = draw_variables(rng, params.n, k);
                if (seen.insert(vars).second) drawn.emplace_back(std::move(vars), s);
            }
        }
        std::sort(drawn.begin(), drawn.end());
        for (const auto& [vars, s] : drawn) clauses.push_back(make_clause(vars, s));
    }

    return Formula(params.n, k, params.epsilon, std::move(clauses),
                   {Provenance::Kind::constant_prob, params.density, params.seed});
}

}  // namespace eok
