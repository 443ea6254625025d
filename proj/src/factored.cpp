#include "eok/factored.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "eok/errors.hpp"
#include "eok/graphs.hpp"

namespace eok {

namespace {

std::size_t diameter(const SolutionSet& s) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            best = std::max(best, static_cast<std::size_t>(std::popcount(s[i].word() ^ s[j].word())));
    return best;
}

}  // namespace

FactoredSolutionSpace FactoredSolutionSpace::build(const Formula& f, std::size_t factor_limit) {
    if (f.num_vars() > 64) throw DomainError("factored solution space requires n <= 64");
    FactoredSolutionSpace space;
    space.n_ = f.num_vars();
    const FormulaComponents comps = formula_components(f);

    std::vector<std::vector<Clause>> clauses(comps.components.size());
    std::vector<Var> local(f.num_vars());
    for (const auto& comp : comps.components)
        for (std::size_t j = 0; j < comp.size(); ++j) local[comp[j]] = static_cast<Var>(j);
    for (const Clause& cl : f.clauses()) {
        std::vector<Literal> lits;
        for (const Literal& l : cl.literals()) lits.push_back({local[l.var], l.negated});
        clauses[comps.component_of[cl[0].var]].emplace_back(std::move(lits));
    }

    for (std::size_t c = 0; c < comps.components.size(); ++c) {
        Formula sub(comps.components[c].size(), f.width(), f.epsilon(), std::move(clauses[c]));
        SolutionSet sols = enumerate_solutions(sub, factor_limit);
        if (!sols.complete) throw DomainError("factored solution space: component exceeds the solution limit");
        const std::size_t diam = diameter(sols);
        space.factors_.push_back({comps.components[c], std::move(sub), std::move(sols), diam});
    }
    return space;
}

bool FactoredSolutionSpace::satisfiable() const noexcept {
    return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.solutions.empty(); });
}

double FactoredSolutionSpace::count() const noexcept {
    double c = 1.0;
    for (const Factor& f : factors_) c *= static_cast<double>(f.solutions.size());
    return std::min(c, 9007199254740992.0);
}

std::optional<Overlap> FactoredSolutionSpace::min_overlap() const {
    if (count() < 2.0) return std::nullopt;
    std::size_t far = 0;
    for (const Factor& f : factors_) far += f.diameter;
    return Overlap{n_ - far, n_};
}

std::optional<std::size_t> FactoredSolutionSpace::min_connect_l() const {
    if (count() < 2.0) return std::nullopt;
    std::size_t best = 0;
    for (const Factor& f : factors_)
        if (f.solutions.size() >= 2) best = std::max(best, *eok::min_connect_l(f.solutions));
    return best;
}

std::vector<double> FactoredSolutionSpace::hole_size_counts(std::size_t min_size) const {
    std::vector<double> out(n_ + 1, 0.0);
    if (!satisfiable()) return out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Factor& fi = factors_[i];
        if (fi.vars.size() < std::max<std::size_t>(min_size, 2)) continue;
        const auto local = eok::hole_size_counts(fi.formula, fi.solutions, min_size);
        double others = 1.0;
        for (std::size_t j = 0; j < factors_.size(); ++j)
            if (j != i) others *= static_cast<double>(factors_[j].solutions.size());
        for (std::size_t d = 0; d < local.size(); ++d) out[d] += static_cast<double>(local[d]) * others;
    }
    return out;
}

Assignment FactoredSolutionSpace::assemble(std::span<const std::size_t> choice) const {
    if (choice.size() != factors_.size()) throw DomainError("assemble: one index per factor required");
    Assignment a(n_);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        const Factor& f = factors_[i];
        const Assignment& part = f.solutions[choice[i]];
        for (std::size_t j = 0; j < f.vars.size(); ++j) a.set(f.vars[j], part.get(j));
    }
    return a;
}

std::pair<Assignment, Assignment> FactoredSolutionSpace::sample_distinct_pair(Rng& rng) const {
    if (count() < 2.0) throw DomainError("sample_distinct_pair: fewer than two solutions");
    std::vector<std::size_t> x(factors_.size()), y(factors_.size());
    for (;;) {
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            x[i] = rng.below(factors_[i].solutions.size());
            y[i] = rng.below(factors_[i].solutions.size());
        }
        if (x != y) return {assemble(x), assemble(y)};
    }
}

SolutionSet FactoredSolutionSpace::expand(std::size_t limit) const {
    SolutionSet s;
    s.n = n_;
    if (!satisfiable()) return s;
    std::vector<std::size_t> idx(factors_.size(), 0);
    for (;;) {
        if (s.solutions.size() == limit) {
            s.complete = false;
            break;
        }
        s.solutions.push_back(assemble(idx));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == factors_[i].solutions.size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    std::sort(s.solutions.begin(), s.solutions.end());
    return s;
}

}  // namespace eok
