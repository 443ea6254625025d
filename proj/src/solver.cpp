#include "eok/solver.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "eok/errors.hpp"
#include "eok/formula_io.hpp"

namespace eok {

bool check_assignment(const Formula& f, const Assignment& a) {
    if (a.size() != f.num_vars())
        throw DomainError("assignment has length " + std::to_string(a.size()) + ", formula has " +
                          std::to_string(f.num_vars()) + " variables");
    for (const Clause& cl : f.clauses())
        if (!satisfies(cl, a)) return false;
    return true;
}

void PartialAssignment::assign(Var v, bool value, std::size_t reason) {
    if (v >= values_.size()) throw DomainError("variable out of range");
    if (values_[v] != Value::unset) throw DomainError("variable already assigned");
    values_[v] = value ? Value::true_ : Value::false_;
    trail_.push_back({v, value, reason});
}

void PartialAssignment::undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
        values_[trail_.back().var] = Value::unset;
        trail_.pop_back();
    }
}

Assignment PartialAssignment::to_assignment() const {
    Assignment a(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == Value::unset) throw DomainError("partial assignment is not total");
        a.set(i, values_[i] == Value::true_);
    }
    return a;
}

namespace {

// Search state shared by propagate() and the enumerator.
class Engine {
public:
    explicit Engine(const Formula& f) : f_(f), occurs_(f.num_vars()) {
        for (std::size_t c = 0; c < f.num_clauses(); ++c)
            for (const Literal& l : f.clause(c).literals()) occurs_[l.var].push_back(c);
    }

    const std::vector<std::vector<std::size_t>>& occurrences() const { return occurs_; }

    // Propagates to fixpoint starting from `queue`. Returns the conflicting clause, if any.
    std::optional<std::size_t> run(PartialAssignment& pa, std::vector<std::size_t>& queue) {
        while (!queue.empty()) {
            const std::size_t c = queue.back();
            queue.pop_back();
            const Clause& cl = f_.clause(c);
            int true_count = 0;
            int unset_count = 0;
            const Literal* last_unset = nullptr;
            for (const Literal& l : cl.literals()) {
                const Value v = pa.value(l.var);
                if (v == Value::unset) {
                    ++unset_count;
                    last_unset = &l;
                } else if (l.eval(v == Value::true_)) {
                    ++true_count;
                }
            }
            if (true_count >= 2) return c;
            if (true_count == 1) {
                if (unset_count == 0) continue;
                for (const Literal& l : cl.literals())
                    if (!pa.is_set(l.var)) force(pa, l, false, c, queue);
            } else if (unset_count == 0) {
                return c;
            } else if (unset_count == 1) {
                force(pa, *last_unset, true, c, queue);
            }
        }
        return std::nullopt;
    }

private:
    void force(PartialAssignment& pa, const Literal& l, bool literal_value, std::size_t reason,
               std::vector<std::size_t>& queue) {
        pa.assign(l.var, literal_value != l.negated, reason);
        for (std::size_t c : occurs_[l.var]) queue.push_back(c);
    }

    const Formula& f_;
    std::vector<std::vector<std::size_t>> occurs_;
};

class Enumerator {
public:
    Enumerator(const Formula& f, std::size_t cap) : f_(f), engine_(f), pa_(f.num_vars()), cap_(cap) {
        const auto& occ = engine_.occurrences();
        for (Var v = 0; v < f.num_vars(); ++v) {
            if (occ[v].empty()) free_.push_back(v);
            else order_.push_back(v);
        }
        // Most occurrences first, ties by smallest index.
        std::stable_sort(order_.begin(), order_.end(),
                         [&](Var a, Var b) { return occ[a].size() > occ[b].size(); });
        free_count_ = free_.size() >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << free_.size());
    }

    // Collects full assignments until more than `cap_` have been found.
    void run() {
        std::vector<std::size_t> queue(f_.num_clauses());
        std::iota(queue.begin(), queue.end(), std::size_t{0});
        if (engine_.run(pa_, queue)) return;
        search(0);
    }

    std::vector<Assignment>& found() { return found_; }
    std::uint64_t count() {
        count_only_ = true;
        run();
        return counted_;
    }
    bool overflowed() const { return overflow_; }

private:
    bool search(std::size_t depth) {
        while (depth < order_.size() && pa_.is_set(order_[depth])) ++depth;
        if (depth == order_.size()) return emit();
        const Var v = order_[depth];
        const std::size_t mark = pa_.trail().size();
        for (bool value : {false, true}) {
            pa_.assign(v, value);
            std::vector<std::size_t> queue(engine_.occurrences()[v]);
            const bool ok = !engine_.run(pa_, queue);
            if (ok && search(depth + 1)) return true;
            pa_.undo_to(mark);
        }
        return false;
    }

    // Expands the free variables of the current constrained assignment. Returns true to stop.
    bool emit() {
        if (count_only_) {
            counted_ += free_count_;
            return false;
        }
        Assignment base(f_.num_vars());
        for (Var v : order_) base.set(v, pa_.value(v) == Value::true_);
        for (std::uint64_t mask = 0; mask < free_count_; ++mask) {
            Assignment a = base;
            for (std::size_t j = 0; j < free_.size(); ++j)
                if ((mask >> j) & 1U) a.set(free_[j], true);
            found_.push_back(std::move(a));
            if (found_.size() > cap_) {
                overflow_ = true;
                return true;
            }
        }
        return false;
    }

    const Formula& f_;
    Engine engine_;
    PartialAssignment pa_;
    std::vector<Var> order_;
    std::vector<Var> free_;
    std::uint64_t free_count_ = 1;
    std::size_t cap_;
    std::vector<Assignment> found_;
    bool overflow_ = false;
    bool count_only_ = false;
    std::uint64_t counted_ = 0;
};

}  // namespace

PropagationOutcome propagate(const Formula& f, PartialAssignment pa) {
    if (pa.size() != f.num_vars()) throw DomainError("partial assignment length mismatch");
    Engine engine(f);
    std::vector<std::size_t> queue(f.num_clauses());
    std::iota(queue.begin(), queue.end(), std::size_t{0});
    if (auto conflict = engine.run(pa, queue)) return Conflict{*conflict};
    return pa;
}

SolutionSet enumerate_solutions(const Formula& f, std::optional<std::size_t> limit) {
    const std::size_t cap = limit.value_or(std::numeric_limits<std::size_t>::max() - 1);
    Enumerator en(f, cap);
    en.run();
    SolutionSet s;
    s.n = f.num_vars();
    s.formula_id = formula_id(f);
    s.solutions = std::move(en.found());
    if (en.overflowed()) {
        s.solutions.resize(cap);
        s.complete = false;
    }
    std::sort(s.solutions.begin(), s.solutions.end());
    return s;
}

bool is_satisfiable(const Formula& f) { return !enumerate_solutions(f, 1).empty(); }

std::uint64_t count_solutions(const Formula& f) {
    Enumerator en(f, std::numeric_limits<std::size_t>::max() - 1);
    return en.count();
}

std::uint64_t formula_id(const Formula& f) {
    const std::string text = write_formula(f);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string write_solutions(const SolutionSet& s) {
    std::ostringstream out;
    out << "s eok " << s.n << ' ' << s.size() << ' ' << (s.complete ? 1 : 0) << '\n';
    for (const Assignment& a : s.solutions) out << a.to_string() << '\n';
    return out.str();
}

SolutionSet parse_solutions(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    SolutionSet s;
    std::size_t count = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == 'c') continue;
        if (!have_header) {
            std::istringstream hs(line);
            std::string tag, fmt;
            int complete = -1;
            if (!(hs >> tag >> fmt >> s.n >> count >> complete) || tag != "s" || fmt != "eok" ||
                (complete != 0 && complete != 1))
                throw ParseError(line_no, "malformed solution header, expected 's eok <n> <count> <0|1>'");
            s.complete = complete == 1;
            have_header = true;
            continue;
        }
        if (line.size() != s.n) throw ParseError(line_no, "bit string length differs from n");
        try {
            s.solutions.push_back(Assignment::from_string(line));
        } catch (const DomainError& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!have_header) throw ParseError(line_no, "missing solution header");
    if (s.solutions.size() != count) throw ParseError(line_no, "solution count differs from header");
    return s;
}

}  // namespace eok
