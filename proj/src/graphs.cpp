#include "eok/graphs.hpp"

#include <algorithm>
#include <sstream>

#include "eok/errors.hpp"
#include "eok/solver.hpp"
#include "eok/union_find.hpp"

namespace eok {

VariablePartition partition(const Assignment& a, const Assignment& b) {
    if (a.size() != b.size()) throw DomainError("partition: assignment lengths differ");
    VariablePartition p;
    p.n = a.size();
    p.part_of.resize(p.n);
    for (Var v = 0; v < p.n; ++v) {
        const bool av = a.get(v);
        const bool bv = b.get(v);
        const std::uint8_t cls = !av && !bv ? 0 : (!av && bv ? 1 : (av && !bv ? 2 : 3));
        p.part_of[v] = cls;
        switch (cls) {
            case 0: p.v0.push_back(v); break;
            case 1: p.v1.push_back(v); break;
            case 2: p.v2.push_back(v); break;
            default: p.v3.push_back(v); break;
        }
    }
    return p;
}

const char* tag_name(ClauseTag tag) {
    switch (tag) {
        case ClauseTag::C1: return "C1";
        case ClauseTag::C2: return "C2";
        case ClauseTag::C3: return "C3";
        case ClauseTag::C4: return "C4";
        case ClauseTag::none: break;
    }
    return "none";
}

ClauseType classify_clause(const Clause& clause, const VariablePartition& part) {
    ClauseType out;
    const Literal* special[2] = {nullptr, nullptr};
    std::size_t specials = 0;
    bool background_ok = true;
    for (const Literal& l : clause.literals()) {
        if (l.var >= part.n) throw DomainError("classify_clause: variable outside the partition");
        switch (part.part_of[l.var]) {
            case 0:
                if (l.negated) background_ok = false;
                break;
            case 3:
                ++out.i;
                if (!l.negated) background_ok = false;
                break;
            default:
                if (specials < 2) special[specials] = &l;
                ++specials;
                break;
        }
    }
    if (specials != 2 || !background_ok) return out;

    const std::uint8_t px = part.part_of[special[0]->var];
    const std::uint8_t py = part.part_of[special[1]->var];
    const bool nx = special[0]->negated;
    const bool ny = special[1]->negated;
    if (px != py) {
        if (!nx && !ny) out.tag = ClauseTag::C1;
        else if (nx && ny) out.tag = ClauseTag::C2;
    } else if (nx != ny) {
        out.tag = px == 1 ? ClauseTag::C3 : ClauseTag::C4;
    }
    return out;
}

std::vector<std::vector<Var>> LabeledGraph::components() const {
    UnionFind uf(n);
    for (const LabeledEdge& e : edges) uf.unite(e.x, e.y);
    std::vector<std::vector<Var>> out;
    std::vector<std::size_t> slot(n, SIZE_MAX);
    std::vector<Var> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    for (Var v : sorted) {
        const std::size_t r = uf.find(v);
        if (slot[r] == SIZE_MAX) {
            slot[r] = out.size();
            out.emplace_back();
        }
        out[slot[r]].push_back(v);
    }
    return out;
}

std::size_t LabeledGraph::largest_component() const {
    std::size_t best = 0;
    for (const auto& c : components()) best = std::max(best, c.size());
    return best;
}

LabeledGraph build_H(const Formula& f, const Assignment& a, const Assignment& b) {
    if (!check_assignment(f, a) || !check_assignment(f, b))
        throw DomainError("build_H: both assignments must satisfy the formula");
    const VariablePartition part = partition(a, b);
    LabeledGraph h;
    h.n = f.num_vars();
    h.vertices = part.v1;
    h.vertices.insert(h.vertices.end(), part.v2.begin(), part.v2.end());
    std::sort(h.vertices.begin(), h.vertices.end());

    for (std::size_t c = 0; c < f.num_clauses(); ++c) {
        const Clause& cl = f.clause(c);
        const ClauseType t = classify_clause(cl, part);
        if (t.tag == ClauseTag::none) continue;
        Var ends[2];
        std::size_t e = 0;
        for (const Literal& l : cl.literals())
            if (part.disagrees(l.var)) ends[e++] = l.var;
        const EdgeLabel label =
            (t.tag == ClauseTag::C1 || t.tag == ClauseTag::C2) ? EdgeLabel::unequal : EdgeLabel::equal;
        h.edges.push_back({std::min(ends[0], ends[1]), std::max(ends[0], ends[1]), label, c});
    }
    return h;
}

bool parity_consistent(const LabeledGraph& h) {
    ParityUnionFind uf(h.n);
    for (const LabeledEdge& e : h.edges)
        if (!uf.relate(e.x, e.y, e.label == EdgeLabel::unequal ? 1 : 0)) return false;
    return true;
}

std::string to_dot(const LabeledGraph& h) {
    std::ostringstream out;
    out << "graph H {\n";
    for (Var v : h.vertices) out << "  x" << (v + 1) << ";\n";
    for (const LabeledEdge& e : h.edges)
        out << "  x" << (e.x + 1) << " -- x" << (e.y + 1) << " [label=\""
            << (e.label == EdgeLabel::equal ? "=" : "!=") << "\", clause=" << e.witness << "];\n";
    out << "}\n";
    return out.str();
}

FormulaComponents formula_components(const Formula& f) {
    UnionFind uf(f.num_vars());
    for (const Clause& cl : f.clauses())
        for (std::size_t j = 1; j < cl.width(); ++j) uf.unite(cl[0].var, cl[j].var);
    FormulaComponents out;
    out.component_of.resize(f.num_vars());
    for (auto& g : uf.groups()) {
        std::vector<Var> comp(g.begin(), g.end());
        for (Var v : comp) out.component_of[v] = out.components.size();
        out.largest = std::max(out.largest, comp.size());
        out.components.push_back(std::move(comp));
    }
    return out;
}

std::vector<Assignment> path_via_formula_components(const Formula& f, const Assignment& p, const Assignment& q) {
    if (!check_assignment(f, p) || !check_assignment(f, q))
        throw DomainError("path_via_formula_components: endpoints must satisfy the formula");
    const FormulaComponents comps = formula_components(f);
    std::vector<Assignment> path{p};
    Assignment cur = p;
    for (const auto& comp : comps.components) {
        bool differs = false;
        for (Var v : comp)
            if (cur.get(v) != q.get(v)) {
                cur.set(v, q.get(v));
                differs = true;
            }
        if (!differs) continue;
        if (!check_assignment(f, cur))
            throw InvariantViolation("component rewrite produced a non-satisfying assignment " + cur.to_string());
        path.push_back(cur);
    }
    return path;
}

HPathResult path_via_H(const Formula& f, const Assignment& a, const Assignment& b) {
    const LabeledGraph h = build_H(f, a, b);
    HPathResult res;
    res.path.push_back(a);
    Assignment cur = a;
    for (const auto& comp : h.components()) {
        for (Var v : comp) cur.flip(v);
        res.max_step = std::max(res.max_step, comp.size());
        for (std::size_t c = 0; c < f.num_clauses(); ++c) {
            if (!satisfies(f.clause(c), cur)) {
                res.failure = HPathFailure{res.path.size(), cur, c, comp};
                return res;
            }
        }
        res.path.push_back(cur);
    }
    return res;
}

}  // namespace eok
