#include "eok/serialize.hpp"

namespace eok {

namespace {

// Variables are written 1-based, matching the formula file format.
nlohmann::json vars_json(const std::vector<Var>& vs) {
    auto out = nlohmann::json::array();
    for (Var v : vs) out.push_back(v + 1);
    return out;
}

}  // namespace

void to_json(nlohmann::json& j, const Overlap& o) {
    j = {{"agree", o.agree}, {"n", o.n}, {"value", o.value()}};
}

void to_json(nlohmann::json& j, const OverlapStats& s) {
    j = {{"n", s.n}, {"pair_count", s.pair_count}, {"histogram", s.histogram}, {"min_overlap", nullptr}};
    if (s.min_overlap) j["min_overlap"] = *s.min_overlap;
}

void to_json(nlohmann::json& j, const ClusterReport& r) {
    j = {{"l", r.l},
         {"component_count", r.components.size()},
         {"largest_component_size", r.largest_component_size},
         {"is_single_cluster", r.is_single_cluster},
         {"components", r.components}};
}

void to_json(nlohmann::json& j, const HoleRecord& h) {
    j = {{"a", h.a.to_string()}, {"b", h.b.to_string()}, {"size", h.size}};
}

void to_json(nlohmann::json& j, const CoverCheck& c) {
    j = {{"agreement", vars_json(c.agreement)}, {"is_cover", c.is_cover}};
}

void to_json(nlohmann::json& j, const VariablePartition& p) {
    j = {{"n", p.n}, {"V0", vars_json(p.v0)}, {"V1", vars_json(p.v1)}, {"V2", vars_json(p.v2)}, {"V3", vars_json(p.v3)}};
}

void to_json(nlohmann::json& j, const LabeledEdge& e) {
    j = {{"x", e.x + 1}, {"y", e.y + 1}, {"label", e.label == EdgeLabel::equal ? "=" : "!="}, {"witness", e.witness}};
}

void to_json(nlohmann::json& j, const LabeledGraph& g) {
    auto comps = nlohmann::json::array();
    for (const auto& c : g.components()) comps.push_back(vars_json(c));
    j = {{"n", g.n},
         {"vertices", vars_json(g.vertices)},
         {"edges", g.edges},
         {"components", comps},
         {"largest_component", g.largest_component()},
         {"parity_consistent", parity_consistent(g)}};
}

void to_json(nlohmann::json& j, const HPathResult& r) {
    auto path = nlohmann::json::array();
    for (const auto& a : r.path) path.push_back(a.to_string());
    j = {{"ok", r.ok()}, {"max_step", r.max_step}, {"path", path}, {"failure", nullptr}};
    if (r.failure)
        j["failure"] = {{"step", r.failure->step},
                        {"assignment", r.failure->assignment.to_string()},
                        {"clause", r.failure->clause},
                        {"flipped", vars_json(r.failure->flipped)}};
}

void to_json(nlohmann::json& j, const SolutionSet& s) {
    auto sols = nlohmann::json::array();
    for (const auto& a : s.solutions) sols.push_back(a.to_string());
    j = {{"n", s.n}, {"count", s.size()}, {"complete", s.complete}, {"solutions", sols}};
}

}  // namespace eok
