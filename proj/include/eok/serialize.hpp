#pragma once

#include <json.hpp>

#include "eok/geometry.hpp"
#include "eok/graphs.hpp"
#include "eok/solver.hpp"

namespace eok {

void to_json(nlohmann::json& j, const Overlap& o);
void to_json(nlohmann::json& j, const OverlapStats& s);
void to_json(nlohmann::json& j, const ClusterReport& r);
void to_json(nlohmann::json& j, const HoleRecord& h);
void to_json(nlohmann::json& j, const CoverCheck& c);
void to_json(nlohmann::json& j, const VariablePartition& p);
void to_json(nlohmann::json& j, const LabeledEdge& e);
void to_json(nlohmann::json& j, const LabeledGraph& g);
void to_json(nlohmann::json& j, const HPathResult& r);
void to_json(nlohmann::json& j, const SolutionSet& s);

}  // namespace eok
