#pragma once

#include <string>

#include <json.hpp>

#include "dtspn/planner.hpp"

namespace dtspn {

using json = nlohmann::json;

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json config_to_json(const PlanConfig& cfg);
PlanConfig config_from_json(const json& j);

/// Roadmap serialization. Edge trajectories are stored as control schedules
/// (knot states are rebuilt by integration on load); with
/// include_trajectories=false only costs are kept.
json roadmap_to_json(const Roadmap& rm, bool include_trajectories = true);
Roadmap roadmap_from_json(const json& j, const VehicleParams& p);

/// Metadata sidecar for a TSPLIB export: matrix index -> node kind, origin
/// sample, group, cycle position, plus M and the weight scale.
json atsp_meta_to_json(const AtspInstance& inst);

/// Rebuilds interpretation metadata from a sidecar (weights stay empty; only
/// the fields interpret_atsp_tour needs are restored).
AtspInstance atsp_meta_from_json(const json& j);

json solution_to_json(const Solution& sol);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dtspn
