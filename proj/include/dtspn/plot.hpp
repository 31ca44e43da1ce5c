#pragma once

#include <string>

#include "dtspn/planner.hpp"

namespace dtspn {

/// Deterministic SVG of a solution: task disks, entering states, and the tour
/// trace. Sections faster than (v_min+v_max)/2 are solid, slower ones dashed.
std::string plot_svg(const Solution& solution);

/// Same rendering from an already-resampled trace (the `plot` subcommand path,
/// where only the serialized trace is available).
std::string plot_svg_from_trace(const Solution& solution, const std::vector<TimedState>& trace);

/// Renders a serialized solution (the JSON written by `plan`) without
/// re-running any planning.
std::string plot_svg_from_json(const std::string& solution_json);

}  // namespace dtspn
