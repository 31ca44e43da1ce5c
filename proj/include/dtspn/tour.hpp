#pragma once

#include <vector>

#include "dtspn/roadmap.hpp"

namespace dtspn {

/// Closed trajectory through the first-visited waypoint samples, one leg per
/// consecutive pair (wrapping).
struct AssembledTour {
    std::vector<int> waypoint_sample_ids;
    std::vector<Trajectory> legs;
    double total_time = 0.0;
};

struct TourEntry {
    State state;
    int task_id = -1;
    double t = 0.0;  // encounter time along the tour, s
};

/// A tour re-partitioned by entering points: exactly n entering states, leg i
/// runs from entering state i to i+1 (mod n).
struct Tour {
    std::vector<TourEntry> entering;
    std::vector<Trajectory> legs;
    double total_time = 0.0;
};

/// Concatenates roadmap edge trajectories along the waypoint order, closing
/// the cycle. Missing (pruned) edges are solved on demand; an unsolvable pair
/// raises planning_error.
AssembledTour assemble(const Roadmap& roadmap, const std::vector<int>& waypoints,
                       const VehicleParams& p, const TrajOptConfig& cfg);

/// Walks the tour trace from its start and creates an entering state at the
/// first crossing into each not-yet-encountered disk (bisected to the boundary
/// within 1e-6 km). Throws coverage_error if some disk is never entered.
Tour repartition(const AssembledTour& assembled, const std::vector<Task>& tasks,
                 const VehicleParams& p, double dt);

struct RefineReport {
    std::vector<double> pass_totals;  // total_time after each even+odd pass
    int accepted_moves = 0;
    int passes_run = 0;
};

/// Alternating even/odd refinement of entering states via min_time_through,
/// keeping the visit order. Moves are accepted only when they strictly reduce
/// the two adjacent legs' time, so total_time never increases.
Tour refine(const Tour& tour, const std::vector<Task>& tasks, const VehicleParams& p,
            const TrajOptConfig& cfg, int max_passes = 4, double improve_threshold_s = 0.1,
            RefineReport* report = nullptr);

}  // namespace dtspn
