#pragma once

#include <vector>

#include "dtspn/trajopt.hpp"

namespace dtspn {

enum class RoadmapMode { Complete, Reduced };

struct RoadmapEdge {
    int from_id = 0;
    int to_id = 0;
    double cost = 0.0;  // flight time, s
    Trajectory trajectory;
};

struct RoadmapDiagnostics {
    std::size_t candidate_pairs = 0;
    std::size_t pruned_pairs = 0;
    std::size_t failed_solves = 0;
    std::size_t solved_edges = 0;
};

struct Roadmap {
    std::vector<StateSample> samples;
    std::vector<RoadmapEdge> edges;  // sorted by (from_id, to_id)
    RoadmapMode mode = RoadmapMode::Reduced;
    RoadmapDiagnostics diagnostics;

    /// Edge index lookup; -1 when absent.
    int find_edge(int from_id, int to_id) const;
};

/// Devious-pair test: Dubins length at the minimum turning radius (at v_min)
/// against the straight-line distance. Prune iff length > factor * distance
/// (strict). Coincident positions are kept.
bool prune_test(const StateSample& a, const StateSample& b, const VehicleParams& p,
                double factor = 2.0);

struct RoadmapConfig {
    RoadmapMode mode = RoadmapMode::Reduced;
    double prune_factor = 2.0;
    TrajOptConfig trajopt;
    unsigned threads = 0;  // 0 = hardware concurrency
};

/// Two-way minimum-time edges over all sample pairs from distinct tasks.
/// Edge solves run in parallel into pre-assigned slots; the result is
/// schedule-independent. Throws infeasible_roadmap_error when a task ends up
/// with no incident edge.
Roadmap build_roadmap(const std::vector<StateSample>& samples, const VehicleParams& p,
                      const RoadmapConfig& cfg);

}  // namespace dtspn
