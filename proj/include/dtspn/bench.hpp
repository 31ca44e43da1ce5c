#pragma once

#include "dtspn/planner.hpp"

namespace dtspn {

struct BenchStats {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};

/// One row per (n, m, roadmap mode): the five flight-time configurations of
/// the benchmark layout, plus roadmap construction time and edge counts.
struct BenchRow {
    int n = 0;
    int m = 0;
    RoadmapMode mode = RoadmapMode::Complete;
    BenchStats roadmap_seconds;
    BenchStats solved_edges;
    BenchStats flight_none;          // no intersection handling, unrefined
    BenchStats flight_plain_before;  // plain intersections, before refinement
    BenchStats flight_plain_after;
    BenchStats flight_nin_before;    // necessarily intersecting neighborhoods
    BenchStats flight_nin_after;
    int failures = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    int seeds = 0;
    std::uint64_t base_seed = 0;
};

struct BenchOptions {
    std::vector<std::pair<int, int>> sizes;  // (n, m)
    int seeds = 10;
    std::uint64_t base_seed = 1;
    std::vector<RoadmapMode> modes{RoadmapMode::Complete, RoadmapMode::Reduced};
    double radius = 1.0;
    double area = 10.0;
    PlanConfig base_config;
};

/// Runs every (instance x configuration) cell, sharing each instance's roadmap
/// across the NIN configurations. Cell failures are recorded, not fatal.
BenchReport bench(const BenchOptions& opts);

std::string bench_csv(const BenchReport& report);
std::string bench_markdown(const BenchReport& report);

}  // namespace dtspn
