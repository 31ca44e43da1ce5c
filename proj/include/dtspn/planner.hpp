#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtspn/atsp.hpp"
#include "dtspn/gtsp.hpp"
#include "dtspn/tour.hpp"

namespace dtspn {

struct Instance {
    std::vector<Task> tasks;
    double area_w = 10.0;  // km
    double area_h = 10.0;  // km
    VehicleParams vehicle;
    std::uint64_t seed = 0;
};

/// Uniform task centers in the area from the pinned xoshiro256** generator;
/// fixed neighborhood radius. Identical seeds give identical instances.
Instance generate_instance(int n, double area_w, double area_h, double radius,
                           std::uint64_t seed, const VehicleParams& vehicle = VehicleParams{});

enum class NinMode { None, Plain, Necessary };

std::string to_string(NinMode mode);
std::string to_string(RoadmapMode mode);

struct PlanConfig {
    int m = 10;
    RoadmapMode roadmap_mode = RoadmapMode::Reduced;
    NinMode nin_mode = NinMode::Necessary;
    bool refine = true;
    double prune_factor = 2.0;
    TrajOptConfig trajopt;
    double dt = 0.05;  // s, trace resolution
    std::uint64_t atsp_seed = 1;
    double atsp_time_budget_s = 60.0;
    int atsp_starts = 8;
    int refine_max_passes = 4;
    double refine_threshold_s = 0.1;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct StageTiming {
    std::string name;
    double seconds = 0.0;
};

struct Solution {
    Instance instance;
    PlanConfig config;
    std::vector<int> waypoints;          // first-visited sample ids, tour order
    std::vector<VisitEntry> visits;      // per group, including concomitant coverage
    Tour tour;                           // final (refined when enabled)
    double total_before_refine = 0.0;
    RefineReport refine_report;
    RoadmapDiagnostics roadmap_stats;
    int atsp_nodes = 0;
    double atsp_cost = 0.0;
    double big_m = 0.0;
    std::vector<StageTiming> timings;
};

/// Full pipeline: sampling, roadmap, NIN detection, Noon-Bean transformation,
/// ATSP heuristic, interpretation, assembly, re-partition, refinement.
Solution plan(const Instance& instance, const PlanConfig& config);

/// Pipeline from an existing roadmap (shared across NIN modes by the bench
/// harness and by the TSPLIB import path).
Solution plan_with_roadmap(const Instance& instance, const PlanConfig& config,
                           const Roadmap& roadmap);

/// NIN lists for the configured mode (empty map for NinMode::None).
NinMap nin_map_for_mode(const std::vector<StateSample>& samples, const std::vector<Task>& tasks,
                        const VehicleParams& p, NinMode mode);

}  // namespace dtspn
