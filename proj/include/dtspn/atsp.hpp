#pragma once

#include <cstdint>
#include <vector>

#include "dtspn/gtsp.hpp"

namespace dtspn {

struct AtspTour {
    std::vector<int> order;
    double cost = 0.0;
};

double atsp_tour_cost(const AtspInstance& inst, const std::vector<int>& order);

/// Nearest-neighbor construction (weight ties broken by ascending node index)
/// improved with Or-opt segment moves (lengths 1-3) and orientation-preserving
/// 3-opt exchanges under don't-look bits. Multi-start; deterministic for a
/// fixed seed (best cost wins, ties by start index).
AtspTour solve_atsp(const AtspInstance& inst, std::uint64_t seed, double time_budget_s = 60.0,
                    int starts = 8);

/// Exact optimum by permutation enumeration with prefix-cost pruning.
/// Refuses instances larger than 12 nodes.
AtspTour brute_force_atsp(const AtspInstance& inst);

}  // namespace dtspn
