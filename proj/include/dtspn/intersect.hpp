#pragma once

#include <map>
#include <vector>

#include "dtspn/sampling.hpp"

namespace dtspn {

/// Per-sample list of necessarily intersecting task ids, ascending, own task
/// excluded.
using NinMap = std::map<int, std::vector<int>>;

struct SteeredCircles {
    Vec2 left_center;
    Vec2 right_center;
    double r_min = 0.0;  // km
};

/// Minimum-radius circles at the slowest speed, tangent to the sample's
/// heading on either side (left = heading rotated +pi/2).
SteeredCircles steered_circles(const State& s, const VehicleParams& p);

/// Tasks whose disks intersect BOTH steered circles as curves:
/// | dist(task center, circle center) - r_min | <= task radius for each side.
std::vector<int> necessarily_intersecting(const StateSample& s, const std::vector<Task>& tasks,
                                          const VehicleParams& p);

/// NIN lists for every sample.
NinMap build_nin_map(const std::vector<StateSample>& samples, const std::vector<Task>& tasks,
                     const VehicleParams& p);

/// Plain intersections in the sense of sample containment: tasks whose disks
/// contain the sample position.
NinMap build_plain_intersection_map(const std::vector<StateSample>& samples,
                                    const std::vector<Task>& tasks);

}  // namespace dtspn
