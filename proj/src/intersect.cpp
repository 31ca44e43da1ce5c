#include "dtspn/intersect.hpp"

#include <algorithm>
#include <cmath>

namespace dtspn {

SteeredCircles steered_circles(const State& s, const VehicleParams& p) {
    SteeredCircles c;
    c.r_min = p.v_min * p.v_min / p.c2;
    const Vec2 pos = s.position();
    const Vec2 left_normal{-std::sin(s.theta), std::cos(s.theta)};
    c.left_center = pos + left_normal * c.r_min;
    c.right_center = pos - left_normal * c.r_min;
    return c;
}

std::vector<int> necessarily_intersecting(const StateSample& s, const std::vector<Task>& tasks,
                                          const VehicleParams& p) {
    const SteeredCircles c = steered_circles(s.state, p);
    std::vector<int> out;
    for (const Task& task : tasks) {
        if (task.id == s.task_id) continue;
        const double dl = distance(task.center, c.left_center);
        const double dr = distance(task.center, c.right_center);
        if (std::fabs(dl - c.r_min) <= task.radius && std::fabs(dr - c.r_min) <= task.radius)
            out.push_back(task.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NinMap build_nin_map(const std::vector<StateSample>& samples, const std::vector<Task>& tasks,
                     const VehicleParams& p) {
    NinMap nin;
    for (const auto& s : samples) {
        auto list = necessarily_intersecting(s, tasks, p);
        if (!list.empty()) nin[s.id] = std::move(list);
    }
    return nin;
}

NinMap build_plain_intersection_map(const std::vector<StateSample>& samples,
                                    const std::vector<Task>& tasks) {
    NinMap nin;
    for (const auto& s : samples) {
        std::vector<int> list;
        for (const Task& task : tasks) {
            if (task.id == s.task_id) continue;
            if (distance(task.center, s.state.position()) <= task.radius) list.push_back(task.id);
        }
        std::sort(list.begin(), list.end());
        if (!list.empty()) nin[s.id] = std::move(list);
    }
    return nin;
}

}  // namespace dtspn
