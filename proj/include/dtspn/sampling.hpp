#pragma once

#include <vector>

#include "dtspn/dynamics.hpp"

namespace dtspn {

/// A task site with a disk neighborhood.
struct Task {
    int id = 0;
    Vec2 center;
    double radius = 1.0;  // km
};

/// An entering state on a task's neighborhood boundary.
struct StateSample {
    int id = 0;       // global sample index
    int task_id = 0;  // owning task
    State state;
};

/// Radical-inverse Halton value for index >= 1 and prime base >= 2.
double halton(int index, int base);

/// m boundary entering-state samples per task, from a 3-dimensional Halton set
/// (bases 2, 3, 5) mapped to boundary angle, entering heading, and speed.
/// Sample j of task i (by list position) uses Halton index 1 + i*m + j.
std::vector<StateSample> sample_states(const std::vector<Task>& tasks, int m,
                                       const VehicleParams& p);

/// Heading margin keeping sampled headings strictly entering (rad).
inline constexpr double kEnteringMargin = 0.05;

}  // namespace dtspn
