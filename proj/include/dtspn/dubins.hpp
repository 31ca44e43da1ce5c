#pragma once

#include <array>
#include <string>
#include <vector>

#include "dtspn/util.hpp"

namespace dtspn {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Vec2 position() const { return {x, y}; }
};

enum class DubinsWord { LSL, RSR, LSR, RSL, RLR, LRL };

std::string to_string(DubinsWord w);

/// A fixed-radius Dubins path. Segment lengths are stored in km (arc angles
/// times the radius for turning segments).
struct DubinsPath {
    DubinsWord word = DubinsWord::LSL;
    std::array<double, 3> segment_lengths{0.0, 0.0, 0.0};  // km
    double radius = 1.0;                                   // km
    Pose q0;
    Pose q1;

    double length() const {
        return segment_lengths[0] + segment_lengths[1] + segment_lengths[2];
    }
};

/// Shortest path over all six words; ties broken by word order
/// LSL < RSR < LSR < RSL < RLR < LRL. Coincident poses yield a zero-length path.
DubinsPath shortest_dubins(const Pose& q0, const Pose& q1, double r);

double dubins_length(const DubinsPath& path);

/// Pose after traveling arc length s (km) along the path from q0.
Pose dubins_pose_at(const DubinsPath& path, double s);

/// k poses equally spaced by arc length, both endpoints included. Each pose is
/// paired with its arc-length parameter.
std::vector<std::pair<double, Pose>> sample_dubins(const DubinsPath& path, int k);

}  // namespace dtspn
