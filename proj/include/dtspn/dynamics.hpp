#pragma once

#include <vector>

#include "dtspn/util.hpp"

namespace dtspn {

/// Vehicle constants. Units are km, s, km/s, km/s^2 throughout.
struct VehicleParams {
    double v_min = 0.25;        // km/s
    double v_max = 0.46;        // km/s
    double c1 = 0.1;            // km/s^2, thrust scaling
    double g = 0.0098;          // km/s^2
    double n_load_max = 4.0;    // load factor bound
    double c2 = 0.0379552367928327;  // km/s^2, equals g*sqrt(n_load_max^2-1) for the defaults

    /// Builds params with c2 derived from the coordinated-turn load factor bound.
    static VehicleParams from_load_factor(double v_min, double v_max, double c1,
                                          double n_load_max, double g = 0.0098);

    /// Throws parameter_error unless 0 < v_min < v_max, c1 > 0, c2 > 0.
    void validate() const;
};

/// Planar vehicle state. theta is kept in [-pi, pi).
struct State {
    double x = 0.0;      // km
    double y = 0.0;      // km
    double v = 0.0;      // km/s
    double theta = 0.0;  // rad

    Vec2 position() const { return {x, y}; }
    Vec2 velocity() const { return {v * std::cos(theta), v * std::sin(theta)}; }
};

struct Control {
    double u1 = 0.0;  // normalized thrust, [-1, 1]
    double u2 = 0.0;  // normalized steering, [-1, 1]
};

struct StateDerivative {
    double dx = 0.0;
    double dy = 0.0;
    double dv = 0.0;
    double dtheta = 0.0;
};

struct ControlSegment {
    Control u;
    double duration = 0.0;  // s
};

struct TimedState {
    double t = 0.0;  // s
    State state;
};

/// Right-hand side of the variable-speed Dubins model:
/// (v cos(theta), v sin(theta), c1*u1, (c2/v)*u2).
StateDerivative derivatives(const State& s, const Control& u, const VehicleParams& p);

/// One RK4 step of duration h under constant control, with speed saturated
/// at the bounds (dv contributions past a bound are zeroed, and v is clamped
/// after the step). Every consumer integrates through this so the saturation
/// rule is applied uniformly.
State rk4_step(const State& s, const Control& u, const VehicleParams& p, double h);

/// Fixed-step RK4 trace of a piecewise-constant control schedule. The trace
/// contains both endpoints; each segment lands exactly on its boundary via a
/// final partial step.
std::vector<TimedState> integrate(const State& s0, const std::vector<ControlSegment>& schedule,
                                  const VehicleParams& p, double dt);

/// Instantaneous radius at full steering: v^2 / c2.
double turn_radius(double v, const VehicleParams& p);

}  // namespace dtspn
