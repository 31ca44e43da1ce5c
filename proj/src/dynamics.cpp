#include "dtspn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "dtspn/errors.hpp"

namespace dtspn {

VehicleParams VehicleParams::from_load_factor(double v_min, double v_max, double c1,
                                              double n_load_max, double g) {
    VehicleParams p;
    p.v_min = v_min;
    p.v_max = v_max;
    p.c1 = c1;
    p.g = g;
    p.n_load_max = n_load_max;
    p.c2 = g * std::sqrt(n_load_max * n_load_max - 1.0);
    p.validate();
    return p;
}

void VehicleParams::validate() const {
    if (!(v_min > 0.0) || !(v_min < v_max))
        throw parameter_error("VehicleParams: require 0 < v_min < v_max");
    if (!(c1 > 0.0) || !(c2 > 0.0))
        throw parameter_error("VehicleParams: require c1 > 0 and c2 > 0");
}

StateDerivative derivatives(const State& s, const Control& u, const VehicleParams& p) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.v) ||
        !std::isfinite(s.theta) || !std::isfinite(u.u1) || !std::isfinite(u.u2))
        throw invalid_state_error("derivatives: non-finite state or control");
    StateDerivative d;
    d.dx = s.v * std::cos(s.theta);
    d.dy = s.v * std::sin(s.theta);
    d.dv = p.c1 * u.u1;
    d.dtheta = (p.c2 / s.v) * u.u2;
    return d;
}

namespace {

// Derivative with the speed channel saturated at the bounds.
StateDerivative saturated_rhs(const State& s, const Control& u, const VehicleParams& p) {
    StateDerivative d = derivatives(s, u, p);
    if ((s.v >= p.v_max && d.dv > 0.0) || (s.v <= p.v_min && d.dv < 0.0)) d.dv = 0.0;
    return d;
}

State advance(const State& s, const StateDerivative& d, double h, const VehicleParams& p) {
    State n;
    n.x = s.x + h * d.dx;
    n.y = s.y + h * d.dy;
    n.v = std::clamp(s.v + h * d.dv, p.v_min, p.v_max);
    n.theta = s.theta + h * d.dtheta;
    return n;
}

}  // namespace

State rk4_step(const State& s, const Control& u, const VehicleParams& p, double h) {
    const StateDerivative k1 = saturated_rhs(s, u, p);
    const StateDerivative k2 = saturated_rhs(advance(s, k1, 0.5 * h, p), u, p);
    const StateDerivative k3 = saturated_rhs(advance(s, k2, 0.5 * h, p), u, p);
    const StateDerivative k4 = saturated_rhs(advance(s, k3, h, p), u, p);

    State n;
    n.x = s.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    n.y = s.y + (h / 6.0) * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
    n.v = std::clamp(s.v + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv),
                     p.v_min, p.v_max);
    n.theta = wrap_angle(s.theta + (h / 6.0) * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta +
                                                k4.dtheta));
    return n;
}

std::vector<TimedState> integrate(const State& s0, const std::vector<ControlSegment>& schedule,
                                  const VehicleParams& p, double dt) {
    if (!(dt > 0.0)) throw parameter_error("integrate: dt must be positive");
    double total = 0.0;
    for (const auto& seg : schedule) total += seg.duration;
    if (!(total > 0.0)) throw parameter_error("integrate: total duration must be positive");

    std::vector<TimedState> trace;
    trace.reserve(static_cast<std::size_t>(total / dt) + schedule.size() + 2);

    State s = s0;
    s.v = std::clamp(s.v, p.v_min, p.v_max);
    s.theta = wrap_angle(s.theta);
    double t = 0.0;
    trace.push_back({t, s});

    for (const auto& seg : schedule) {
        double remaining = seg.duration;
        while (remaining > 1e-12) {
            const double h = std::min(dt, remaining);
            s = rk4_step(s, seg.u, p, h);
            remaining -= h;
            t += h;
            trace.push_back({t, s});
        }
    }
    return trace;
}

double turn_radius(double v, const VehicleParams& p) {
    if (!(v > 0.0)) throw parameter_error("turn_radius: v must be positive");
    return v * v / p.c2;
}

}  // namespace dtspn
