#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dtspn/dynamics.hpp"
#include "dtspn/sampling.hpp"

namespace dtspn {

struct TrajOptConfig {
    int segments = 20;              // H control segments
    double mu0 = 10.0;              // initial penalty weight
    double mu_growth = 10.0;        // outer-loop escalation factor
    int outer_iterations = 5;
    int inner_iterations = 200;     // cap per inner solve
    double pos_tolerance = 1e-3;    // km
    double vel_tolerance = 1e-3;    // km/s
    double fd_step = 1e-6;          // finite-difference step
    int substeps_per_segment = 6;   // RK4 steps per control segment
    bool retry_double_segments = true;

    void validate() const;
};

/// A minimum-time trajectory between two states. States are the knots at
/// control-segment boundaries; finer traces come from re-integrating the
/// schedule (see resample_trajectory).
struct Trajectory {
    double t0 = 0.0;
    double tf = 0.0;
    std::vector<TimedState> states;
    std::vector<ControlSegment> controls;
    double cost = 0.0;  // flight time tf - t0, s
    double terminal_pos_error = 0.0;
    double terminal_vel_error = 0.0;
};

/// Re-integrates a trajectory's control schedule at fixed dt from its first state.
std::vector<TimedState> resample_trajectory(const Trajectory& traj, const VehicleParams& p,
                                            double dt);

struct ControlGuess {
    std::vector<Control> controls;  // one per segment
    double duration = 0.0;          // s
};

/// Dubins-based warm start: minimum Dubins path at the turning radius of the
/// average speed, bang-bang steering resampled onto the segment grid, and a
/// constant thrust ramping v_from to v_to.
ControlGuess initial_guess(const State& s_from, const State& s_to, const VehicleParams& p,
                           int segments = 20);

/// Penalty-form shooting objective: T + mu*(|terminal position error|^2 +
/// |terminal velocity-vector error|^2). z = [T, u1_0, u2_0, ..., u1_{H-1}, u2_{H-1}].
/// Exposed for gradient checks.
double shooting_objective(const State& s_from, const State& s_to, const VehicleParams& p,
                          const TrajOptConfig& cfg, std::span<const double> z, double mu);

/// Direct single-shooting minimum-time solve. Success requires both terminal
/// tolerances; on failure (after penalty escalation and the optional
/// segment-doubling retry) returns nullopt.
std::optional<Trajectory> min_time_path(const State& s_from, const State& s_to,
                                        const VehicleParams& p, const TrajOptConfig& cfg,
                                        const ControlGuess* warm_start = nullptr);

struct ThroughResult {
    State mid;
    Trajectory trajectory;  // concatenation of both legs
    Trajectory first_leg;
    Trajectory second_leg;
    double total_time = 0.0;
};

/// Min-time path from s_prev to s_next through the neighborhood of mid_task.
/// The crossing state is optimized over the closed disk (polar position,
/// heading, speed) by cyclic coordinate search with golden-section line steps.
/// Never returns a result worse than the seed evaluation.
std::optional<ThroughResult> min_time_through(const State& s_prev, const Task& mid_task,
                                              const State& s_next, const State& seed_mid,
                                              const VehicleParams& p, const TrajOptConfig& cfg);

}  // namespace dtspn
