#include "dtspn/trajopt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dtspn/dubins.hpp"
#include "dtspn/errors.hpp"

namespace dtspn {

void TrajOptConfig::validate() const {
    if (segments < 1 || inner_iterations < 1 || outer_iterations < 1 ||
        substeps_per_segment < 1 || !(mu0 > 0.0) || !(mu_growth > 1.0) ||
        !(pos_tolerance > 0.0) || !(vel_tolerance > 0.0) || !(fd_step > 0.0))
        throw parameter_error("TrajOptConfig: all fields must be positive");
}

namespace {

constexpr double kMinDuration = 1e-2;  // s, lower bound on T

State shoot(const State& s0, std::span<const double> z, int segments, int substeps,
            const VehicleParams& p) {
    const double T = z[0];
    const double h = T / static_cast<double>(segments * substeps);
    State s = s0;
    for (int i = 0; i < segments; ++i) {
        const Control u{std::clamp(z[1 + 2 * i], -1.0, 1.0),
                        std::clamp(z[2 + 2 * i], -1.0, 1.0)};
        for (int k = 0; k < substeps; ++k) s = rk4_step(s, u, p, h);
    }
    return s;
}

struct TerminalErrors {
    double pos = 0.0;
    double vel = 0.0;
};

TerminalErrors terminal_errors(const State& achieved, const State& target) {
    TerminalErrors e;
    e.pos = distance(achieved.position(), target.position());
    e.vel = (achieved.velocity() - target.velocity()).norm();
    return e;
}

// Box-projected L-BFGS with monotone Armijo backtracking. Small and
// self-contained: the shooting problems here have ~41 variables.
class BoxLbfgs {
public:
    using Objective = std::function<double(std::span<const double>)>;

    BoxLbfgs(Objective f, std::vector<double> lo, std::vector<double> hi, double fd_step,
             int max_iters)
        : f_(std::move(f)), lo_(std::move(lo)), hi_(std::move(hi)), fd_step_(fd_step),
          max_iters_(max_iters) {}

    // Minimizes from x0 (projected into the box); returns the best point found.
    std::vector<double> minimize(std::vector<double> x, double* f_out) {
        const std::size_t n = x.size();
        project(x);
        double fx = f_(x);
        std::vector<double> g = gradient(x, fx);

        std::vector<std::vector<double>> s_mem, y_mem;
        std::vector<double> rho_mem;
        int stall = 0;

        for (int it = 0; it < max_iters_; ++it) {
            std::vector<double> d = direction(g, s_mem, y_mem, rho_mem);
            // Drop components pushing into an active bound.
            for (std::size_t i = 0; i < n; ++i) {
                if ((x[i] <= lo_[i] + 1e-15 && d[i] < 0.0) ||
                    (x[i] >= hi_[i] - 1e-15 && d[i] > 0.0))
                    d[i] = 0.0;
            }
            double gd = 0.0;
            for (std::size_t i = 0; i < n; ++i) gd += g[i] * d[i];
            if (gd > -1e-14) {
                for (std::size_t i = 0; i < n; ++i) {
                    d[i] = -g[i];
                    if ((x[i] <= lo_[i] + 1e-15 && d[i] < 0.0) ||
                        (x[i] >= hi_[i] - 1e-15 && d[i] > 0.0))
                        d[i] = 0.0;
                }
            }

            // Backtracking line search, accepting only strict improvements.
            double alpha = 1.0;
            std::vector<double> x_new(n);
            double f_new = fx;
            bool accepted = false;
            for (int ls = 0; ls < 30; ++ls) {
                for (std::size_t i = 0; i < n; ++i)
                    x_new[i] = std::clamp(x[i] + alpha * d[i], lo_[i], hi_[i]);
                double dir_deriv = 0.0;
                for (std::size_t i = 0; i < n; ++i) dir_deriv += g[i] * (x_new[i] - x[i]);
                f_new = f_(x_new);
                if (f_new <= fx + 1e-4 * dir_deriv && f_new < fx) {
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) break;

            std::vector<double> g_new = gradient(x_new, f_new);
            std::vector<double> s_vec(n), y_vec(n);
            double sy = 0.0, ss = 0.0, yy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s_vec[i] = x_new[i] - x[i];
                y_vec[i] = g_new[i] - g[i];
                sy += s_vec[i] * y_vec[i];
                ss += s_vec[i] * s_vec[i];
                yy += y_vec[i] * y_vec[i];
            }
            if (sy > 1e-12 * std::sqrt(ss * yy)) {
                s_mem.push_back(std::move(s_vec));
                y_mem.push_back(std::move(y_vec));
                rho_mem.push_back(1.0 / sy);
                if (s_mem.size() > kMemory) {
                    s_mem.erase(s_mem.begin());
                    y_mem.erase(y_mem.begin());
                    rho_mem.erase(rho_mem.begin());
                }
            }

            const double improvement = fx - f_new;
            x = x_new;
            fx = f_new;
            g = std::move(g_new);

            if (improvement < 1e-7 * std::max(1.0, std::fabs(fx))) {
                if (++stall >= 3) break;
            } else {
                stall = 0;
            }
            if (projected_grad_norm(x, g) < 1e-6) break;
        }
        if (f_out) *f_out = fx;
        return x;
    }

private:
    static constexpr std::size_t kMemory = 8;

    void project(std::vector<double>& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo_[i], hi_[i]);
    }

    double projected_grad_norm(const std::vector<double>& x, const std::vector<double>& g) const {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double step = std::clamp(x[i] - g[i], lo_[i], hi_[i]) - x[i];
            m = std::max(m, std::fabs(step));
        }
        return m;
    }

    std::vector<double> gradient(const std::vector<double>& x, double fx) {
        const std::size_t n = x.size();
        std::vector<double> g(n);
        std::vector<double> xp = x;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] + fd_step_ <= hi_[i]) {
                xp[i] = x[i] + fd_step_;
                g[i] = (f_(xp) - fx) / fd_step_;
            } else {
                xp[i] = x[i] - fd_step_;
                g[i] = (fx - f_(xp)) / fd_step_;
            }
            xp[i] = x[i];
        }
        return g;
    }

    static std::vector<double> direction(const std::vector<double>& g,
                                         const std::vector<std::vector<double>>& s_mem,
                                         const std::vector<std::vector<double>>& y_mem,
                                         const std::vector<double>& rho_mem) {
        const std::size_t n = g.size();
        std::vector<double> q(g.begin(), g.end());
        const int m = static_cast<int>(s_mem.size());
        std::vector<double> alpha(m);
        for (int k = m - 1; k >= 0; --k) {
            double sq = 0.0;
            for (std::size_t i = 0; i < n; ++i) sq += s_mem[k][i] * q[i];
            alpha[k] = rho_mem[k] * sq;
            for (std::size_t i = 0; i < n; ++i) q[i] -= alpha[k] * y_mem[k][i];
        }
        double gamma = 1.0;
        if (m > 0) {
            double sy = 0.0, yy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sy += s_mem[m - 1][i] * y_mem[m - 1][i];
                yy += y_mem[m - 1][i] * y_mem[m - 1][i];
            }
            if (yy > 0.0) gamma = sy / yy;
        }
        for (auto& qi : q) qi *= gamma;
        for (int k = 0; k < m; ++k) {
            double yq = 0.0;
            for (std::size_t i = 0; i < n; ++i) yq += y_mem[k][i] * q[i];
            const double beta = rho_mem[k] * yq;
            for (std::size_t i = 0; i < n; ++i) q[i] += (alpha[k] - beta) * s_mem[k][i];
        }
        for (auto& qi : q) qi = -qi;
        return q;
    }

    Objective f_;
    std::vector<double> lo_, hi_;
    double fd_step_;
    int max_iters_;
};

Trajectory build_trajectory(const State& s_from, const State& s_to,
                            const std::vector<double>& z, int segments, int substeps,
                            const VehicleParams& p) {
    Trajectory traj;
    const double T = z[0];
    const double seg_dt = T / static_cast<double>(segments);
    const double h = seg_dt / static_cast<double>(substeps);

    traj.t0 = 0.0;
    traj.tf = T;
    traj.cost = T;
    traj.states.reserve(static_cast<std::size_t>(segments) + 1);
    traj.controls.reserve(static_cast<std::size_t>(segments));

    State s = s_from;
    traj.states.push_back({0.0, s});
    for (int i = 0; i < segments; ++i) {
        const Control u{std::clamp(z[1 + 2 * i], -1.0, 1.0),
                        std::clamp(z[2 + 2 * i], -1.0, 1.0)};
        for (int k = 0; k < substeps; ++k) s = rk4_step(s, u, p, h);
        traj.controls.push_back({u, seg_dt});
        traj.states.push_back({seg_dt * (i + 1), s});
    }
    const TerminalErrors err = terminal_errors(s, s_to);
    traj.terminal_pos_error = err.pos;
    traj.terminal_vel_error = err.vel;
    return traj;
}

std::optional<Trajectory> solve_with_segments(const State& s_from, const State& s_to,
                                              const VehicleParams& p, const TrajOptConfig& cfg,
                                              int segments, const ControlGuess& guess) {
    const int n = 1 + 2 * segments;
    std::vector<double> z(n);
    z[0] = std::max(guess.duration, kMinDuration);
    for (int i = 0; i < segments; ++i) {
        z[1 + 2 * i] = std::clamp(guess.controls[i].u1, -1.0, 1.0);
        z[2 + 2 * i] = std::clamp(guess.controls[i].u2, -1.0, 1.0);
    }

    std::vector<double> lo(n, -1.0), hi(n, 1.0);
    lo[0] = kMinDuration;
    hi[0] = std::max(5.0 * z[0], z[0] + 30.0);

    double mu = cfg.mu0;
    for (int outer = 0; outer < cfg.outer_iterations; ++outer) {
        auto objective = [&](std::span<const double> zz) {
            const State end = shoot(s_from, zz, segments, cfg.substeps_per_segment, p);
            const TerminalErrors err = terminal_errors(end, s_to);
            return zz[0] + mu * (err.pos * err.pos + err.vel * err.vel);
        };
        BoxLbfgs solver(objective, lo, hi, cfg.fd_step, cfg.inner_iterations);
        z = solver.minimize(std::move(z), nullptr);

        const State end = shoot(s_from, z, segments, cfg.substeps_per_segment, p);
        const TerminalErrors err = terminal_errors(end, s_to);
        if (err.pos <= cfg.pos_tolerance && err.vel <= cfg.vel_tolerance)
            return build_trajectory(s_from, s_to, z, segments, cfg.substeps_per_segment, p);
        mu *= cfg.mu_growth;
    }
    return std::nullopt;
}

}  // namespace

std::vector<TimedState> resample_trajectory(const Trajectory& traj, const VehicleParams& p,
                                            double dt) {
    if (traj.states.empty()) throw parameter_error("resample_trajectory: empty trajectory");
    return integrate(traj.states.front().state, traj.controls, p, dt);
}

ControlGuess initial_guess(const State& s_from, const State& s_to, const VehicleParams& p,
                           int segments) {
    const double v_avg = 0.5 * (s_from.v + s_to.v);
    const double radius = v_avg * v_avg / p.c2;
    const Pose q0{s_from.x, s_from.y, s_from.theta};
    const Pose q1{s_to.x, s_to.y, s_to.theta};
    const DubinsPath path = shortest_dubins(q0, q1, radius);
    const double length = path.length();

    ControlGuess guess;
    guess.duration = std::max(length / v_avg, 0.1);
    guess.controls.resize(static_cast<std::size_t>(segments));

    const double u1 = std::clamp((s_to.v - s_from.v) / (p.c1 * guess.duration), -1.0, 1.0);
    static constexpr const char* kWords[6] = {"LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
    const char* word = kWords[static_cast<int>(path.word)];

    for (int i = 0; i < segments; ++i) {
        // Steering of the Dubins segment active at this control segment's midpoint.
        const double s_mid = length * (i + 0.5) / segments;
        double acc = 0.0;
        char kind = 'S';
        for (int j = 0; j < 3; ++j) {
            acc += path.segment_lengths[j];
            if (s_mid <= acc || j == 2) {
                kind = word[j];
                break;
            }
        }
        double u2 = 0.0;
        if (kind == 'L') u2 = 1.0;
        else if (kind == 'R') u2 = -1.0;
        guess.controls[static_cast<std::size_t>(i)] = {u1, u2};
    }
    return guess;
}

double shooting_objective(const State& s_from, const State& s_to, const VehicleParams& p,
                          const TrajOptConfig& cfg, std::span<const double> z, double mu) {
    const int segments = static_cast<int>((z.size() - 1) / 2);
    const State end = shoot(s_from, z, segments, cfg.substeps_per_segment, p);
    const TerminalErrors err = terminal_errors(end, s_to);
    return z[0] + mu * (err.pos * err.pos + err.vel * err.vel);
}

std::optional<Trajectory> min_time_path(const State& s_from, const State& s_to,
                                        const VehicleParams& p, const TrajOptConfig& cfg,
                                        const ControlGuess* warm_start) {
    cfg.validate();
    p.validate();

    ControlGuess guess;
    if (warm_start && static_cast<int>(warm_start->controls.size()) == cfg.segments) {
        guess = *warm_start;
    } else {
        guess = initial_guess(s_from, s_to, p, cfg.segments);
    }

    if (auto traj = solve_with_segments(s_from, s_to, p, cfg, cfg.segments, guess)) return traj;

    // Warm starts come from nearby problems; when one fails, fall back to the
    // Dubins guess before giving up.
    if (warm_start) {
        guess = initial_guess(s_from, s_to, p, cfg.segments);
        if (auto traj = solve_with_segments(s_from, s_to, p, cfg, cfg.segments, guess))
            return traj;
    }

    if (cfg.retry_double_segments) {
        const int doubled = cfg.segments * 2;
        ControlGuess fine;
        fine.duration = guess.duration;
        fine.controls.resize(static_cast<std::size_t>(doubled));
        for (int i = 0; i < doubled; ++i)
            fine.controls[static_cast<std::size_t>(i)] = guess.controls[i / 2];
        if (auto traj = solve_with_segments(s_from, s_to, p, cfg, doubled, fine)) return traj;
    }
    return std::nullopt;
}

namespace {

struct ThroughEval {
    bool ok = false;
    double total = std::numeric_limits<double>::infinity();
    Trajectory leg1, leg2;
};

ThroughEval eval_through(const State& s_prev, const State& mid, const State& s_next,
                         const VehicleParams& p, const TrajOptConfig& cfg,
                         const ControlGuess* warm1, const ControlGuess* warm2) {
    ThroughEval ev;
    auto leg1 = min_time_path(s_prev, mid, p, cfg, warm1);
    if (!leg1) return ev;
    auto leg2 = min_time_path(mid, s_next, p, cfg, warm2);
    if (!leg2) return ev;
    ev.ok = true;
    ev.leg1 = std::move(*leg1);
    ev.leg2 = std::move(*leg2);
    ev.total = ev.leg1.cost + ev.leg2.cost;
    return ev;
}

ControlGuess guess_of(const Trajectory& traj) {
    ControlGuess g;
    g.duration = traj.cost;
    g.controls.reserve(traj.controls.size());
    for (const auto& seg : traj.controls) g.controls.push_back(seg.u);
    return g;
}

Trajectory concatenate(const Trajectory& a, const Trajectory& b) {
    Trajectory out = a;
    out.tf = a.tf + b.cost;
    out.cost = a.cost + b.cost;
    for (std::size_t i = 1; i < b.states.size(); ++i)
        out.states.push_back({a.tf + b.states[i].t, b.states[i].state});
    out.controls.insert(out.controls.end(), b.controls.begin(), b.controls.end());
    out.terminal_pos_error = b.terminal_pos_error;
    out.terminal_vel_error = b.terminal_vel_error;
    return out;
}

}  // namespace

std::optional<ThroughResult> min_time_through(const State& s_prev, const Task& mid_task,
                                              const State& s_next, const State& seed_mid,
                                              const VehicleParams& p, const TrajOptConfig& cfg) {
    const Vec2 rel = seed_mid.position() - mid_task.center;
    const double seed_rho = std::min(rel.norm(), mid_task.radius);
    const double seed_phi = (rel.norm() > 1e-12) ? std::atan2(rel.y, rel.x) : 0.0;

    // Coordinates: rho in [0, R], phi, heading, speed.
    std::array<double, 4> coord{seed_rho, seed_phi, seed_mid.theta,
                                std::clamp(seed_mid.v, p.v_min, p.v_max)};

    auto make_state = [&](const std::array<double, 4>& c) {
        State s;
        s.x = mid_task.center.x + c[0] * std::cos(c[1]);
        s.y = mid_task.center.y + c[0] * std::sin(c[1]);
        s.theta = wrap_angle(c[2]);
        s.v = std::clamp(c[3], p.v_min, p.v_max);
        return s;
    };

    ThroughEval best = eval_through(s_prev, make_state(coord), s_next, p, cfg, nullptr, nullptr);
    if (!best.ok) return std::nullopt;
    const double seed_total = best.total;
    std::array<double, 4> best_coord = coord;

    ControlGuess warm1 = guess_of(best.leg1);
    ControlGuess warm2 = guess_of(best.leg2);

    auto evaluate = [&](const std::array<double, 4>& c) {
        ThroughEval ev = eval_through(s_prev, make_state(c), s_next, p, cfg, &warm1, &warm2);
        if (ev.ok && ev.total < best.total) {
            best = ev;
            best_coord = c;
            warm1 = guess_of(best.leg1);
            warm2 = guess_of(best.leg2);
        }
        return ev.ok ? ev.total : std::numeric_limits<double>::infinity();
    };

    const double pi = std::numbers::pi;
    const std::array<double, 4> lo{0.0, seed_phi - pi, seed_mid.theta - pi, p.v_min};
    const std::array<double, 4> hi{mid_task.radius, seed_phi + pi, seed_mid.theta + pi, p.v_max};
    const std::array<double, 4> tol{1e-2 * std::max(mid_task.radius, 1e-3), 0.02, 0.02, 1e-3};

    constexpr double kGolden = 0.6180339887498949;
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (int c = 0; c < 4; ++c) {
            double a = lo[c], b = hi[c];
            std::array<double, 4> probe = best_coord;
            double x1 = b - kGolden * (b - a);
            double x2 = a + kGolden * (b - a);
            probe[c] = x1;
            double f1 = evaluate(probe);
            probe[c] = x2;
            double f2 = evaluate(probe);
            for (int it = 0; it < 10 && (b - a) > tol[c]; ++it) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - kGolden * (b - a);
                    probe[c] = x1;
                    f1 = evaluate(probe);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + kGolden * (b - a);
                    probe[c] = x2;
                    f2 = evaluate(probe);
                }
            }
        }
    }

    (void)seed_total;  // best.total <= seed_total by construction
    ThroughResult result;
    result.mid = make_state(best_coord);
    result.trajectory = concatenate(best.leg1, best.leg2);
    result.first_leg = std::move(best.leg1);
    result.second_leg = std::move(best.leg2);
    result.total_time = best.total;
    return result;
}

}  // namespace dtspn
