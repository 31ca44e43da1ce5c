#include "dtspn/tour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dtspn/errors.hpp"

namespace dtspn {

AssembledTour assemble(const Roadmap& roadmap, const std::vector<int>& waypoints,
                       const VehicleParams& p, const TrajOptConfig& cfg) {
    if (waypoints.size() < 2) throw planning_error("assemble: need at least 2 waypoints");

    AssembledTour tour;
    tour.waypoint_sample_ids = waypoints;
    const std::size_t k = waypoints.size();
    tour.legs.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int a = waypoints[i];
        const int b = waypoints[(i + 1) % k];
        const int edge = roadmap.find_edge(a, b);
        if (edge >= 0) {
            tour.legs.push_back(roadmap.edges[static_cast<std::size_t>(edge)].trajectory);
        } else {
            auto solved = min_time_path(roadmap.samples[static_cast<std::size_t>(a)].state,
                                        roadmap.samples[static_cast<std::size_t>(b)].state, p, cfg);
            if (!solved)
                throw planning_error("assemble: no path from sample " + std::to_string(a) +
                                     " to sample " + std::to_string(b));
            tour.legs.push_back(std::move(*solved));
        }
        tour.total_time += tour.legs.back().cost;
    }
    return tour;
}

namespace {

// Flattened closed-tour schedule with a cursor-based fine sweep.
struct TourTimeline {
    std::vector<ControlSegment> schedule;  // global, durations sum to total
    State start;
    double total = 0.0;
};

TourTimeline flatten(const AssembledTour& at) {
    TourTimeline tl;
    tl.start = at.legs.front().states.front().state;
    for (const auto& leg : at.legs) {
        for (const auto& seg : leg.controls) tl.schedule.push_back(seg);
        tl.total += leg.cost;
    }
    return tl;
}

// Extracts the sub-schedule covering global times [ta, tb] (tb may wrap past
// the total; the closed tour repeats).
std::vector<ControlSegment> slice_schedule(const TourTimeline& tl, double ta, double tb) {
    std::vector<ControlSegment> out;
    if (tb < ta) tb += tl.total;
    double t = 0.0;
    // Walk up to two laps to cover wrapped slices.
    for (int lap = 0; lap < 2 && t < tb - 1e-12; ++lap) {
        for (const auto& seg : tl.schedule) {
            const double t0 = t, t1 = t + seg.duration;
            const double lo = std::max(t0, ta), hi = std::min(t1, tb);
            if (hi - lo > 1e-12) out.push_back({seg.u, hi - lo});
            t = t1;
            if (t >= tb - 1e-12) break;
        }
    }
    return out;
}

struct Crossing {
    int task_id;
    double t;
    State state;
};

}  // namespace

Tour repartition(const AssembledTour& assembled, const std::vector<Task>& tasks,
                 const VehicleParams& p, double dt) {
    if (assembled.legs.empty()) throw planning_error("repartition: empty tour");
    const TourTimeline tl = flatten(assembled);

    auto inside = [&](const Vec2& pos, const Task& task) {
        return distance(pos, task.center) <= task.radius + 1e-9;
    };

    std::vector<bool> entered(tasks.size(), false);
    std::vector<Crossing> crossings;
    crossings.reserve(tasks.size());

    State s = tl.start;
    double t = 0.0;
    // Trace start counts as the entering state for any disk containing it.
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        if (inside(s.position(), tasks[ti])) {
            entered[ti] = true;
            crossings.push_back({tasks[ti].id, 0.0, s});
        }
    }

    for (const auto& seg : tl.schedule) {
        double remaining = seg.duration;
        while (remaining > 1e-12) {
            const double h = std::min(dt, remaining);
            const State s_next = rk4_step(s, seg.u, p, h);
            for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
                if (entered[ti] || !inside(s_next.position(), tasks[ti])) continue;
                // Bisect [0, h] from s for the boundary crossing.
                double lo = 0.0, hi = h;
                State s_hi = s_next;
                while ((hi - lo) * p.v_max > 1e-6) {
                    const double mid = 0.5 * (lo + hi);
                    const State s_mid = rk4_step(s, seg.u, p, mid);
                    if (inside(s_mid.position(), tasks[ti])) {
                        hi = mid;
                        s_hi = s_mid;
                    } else {
                        lo = mid;
                    }
                }
                entered[ti] = true;
                crossings.push_back({tasks[ti].id, t + hi, s_hi});
            }
            s = s_next;
            t += h;
            remaining -= h;
        }
    }

    for (std::size_t ti = 0; ti < tasks.size(); ++ti)
        if (!entered[ti])
            throw coverage_error("repartition: task " + std::to_string(tasks[ti].id) +
                                 " never entered by the tour");

    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.t < b.t; });

    Tour tour;
    const std::size_t n = crossings.size();
    tour.entering.reserve(n);
    for (const auto& c : crossings) tour.entering.push_back({c.state, c.task_id, c.t});

    tour.legs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ta = crossings[i].t;
        const double tb = crossings[(i + 1) % n].t + (i + 1 == n ? tl.total : 0.0);
        Trajectory leg;
        leg.t0 = 0.0;
        leg.tf = tb - ta;
        leg.cost = tb - ta;
        leg.controls = slice_schedule(tl, ta, tb);
        // Knot states by integrating the sliced schedule from the crossing state.
        State ls = crossings[i].state;
        double lt = 0.0;
        leg.states.push_back({lt, ls});
        for (const auto& segc : leg.controls) {
            double remaining = segc.duration;
            while (remaining > 1e-12) {
                const double h = std::min(dt, remaining);
                ls = rk4_step(ls, segc.u, p, h);
                lt += h;
                remaining -= h;
            }
            leg.states.push_back({lt, ls});
        }
        tour.legs.push_back(std::move(leg));
        tour.total_time += tb - ta;
    }
    return tour;
}

Tour refine(const Tour& tour, const std::vector<Task>& tasks, const VehicleParams& p,
            const TrajOptConfig& cfg, int max_passes, double improve_threshold_s,
            RefineReport* report) {
    Tour current = tour;
    const std::size_t n = current.entering.size();
    if (report) *report = {};
    if (n < 2) {
        if (report) report->pass_totals.push_back(current.total_time);
        return current;
    }

    auto task_by_id = [&](int id) -> const Task& {
        for (const auto& t : tasks)
            if (t.id == id) return t;
        throw planning_error("refine: unknown task id " + std::to_string(id));
    };

    for (int pass = 0; pass < max_passes; ++pass) {
        const double before = current.total_time;
        for (int parity = 0; parity < 2; ++parity) {
            for (std::size_t i = static_cast<std::size_t>(parity); i < n; i += 2) {
                const std::size_t prev = (i + n - 1) % n;
                const std::size_t next = (i + 1) % n;
                const double incumbent =
                    current.legs[prev].cost + current.legs[i].cost;
                auto result = min_time_through(current.entering[prev].state,
                                               task_by_id(current.entering[i].task_id),
                                               current.entering[next].state,
                                               current.entering[i].state, p, cfg);
                if (!result) continue;  // keep the incumbent segment
                if (result->total_time < incumbent - 1e-9) {
                    current.entering[i].state = result->mid;
                    current.legs[prev] = result->first_leg;
                    current.legs[i] = result->second_leg;
                    current.total_time += result->total_time - incumbent;
                    if (report) ++report->accepted_moves;
                }
            }
        }
        // Re-stamp encounter times from the refreshed leg costs.
        double t = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            current.entering[i].t = t;
            t += current.legs[i].cost;
        }
        current.total_time = t;

        if (report) {
            report->pass_totals.push_back(current.total_time);
            report->passes_run = pass + 1;
        }
        if (before - current.total_time < improve_threshold_s) break;
    }
    return current;
}

}  // namespace dtspn
