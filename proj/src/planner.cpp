#include "dtspn/planner.hpp"

#include <chrono>
#include <type_traits>

#include "dtspn/errors.hpp"

namespace dtspn {

Instance generate_instance(int n, double area_w, double area_h, double radius,
                           std::uint64_t seed, const VehicleParams& vehicle) {
    if (n < 2) throw parameter_error("generate_instance: need n >= 2");
    if (!(radius > 0.0) || !(area_w > 0.0) || !(area_h > 0.0))
        throw parameter_error("generate_instance: radius and area must be positive");
    Instance inst;
    inst.area_w = area_w;
    inst.area_h = area_h;
    inst.vehicle = vehicle;
    inst.seed = seed;
    Xoshiro256 rng(seed);
    inst.tasks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Task t;
        t.id = i;
        t.center = {rng.uniform(0.0, area_w), rng.uniform(0.0, area_h)};
        t.radius = radius;
        inst.tasks.push_back(t);
    }
    return inst;
}

std::string to_string(NinMode mode) {
    switch (mode) {
        case NinMode::None: return "none";
        case NinMode::Plain: return "plain";
        case NinMode::Necessary: return "necessary";
    }
    return "none";
}

std::string to_string(RoadmapMode mode) {
    return mode == RoadmapMode::Complete ? "complete" : "reduced";
}

NinMap nin_map_for_mode(const std::vector<StateSample>& samples, const std::vector<Task>& tasks,
                        const VehicleParams& p, NinMode mode) {
    switch (mode) {
        case NinMode::None: return {};
        case NinMode::Plain: return build_plain_intersection_map(samples, tasks);
        case NinMode::Necessary: return build_nin_map(samples, tasks, p);
    }
    return {};
}

namespace {

class StageClock {
public:
    explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}
    template <typename F>
    auto run(const std::string& name, F&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            out_.push_back({name, elapsed(t0)});
        } else {
            auto result = fn();
            out_.push_back({name, elapsed(t0)});
            return result;
        }
    }

private:
    static double elapsed(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    std::vector<StageTiming>& out_;
};

}  // namespace

Solution plan_with_roadmap(const Instance& instance, const PlanConfig& config,
                           const Roadmap& roadmap) {
    Solution sol;
    sol.instance = instance;
    sol.config = config;
    sol.roadmap_stats = roadmap.diagnostics;
    StageClock clock(sol.timings);

    const NinMap nin = clock.run("nin", [&] {
        return nin_map_for_mode(roadmap.samples, instance.tasks, instance.vehicle,
                                config.nin_mode);
    });

    const GtspGraph gtsp = clock.run("gtsp", [&] { return build_gtsp(roadmap); });

    // The heuristic can return a tour breaking the Noon-Bean group structure;
    // retried with a larger shift constant before giving up.
    std::vector<VisitEntry> visits;
    AtspInstance atsp_inst;
    double m_override = 0.0;
    clock.run("atsp", [&] {
        for (int attempt = 0; attempt < 3; ++attempt) {
            atsp_inst = noon_bean_with_nin(gtsp, nin, m_override);
            const AtspTour atsp_tour =
                solve_atsp(atsp_inst, config.atsp_seed, config.atsp_time_budget_s,
                           config.atsp_starts);
            sol.atsp_nodes = atsp_inst.n;
            sol.atsp_cost = atsp_tour.cost;
            sol.big_m = atsp_inst.big_m;
            try {
                visits = interpret_atsp_tour(atsp_tour.order, atsp_inst);
                return;
            } catch (const invalid_tour_error&) {
                if (attempt == 2) throw;
                m_override = atsp_inst.big_m * 10.0;
            }
        }
    });
    sol.visits = visits;

    for (const auto& v : visits)
        if (!v.concomitant) sol.waypoints.push_back(v.sample_id);
    if (sol.waypoints.size() < 2)
        throw planning_error("plan: tour degenerates to fewer than 2 waypoints");

    const AssembledTour assembled = clock.run("assemble", [&] {
        return assemble(roadmap, sol.waypoints, instance.vehicle, config.trajopt);
    });

    Tour repartitioned = clock.run("repartition", [&] {
        return repartition(assembled, instance.tasks, instance.vehicle, config.dt);
    });
    sol.total_before_refine = repartitioned.total_time;

    if (config.refine) {
        sol.tour = clock.run("refine", [&] {
            return refine(repartitioned, instance.tasks, instance.vehicle, config.trajopt,
                          config.refine_max_passes, config.refine_threshold_s,
                          &sol.refine_report);
        });
    } else {
        sol.tour = std::move(repartitioned);
    }
    return sol;
}

Solution plan(const Instance& instance, const PlanConfig& config) {
    std::vector<StageTiming> timings;
    StageClock clock(timings);

    const std::vector<StateSample> samples = clock.run("sampling", [&] {
        return sample_states(instance.tasks, config.m, instance.vehicle);
    });

    RoadmapConfig rm_cfg;
    rm_cfg.mode = config.roadmap_mode;
    rm_cfg.prune_factor = config.prune_factor;
    rm_cfg.trajopt = config.trajopt;
    rm_cfg.threads = config.threads;
    const Roadmap roadmap =
        clock.run("roadmap", [&] { return build_roadmap(samples, instance.vehicle, rm_cfg); });

    Solution sol = plan_with_roadmap(instance, config, roadmap);
    sol.timings.insert(sol.timings.begin(), timings.begin(), timings.end());
    return sol;
}

}  // namespace dtspn
