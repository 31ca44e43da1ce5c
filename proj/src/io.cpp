#include "dtspn/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dtspn/errors.hpp"

namespace dtspn {

json instance_to_json(const Instance& inst) {
    json tasks = json::array();
    for (const Task& t : inst.tasks)
        tasks.push_back({{"id", t.id}, {"x", t.center.x}, {"y", t.center.y}, {"radius", t.radius}});
    return json{{"tasks", tasks},
                {"area", {{"width", inst.area_w}, {"height", inst.area_h}}},
                {"vehicle",
                 {{"v_min", inst.vehicle.v_min},
                  {"v_max", inst.vehicle.v_max},
                  {"c1", inst.vehicle.c1},
                  {"c2", inst.vehicle.c2},
                  {"g", inst.vehicle.g},
                  {"n_load_max", inst.vehicle.n_load_max}}},
                {"seed", inst.seed}};
}

Instance instance_from_json(const json& j) {
    Instance inst;
    inst.area_w = j.at("area").at("width").get<double>();
    inst.area_h = j.at("area").at("height").get<double>();
    const json& v = j.at("vehicle");
    inst.vehicle.v_min = v.at("v_min").get<double>();
    inst.vehicle.v_max = v.at("v_max").get<double>();
    inst.vehicle.c1 = v.at("c1").get<double>();
    inst.vehicle.c2 = v.at("c2").get<double>();
    if (v.contains("g")) inst.vehicle.g = v.at("g").get<double>();
    if (v.contains("n_load_max")) inst.vehicle.n_load_max = v.at("n_load_max").get<double>();
    inst.vehicle.validate();
    inst.seed = j.value("seed", 0ULL);
    for (const json& t : j.at("tasks")) {
        Task task;
        task.id = t.at("id").get<int>();
        task.center = {t.at("x").get<double>(), t.at("y").get<double>()};
        task.radius = t.at("radius").get<double>();
        inst.tasks.push_back(task);
    }
    return inst;
}

json config_to_json(const PlanConfig& cfg) {
    return json{{"m", cfg.m},
                {"roadmap", to_string(cfg.roadmap_mode)},
                {"nin", to_string(cfg.nin_mode)},
                {"refine", cfg.refine},
                {"prune_factor", cfg.prune_factor},
                {"dt", cfg.dt},
                {"atsp_seed", cfg.atsp_seed},
                {"atsp_starts", cfg.atsp_starts},
                {"refine_max_passes", cfg.refine_max_passes},
                {"refine_threshold_s", cfg.refine_threshold_s},
                {"trajopt",
                 {{"segments", cfg.trajopt.segments},
                  {"pos_tolerance", cfg.trajopt.pos_tolerance},
                  {"vel_tolerance", cfg.trajopt.vel_tolerance},
                  {"substeps_per_segment", cfg.trajopt.substeps_per_segment}}}};
}

PlanConfig config_from_json(const json& j) {
    PlanConfig cfg;
    cfg.m = j.value("m", cfg.m);
    if (j.contains("roadmap"))
        cfg.roadmap_mode = j.at("roadmap").get<std::string>() == "complete"
                               ? RoadmapMode::Complete
                               : RoadmapMode::Reduced;
    if (j.contains("nin")) {
        const std::string s = j.at("nin").get<std::string>();
        cfg.nin_mode = s == "none" ? NinMode::None
                       : s == "plain" ? NinMode::Plain
                                      : NinMode::Necessary;
    }
    cfg.refine = j.value("refine", cfg.refine);
    cfg.prune_factor = j.value("prune_factor", cfg.prune_factor);
    cfg.dt = j.value("dt", cfg.dt);
    cfg.atsp_seed = j.value("atsp_seed", cfg.atsp_seed);
    cfg.atsp_starts = j.value("atsp_starts", cfg.atsp_starts);
    cfg.refine_max_passes = j.value("refine_max_passes", cfg.refine_max_passes);
    cfg.refine_threshold_s = j.value("refine_threshold_s", cfg.refine_threshold_s);
    if (j.contains("trajopt")) {
        const json& t = j.at("trajopt");
        cfg.trajopt.segments = t.value("segments", cfg.trajopt.segments);
        cfg.trajopt.pos_tolerance = t.value("pos_tolerance", cfg.trajopt.pos_tolerance);
        cfg.trajopt.vel_tolerance = t.value("vel_tolerance", cfg.trajopt.vel_tolerance);
        cfg.trajopt.substeps_per_segment =
            t.value("substeps_per_segment", cfg.trajopt.substeps_per_segment);
    }
    return cfg;
}

namespace {

json state_to_json(const State& s) {
    return json{{"x", s.x}, {"y", s.y}, {"v", s.v}, {"theta", s.theta}};
}

State state_from_json(const json& j) {
    State s;
    s.x = j.at("x").get<double>();
    s.y = j.at("y").get<double>();
    s.v = j.at("v").get<double>();
    s.theta = j.at("theta").get<double>();
    return s;
}

json controls_to_json(const std::vector<ControlSegment>& controls) {
    json arr = json::array();
    for (const auto& c : controls) arr.push_back({c.u.u1, c.u.u2, c.duration});
    return arr;
}

std::vector<ControlSegment> controls_from_json(const json& arr) {
    std::vector<ControlSegment> out;
    for (const auto& c : arr)
        out.push_back({{c.at(0).get<double>(), c.at(1).get<double>()}, c.at(2).get<double>()});
    return out;
}

}  // namespace

json roadmap_to_json(const Roadmap& rm, bool include_trajectories) {
    json samples = json::array();
    for (const auto& s : rm.samples)
        samples.push_back(
            {{"id", s.id}, {"task_id", s.task_id}, {"state", state_to_json(s.state)}});
    json edges = json::array();
    for (const auto& e : rm.edges) {
        json edge{{"from", e.from_id}, {"to", e.to_id}, {"cost", e.cost}};
        if (include_trajectories) edge["controls"] = controls_to_json(e.trajectory.controls);
        edges.push_back(edge);
    }
    return json{{"mode", to_string(rm.mode)},
                {"samples", samples},
                {"edges", edges},
                {"diagnostics",
                 {{"candidate_pairs", rm.diagnostics.candidate_pairs},
                  {"pruned_pairs", rm.diagnostics.pruned_pairs},
                  {"failed_solves", rm.diagnostics.failed_solves},
                  {"solved_edges", rm.diagnostics.solved_edges}}}};
}

Roadmap roadmap_from_json(const json& j, const VehicleParams& p) {
    Roadmap rm;
    rm.mode = j.value("mode", std::string("reduced")) == "complete" ? RoadmapMode::Complete
                                                                    : RoadmapMode::Reduced;
    for (const json& s : j.at("samples")) {
        StateSample sample;
        sample.id = s.at("id").get<int>();
        sample.task_id = s.at("task_id").get<int>();
        sample.state = state_from_json(s.at("state"));
        rm.samples.push_back(sample);
    }
    for (const json& e : j.at("edges")) {
        RoadmapEdge edge;
        edge.from_id = e.at("from").get<int>();
        edge.to_id = e.at("to").get<int>();
        edge.cost = e.at("cost").get<double>();
        if (e.contains("controls")) {
            edge.trajectory.controls = controls_from_json(e.at("controls"));
            edge.trajectory.t0 = 0.0;
            edge.trajectory.tf = edge.cost;
            edge.trajectory.cost = edge.cost;
            // Rebuild knots from the origin sample state.
            const State& s0 = rm.samples[static_cast<std::size_t>(edge.from_id)].state;
            State s = s0;
            double t = 0.0;
            edge.trajectory.states.push_back({t, s});
            for (const auto& seg : edge.trajectory.controls) {
                double remaining = seg.duration;
                while (remaining > 1e-12) {
                    const double h = std::min(0.05, remaining);
                    s = rk4_step(s, seg.u, p, h);
                    remaining -= h;
                    t += h;
                }
                edge.trajectory.states.push_back({t, s});
            }
        }
        rm.edges.push_back(std::move(edge));
    }
    const json& d = j.at("diagnostics");
    rm.diagnostics.candidate_pairs = d.at("candidate_pairs").get<std::size_t>();
    rm.diagnostics.pruned_pairs = d.at("pruned_pairs").get<std::size_t>();
    rm.diagnostics.failed_solves = d.at("failed_solves").get<std::size_t>();
    rm.diagnostics.solved_edges = d.at("solved_edges").get<std::size_t>();
    return rm;
}

json atsp_meta_to_json(const AtspInstance& inst) {
    json nodes = json::array();
    for (const auto& n : inst.nodes)
        nodes.push_back({{"kind", n.kind == NodeKind::Sample ? "sample" : "intersection"},
                         {"origin_sample", n.origin_sample},
                         {"group", n.group},
                         {"cycle_pos", n.cycle_pos}});
    return json{{"dimension", inst.n},
                {"num_groups", inst.num_groups},
                {"big_m", inst.big_m},
                {"sentinel", inst.sentinel},
                {"weight_scale", 1000},
                {"nodes", nodes}};
}

AtspInstance atsp_meta_from_json(const json& j) {
    AtspInstance inst;
    inst.n = j.at("dimension").get<int>();
    inst.num_groups = j.at("num_groups").get<int>();
    inst.big_m = j.at("big_m").get<double>();
    inst.sentinel = j.at("sentinel").get<double>();
    for (const json& n : j.at("nodes")) {
        AtspNodeMeta meta;
        meta.kind = n.at("kind").get<std::string>() == "sample" ? NodeKind::Sample
                                                                : NodeKind::Intersection;
        meta.origin_sample = n.at("origin_sample").get<int>();
        meta.group = n.at("group").get<int>();
        meta.cycle_pos = n.at("cycle_pos").get<int>();
        inst.nodes.push_back(meta);
    }
    if (static_cast<int>(inst.nodes.size()) != inst.n)
        throw parameter_error("atsp_meta_from_json: node count mismatch");
    return inst;
}

json solution_to_json(const Solution& sol) {
    json entering = json::array();
    for (const auto& e : sol.tour.entering) {
        json je = state_to_json(e.state);
        je["task_id"] = e.task_id;
        je["t"] = e.t;
        entering.push_back(je);
    }

    json leg_times = json::array();
    for (const auto& leg : sol.tour.legs) leg_times.push_back(leg.cost);

    json trace = json::array();
    for (const auto& leg : sol.tour.legs) {
        if (leg.cost <= 1e-9 || leg.controls.empty()) continue;
        const auto points = resample_trajectory(leg, sol.instance.vehicle, sol.config.dt);
        for (const auto& pt : points)
            trace.push_back({{"x", pt.state.x}, {"y", pt.state.y}, {"v", pt.state.v},
                             {"theta", pt.state.theta}});
    }

    json visits = json::array();
    for (const auto& v : sol.visits)
        visits.push_back({{"group", v.group},
                          {"sample_id", v.sample_id},
                          {"concomitant", v.concomitant}});

    json timings = json::array();
    for (const auto& t : sol.timings) timings.push_back({{"stage", t.name}, {"seconds", t.seconds}});

    json passes = json::array();
    for (double v : sol.refine_report.pass_totals) passes.push_back(v);

    return json{{"schema_version", 1},
                {"instance", instance_to_json(sol.instance)},
                {"config", config_to_json(sol.config)},
                {"waypoints", sol.waypoints},
                {"visits", visits},
                {"tour",
                 {{"entering_states", entering},
                  {"leg_times", leg_times},
                  {"total_time", sol.tour.total_time},
                  {"trace", trace}}},
                {"total_before_refine", sol.total_before_refine},
                {"refine",
                 {{"pass_totals", passes},
                  {"accepted_moves", sol.refine_report.accepted_moves},
                  {"passes_run", sol.refine_report.passes_run}}},
                {"roadmap_stats",
                 {{"candidate_pairs", sol.roadmap_stats.candidate_pairs},
                  {"pruned_pairs", sol.roadmap_stats.pruned_pairs},
                  {"failed_solves", sol.roadmap_stats.failed_solves},
                  {"solved_edges", sol.roadmap_stats.solved_edges}}},
                {"atsp", {{"nodes", sol.atsp_nodes}, {"cost", sol.atsp_cost}, {"big_m", sol.big_m}}},
                {"timings", timings}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parameter_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parameter_error("cannot write file: " + path);
    out << content;
}

}  // namespace dtspn
