#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtspn/bench.hpp"
#include "dtspn/io.hpp"
#include "dtspn/plot.hpp"

namespace {

using namespace dtspn;

struct CommonFlags {
    std::string roadmap = "reduced";
    std::string nin = "necessary";
    std::string refine = "on";
    double prune_factor = 2.0;
    int m = 10;

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", m, "samples per task");
        cmd->add_option("--roadmap", roadmap, "roadmap mode")
            ->check(CLI::IsMember({"complete", "reduced"}));
        cmd->add_option("--nin", nin, "intersection handling")
            ->check(CLI::IsMember({"none", "plain", "necessary"}));
        cmd->add_option("--refine", refine, "tour refinement")
            ->check(CLI::IsMember({"on", "off"}));
        cmd->add_option("--prune-factor", prune_factor, "Dubins/straight-line prune ratio");
    }

    PlanConfig to_config() const {
        PlanConfig cfg;
        cfg.m = m;
        cfg.roadmap_mode = roadmap == "complete" ? RoadmapMode::Complete : RoadmapMode::Reduced;
        cfg.nin_mode = nin == "none" ? NinMode::None
                       : nin == "plain" ? NinMode::Plain
                                        : NinMode::Necessary;
        cfg.refine = refine == "on";
        cfg.prune_factor = prune_factor;
        return cfg;
    }
};

Instance load_instance(const std::string& path) {
    return instance_from_json(json::parse(read_file(path)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-flight-time tours over disk neighborhoods for a "
                 "curvature-constrained variable-speed vehicle"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    int gen_n = 10;
    std::uint64_t gen_seed = 1;
    double gen_radius = 1.0, gen_area = 10.0;
    std::string gen_out = "instance.json";
    gen->add_option("--n", gen_n, "number of tasks")->required();
    gen->add_option("--seed", gen_seed, "PRNG seed");
    gen->add_option("--radius", gen_radius, "neighborhood radius (km)");
    gen->add_option("--area", gen_area, "square area side (km)");
    gen->add_option("--out", gen_out, "output instance JSON");

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "plan a tour for an instance");
    std::string plan_instance, plan_out = "solution.json", plan_svg_out;
    CommonFlags plan_flags;
    std::uint64_t plan_seed = 1;
    plan_cmd->add_option("--instance", plan_instance, "instance JSON")->required();
    plan_flags.attach(plan_cmd);
    plan_cmd->add_option("--seed", plan_seed, "ATSP heuristic seed");
    plan_cmd->add_option("--out", plan_out, "output solution JSON");
    plan_cmd->add_option("--svg", plan_svg_out, "also write an SVG plot");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "statistical benchmark harness");
    std::vector<int> bench_n{10};
    std::vector<int> bench_m{10};
    int bench_seeds = 10;
    std::uint64_t bench_seed = 1;
    double bench_radius = 1.0, bench_area = 10.0;
    std::string bench_roadmap = "both";
    std::string bench_out = "bench";
    bench_cmd->add_option("--n", bench_n, "task counts (repeatable)");
    bench_cmd->add_option("--m", bench_m, "samples per task, paired with --n by position");
    bench_cmd->add_option("--seeds", bench_seeds, "instances per cell");
    bench_cmd->add_option("--seed", bench_seed, "base seed");
    bench_cmd->add_option("--radius", bench_radius, "neighborhood radius (km)");
    bench_cmd->add_option("--area", bench_area, "square area side (km)");
    bench_cmd->add_option("--roadmap", bench_roadmap, "complete, reduced, or both")
        ->check(CLI::IsMember({"complete", "reduced", "both"}));
    bench_cmd->add_option("--out", bench_out, "output prefix (.csv and .md)");

    // export-tsplib
    auto* exp_cmd = app.add_subcommand("export-tsplib",
                                       "build the roadmap and export the transformed ATSP");
    std::string exp_instance, exp_out = "export";
    CommonFlags exp_flags;
    exp_cmd->add_option("--instance", exp_instance, "instance JSON")->required();
    exp_flags.attach(exp_cmd);
    exp_cmd->add_option("--out", exp_out, "output prefix (.atsp, .meta.json, .roadmap.json)");

    // import-tour
    auto* imp_cmd = app.add_subcommand("import-tour",
                                       "interpret an external solver's tour and assemble it");
    std::string imp_tour, imp_meta, imp_roadmap, imp_instance, imp_out = "solution.json";
    CommonFlags imp_flags;
    imp_cmd->add_option("--tour", imp_tour, "TSPLIB tour file")->required();
    imp_cmd->add_option("--meta", imp_meta, "metadata sidecar JSON")->required();
    imp_cmd->add_option("--roadmap", imp_roadmap, "roadmap JSON")->required();
    imp_cmd->add_option("--instance", imp_instance, "instance JSON")->required();
    imp_flags.attach(imp_cmd);
    imp_cmd->add_option("--out", imp_out, "output solution JSON");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "render a solution as SVG");
    std::string plot_solution, plot_out = "tour.svg";
    plot_cmd->add_option("--solution", plot_solution, "solution JSON")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const Instance inst = generate_instance(gen_n, gen_area, gen_area, gen_radius, gen_seed);
            write_file(gen_out, instance_to_json(inst).dump(2) + "\n");
            std::cout << "wrote " << gen_out << " (" << gen_n << " tasks)\n";
        } else if (*plan_cmd) {
            const Instance inst = load_instance(plan_instance);
            PlanConfig cfg = plan_flags.to_config();
            cfg.atsp_seed = plan_seed;
            const Solution sol = plan(inst, cfg);
            write_file(plan_out, solution_to_json(sol).dump(2) + "\n");
            std::cout << "total flight time: " << sol.tour.total_time << " s ("
                      << sol.waypoints.size() << " waypoints";
            if (cfg.refine)
                std::cout << ", " << sol.total_before_refine << " s before refinement";
            std::cout << ")\nwrote " << plan_out << "\n";
            if (!plan_svg_out.empty()) {
                write_file(plan_svg_out, plot_svg(sol));
                std::cout << "wrote " << plan_svg_out << "\n";
            }
        } else if (*bench_cmd) {
            BenchOptions opts;
            for (std::size_t i = 0; i < bench_n.size(); ++i) {
                const int m = i < bench_m.size() ? bench_m[i] : bench_m.back();
                opts.sizes.emplace_back(bench_n[i], m);
            }
            opts.seeds = bench_seeds;
            opts.base_seed = bench_seed;
            opts.radius = bench_radius;
            opts.area = bench_area;
            if (bench_roadmap == "complete") opts.modes = {RoadmapMode::Complete};
            else if (bench_roadmap == "reduced") opts.modes = {RoadmapMode::Reduced};
            const BenchReport report = bench(opts);
            write_file(bench_out + ".csv", bench_csv(report));
            write_file(bench_out + ".md", bench_markdown(report));
            std::cout << bench_markdown(report);
            std::cout << "wrote " << bench_out << ".csv and " << bench_out << ".md\n";
        } else if (*exp_cmd) {
            const Instance inst = load_instance(exp_instance);
            const PlanConfig cfg = exp_flags.to_config();
            const auto samples = sample_states(inst.tasks, cfg.m, inst.vehicle);
            RoadmapConfig rm_cfg;
            rm_cfg.mode = cfg.roadmap_mode;
            rm_cfg.prune_factor = cfg.prune_factor;
            rm_cfg.trajopt = cfg.trajopt;
            const Roadmap rm = build_roadmap(samples, inst.vehicle, rm_cfg);
            const NinMap nin = nin_map_for_mode(samples, inst.tasks, inst.vehicle, cfg.nin_mode);
            const AtspInstance atsp_inst = noon_bean_with_nin(build_gtsp(rm), nin);
            write_file(exp_out + ".atsp", to_tsplib(atsp_inst, exp_out));
            write_file(exp_out + ".meta.json", atsp_meta_to_json(atsp_inst).dump(2) + "\n");
            write_file(exp_out + ".roadmap.json", roadmap_to_json(rm).dump() + "\n");
            std::cout << "wrote " << exp_out << ".atsp (" << atsp_inst.n << " nodes), "
                      << exp_out << ".meta.json, " << exp_out << ".roadmap.json\n";
        } else if (*imp_cmd) {
            const Instance inst = load_instance(imp_instance);
            const PlanConfig cfg = imp_flags.to_config();
            const std::vector<int> tour_nodes = parse_tsplib_tour(read_file(imp_tour));
            const AtspInstance meta = atsp_meta_from_json(json::parse(read_file(imp_meta)));
            const Roadmap rm = roadmap_from_json(json::parse(read_file(imp_roadmap)),
                                                 inst.vehicle);
            const auto visits = interpret_atsp_tour(tour_nodes, meta);
            std::vector<int> waypoints;
            for (const auto& v : visits)
                if (!v.concomitant) waypoints.push_back(v.sample_id);
            const AssembledTour at = assemble(rm, waypoints, inst.vehicle, cfg.trajopt);
            Tour tour = repartition(at, inst.tasks, inst.vehicle, cfg.dt);

            Solution sol;
            sol.instance = inst;
            sol.config = cfg;
            sol.waypoints = waypoints;
            sol.visits = visits;
            sol.total_before_refine = tour.total_time;
            sol.roadmap_stats = rm.diagnostics;
            sol.atsp_nodes = meta.n;
            sol.big_m = meta.big_m;
            if (cfg.refine) {
                sol.tour = refine(tour, inst.tasks, inst.vehicle, cfg.trajopt,
                                  cfg.refine_max_passes, cfg.refine_threshold_s,
                                  &sol.refine_report);
            } else {
                sol.tour = std::move(tour);
            }
            write_file(imp_out, solution_to_json(sol).dump(2) + "\n");
            std::cout << "total flight time: " << sol.tour.total_time << " s\nwrote " << imp_out
                      << "\n";
        } else if (*plot_cmd) {
            write_file(plot_out, plot_svg_from_json(read_file(plot_solution)));
            std::cout << "wrote " << plot_out << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
