#include "dtspn/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace dtspn {

namespace {

BenchStats stats_of(const std::vector<double>& xs) {
    BenchStats s;
    s.count = static_cast<int>(xs.size());
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = xs.size() > 1 ? std::sqrt(var / (xs.size() - 1)) : 0.0;
    return s;
}

std::string fmt(double v, int prec = 1) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

std::string cell(const BenchStats& s) { return fmt(s.mean) + ", " + fmt(s.stddev); }

}  // namespace

BenchReport bench(const BenchOptions& opts) {
    BenchReport report;
    report.seeds = opts.seeds;
    report.base_seed = opts.base_seed;

    for (const auto& [n, m] : opts.sizes) {
        for (const RoadmapMode mode : opts.modes) {
            BenchRow row;
            row.n = n;
            row.m = m;
            row.mode = mode;
            std::vector<double> rm_secs, edges, f_none, f_plain_b, f_plain_a, f_nin_b, f_nin_a;

            for (int k = 0; k < opts.seeds; ++k) {
                const Instance inst = generate_instance(
                    n, opts.area, opts.area, opts.radius, opts.base_seed + static_cast<std::uint64_t>(k));
                PlanConfig cfg = opts.base_config;
                cfg.m = m;
                cfg.roadmap_mode = mode;
                try {
                    const auto samples = sample_states(inst.tasks, m, inst.vehicle);
                    RoadmapConfig rm_cfg;
                    rm_cfg.mode = mode;
                    rm_cfg.prune_factor = cfg.prune_factor;
                    rm_cfg.trajopt = cfg.trajopt;
                    rm_cfg.threads = cfg.threads;
                    const auto t0 = std::chrono::steady_clock::now();
                    const Roadmap roadmap = build_roadmap(samples, inst.vehicle, rm_cfg);
                    rm_secs.push_back(
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count());
                    edges.push_back(static_cast<double>(roadmap.diagnostics.solved_edges));

                    cfg.nin_mode = NinMode::None;
                    cfg.refine = false;
                    f_none.push_back(plan_with_roadmap(inst, cfg, roadmap).tour.total_time);

                    cfg.nin_mode = NinMode::Plain;
                    cfg.refine = true;
                    {
                        const Solution s = plan_with_roadmap(inst, cfg, roadmap);
                        f_plain_b.push_back(s.total_before_refine);
                        f_plain_a.push_back(s.tour.total_time);
                    }

                    cfg.nin_mode = NinMode::Necessary;
                    {
                        const Solution s = plan_with_roadmap(inst, cfg, roadmap);
                        f_nin_b.push_back(s.total_before_refine);
                        f_nin_a.push_back(s.tour.total_time);
                    }
                } catch (const std::exception&) {
                    ++row.failures;
                }
            }

            row.roadmap_seconds = stats_of(rm_secs);
            row.solved_edges = stats_of(edges);
            row.flight_none = stats_of(f_none);
            row.flight_plain_before = stats_of(f_plain_b);
            row.flight_plain_after = stats_of(f_plain_a);
            row.flight_nin_before = stats_of(f_nin_b);
            row.flight_nin_after = stats_of(f_nin_a);
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "n,m,roadmap,roadmap_s_mean,roadmap_s_std,edges_mean,"
           "none_mean,none_std,plain_before_mean,plain_before_std,"
           "plain_after_mean,plain_after_std,nin_before_mean,nin_before_std,"
           "nin_after_mean,nin_after_std,failures\n";
    for (const auto& r : report.rows) {
        out << r.n << ',' << r.m << ',' << to_string(r.mode) << ',' << fmt(r.roadmap_seconds.mean, 3)
            << ',' << fmt(r.roadmap_seconds.stddev, 3) << ',' << fmt(r.solved_edges.mean, 1) << ','
            << fmt(r.flight_none.mean, 2) << ',' << fmt(r.flight_none.stddev, 2) << ','
            << fmt(r.flight_plain_before.mean, 2) << ',' << fmt(r.flight_plain_before.stddev, 2)
            << ',' << fmt(r.flight_plain_after.mean, 2) << ','
            << fmt(r.flight_plain_after.stddev, 2) << ',' << fmt(r.flight_nin_before.mean, 2)
            << ',' << fmt(r.flight_nin_before.stddev, 2) << ',' << fmt(r.flight_nin_after.mean, 2)
            << ',' << fmt(r.flight_nin_after.stddev, 2) << ',' << r.failures << '\n';
    }
    return out.str();
}

std::string bench_markdown(const BenchReport& report) {
    std::ostringstream out;
    for (const RoadmapMode mode : {RoadmapMode::Complete, RoadmapMode::Reduced}) {
        bool any = false;
        for (const auto& r : report.rows) any = any || r.mode == mode;
        if (!any) continue;
        out << "### " << (mode == RoadmapMode::Complete ? "Complete" : "Reduced")
            << " roadmap (" << report.seeds << " instances per row; mean, std)\n\n";
        out << "| n | m | roadmap time (s) | without IN | plain IN before | plain IN after | "
               "necessarily IN before | necessarily IN after |\n";
        out << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& r : report.rows) {
            if (r.mode != mode) continue;
            out << "| " << r.n << " | " << r.m << " | " << cell(r.roadmap_seconds) << " | "
                << cell(r.flight_none) << " | " << cell(r.flight_plain_before) << " | "
                << cell(r.flight_plain_after) << " | " << cell(r.flight_nin_before) << " | "
                << cell(r.flight_nin_after) << " |\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace dtspn
