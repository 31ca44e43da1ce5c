#include "dtspn/plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dtspn/io.hpp"

namespace dtspn {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void draw_polyline(std::ostringstream& svg, const std::vector<TimedState>& trace,
                   double v_split, bool connect_across_gaps) {
    (void)connect_across_gaps;
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        const State& a = trace[i].state;
        const State& b = trace[i + 1].state;
        const bool fast = 0.5 * (a.v + b.v) > v_split;
        svg << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
            << "\" y2=\"" << num(b.y) << "\" stroke=\"" << (fast ? "#c0392b" : "#2c3e50")
            << "\" stroke-width=\"0.045\"";
        if (!fast) svg << " stroke-dasharray=\"0.12,0.08\"";
        svg << "/>\n";
    }
}

}  // namespace

std::string plot_svg_from_trace(const Solution& solution, const std::vector<TimedState>& trace) {
    const Instance& inst = solution.instance;
    const double margin = 1.5;
    const double w = inst.area_w + 2.0 * margin;
    const double h = inst.area_h + 2.0 * margin;
    const double scale = 60.0;  // px per km

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w * scale)
        << "\" height=\"" << num(h * scale) << "\" viewBox=\"" << num(-margin) << " "
        << num(-margin) << " " << num(w) << " " << num(h) << "\">\n";
    svg << "<g transform=\"translate(0," << num(inst.area_h) << ") scale(1,-1)\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << num(inst.area_w) << "\" height=\""
        << num(inst.area_h) << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.03\"/>\n";

    for (const Task& task : inst.tasks) {
        svg << "<circle cx=\"" << num(task.center.x) << "\" cy=\"" << num(task.center.y)
            << "\" r=\"" << num(task.radius)
            << "\" fill=\"#e8f0fe\" fill-opacity=\"0.6\" stroke=\"#4a6fa5\" "
               "stroke-width=\"0.03\"/>\n";
        svg << "<circle cx=\"" << num(task.center.x) << "\" cy=\"" << num(task.center.y)
            << "\" r=\"0.06\" fill=\"#4a6fa5\"/>\n";
    }

    const double v_split = 0.5 * (inst.vehicle.v_min + inst.vehicle.v_max);
    draw_polyline(svg, trace, v_split, true);

    for (const TourEntry& e : solution.tour.entering) {
        svg << "<circle cx=\"" << num(e.state.x) << "\" cy=\"" << num(e.state.y)
            << "\" r=\"0.09\" fill=\"#27ae60\"/>\n";
        const double tick = 0.45;
        svg << "<line x1=\"" << num(e.state.x) << "\" y1=\"" << num(e.state.y) << "\" x2=\""
            << num(e.state.x + tick * std::cos(e.state.theta)) << "\" y2=\""
            << num(e.state.y + tick * std::sin(e.state.theta))
            << "\" stroke=\"#27ae60\" stroke-width=\"0.035\"/>\n";
    }

    svg << "</g>\n</svg>\n";
    return svg.str();
}

std::string plot_svg(const Solution& solution) {
    std::vector<TimedState> trace;
    for (const Trajectory& leg : solution.tour.legs) {
        if (leg.cost <= 1e-9 || leg.controls.empty()) continue;
        const auto points = resample_trajectory(leg, solution.instance.vehicle,
                                                solution.config.dt);
        trace.insert(trace.end(), points.begin(), points.end());
    }
    return plot_svg_from_trace(solution, trace);
}

std::string plot_svg_from_json(const std::string& solution_json) {
    const json j = json::parse(solution_json);
    Solution sol;
    sol.instance = instance_from_json(j.at("instance"));
    sol.config = config_from_json(j.at("config"));
    const json& tour = j.at("tour");
    for (const json& e : tour.at("entering_states")) {
        TourEntry te;
        te.state.x = e.at("x").get<double>();
        te.state.y = e.at("y").get<double>();
        te.state.v = e.at("v").get<double>();
        te.state.theta = e.at("theta").get<double>();
        te.task_id = e.at("task_id").get<int>();
        te.t = e.at("t").get<double>();
        sol.tour.entering.push_back(te);
    }
    sol.tour.total_time = tour.at("total_time").get<double>();
    std::vector<TimedState> trace;
    for (const json& pt : tour.at("trace")) {
        State s;
        s.x = pt.at("x").get<double>();
        s.y = pt.at("y").get<double>();
        s.v = pt.at("v").get<double>();
        s.theta = pt.at("theta").get<double>();
        trace.push_back({0.0, s});
    }
    return plot_svg_from_trace(sol, trace);
}

}  // namespace dtspn
