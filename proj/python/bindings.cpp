#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dtspn/atsp.hpp"
#include "dtspn/dubins.hpp"
#include "dtspn/io.hpp"
#include "dtspn/plot.hpp"

namespace py = pybind11;
using namespace dtspn;

namespace {

PlanConfig config_from_string(const std::string& config_json) {
    if (config_json.empty()) return PlanConfig{};
    return config_from_json(json::parse(config_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Minimum-flight-time neighborhood tours for a curvature-constrained "
              "variable-speed vehicle";

    py::register_exception<parameter_error>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<planning_error>(m, "PlanningError", PyExc_RuntimeError);

    py::class_<VehicleParams>(m, "VehicleParams")
        .def(py::init<>())
        .def_static("from_load_factor", &VehicleParams::from_load_factor, py::arg("v_min"),
                    py::arg("v_max"), py::arg("c1"), py::arg("n_load_max"),
                    py::arg("g") = 0.0098)
        .def_readwrite("v_min", &VehicleParams::v_min)
        .def_readwrite("v_max", &VehicleParams::v_max)
        .def_readwrite("c1", &VehicleParams::c1)
        .def_readwrite("c2", &VehicleParams::c2)
        .def_readwrite("g", &VehicleParams::g)
        .def_readwrite("n_load_max", &VehicleParams::n_load_max);

    m.def("halton", &halton, py::arg("index"), py::arg("base"));

    m.def(
        "turn_radius",
        [](double v, const VehicleParams& p) { return turn_radius(v, p); },
        py::arg("v"), py::arg("params") = VehicleParams{});

    m.def(
        "shortest_dubins",
        [](std::tuple<double, double, double> q0, std::tuple<double, double, double> q1,
           double r) {
            const Pose p0{std::get<0>(q0), std::get<1>(q0), std::get<2>(q0)};
            const Pose p1{std::get<0>(q1), std::get<1>(q1), std::get<2>(q1)};
            const DubinsPath path = shortest_dubins(p0, p1, r);
            py::dict out;
            out["word"] = to_string(path.word);
            out["segment_lengths"] = path.segment_lengths;
            out["length"] = path.length();
            return out;
        },
        py::arg("q0"), py::arg("q1"), py::arg("r"),
        "Shortest Dubins path between (x, y, theta) poses at a fixed radius.");

    m.def(
        "min_time_path",
        [](std::tuple<double, double, double, double> from,
           std::tuple<double, double, double, double> to, const VehicleParams& p) {
            const State a{std::get<0>(from), std::get<1>(from), std::get<3>(from),
                          std::get<2>(from)};
            const State b{std::get<0>(to), std::get<1>(to), std::get<3>(to), std::get<2>(to)};
            TrajOptConfig cfg;
            auto traj = min_time_path(a, b, p, cfg);
            py::dict out;
            out["success"] = traj.has_value();
            if (traj) {
                out["time"] = traj->cost;
                out["terminal_pos_error"] = traj->terminal_pos_error;
                out["terminal_vel_error"] = traj->terminal_vel_error;
                py::list knots;
                for (const auto& k : traj->states)
                    knots.append(py::make_tuple(k.t, k.state.x, k.state.y, k.state.theta,
                                                k.state.v));
                out["knots"] = knots;
            }
            return out;
        },
        py::arg("s_from"), py::arg("s_to"), py::arg("params") = VehicleParams{},
        "Minimum-time transfer between (x, y, theta, v) states.");

    m.def(
        "solve_atsp",
        [](const std::vector<std::vector<double>>& matrix, std::uint64_t seed) {
            const AtspInstance inst = AtspInstance::from_matrix(matrix);
            const AtspTour tour = solve_atsp(inst, seed);
            return py::make_tuple(tour.order, tour.cost);
        },
        py::arg("matrix"), py::arg("seed") = 1,
        "Heuristic ATSP tour (order, cost) for a dense weight matrix.");

    m.def(
        "generate_instance",
        [](int n, double area, double radius, std::uint64_t seed) {
            return instance_to_json(generate_instance(n, area, area, radius, seed)).dump();
        },
        py::arg("n"), py::arg("area") = 10.0, py::arg("radius") = 1.0, py::arg("seed") = 1,
        "Random instance as a JSON string.");

    m.def(
        "plan",
        [](const std::string& instance_json, const std::string& config_json) {
            const Instance inst = instance_from_json(json::parse(instance_json));
            const PlanConfig cfg = config_from_string(config_json);
            Solution sol;
            {
                py::gil_scoped_release release;
                sol = plan(inst, cfg);
            }
            return solution_to_json(sol).dump();
        },
        py::arg("instance_json"), py::arg("config_json") = std::string{},
        "Full planning pipeline; returns the solution as a JSON string.");

    m.def(
        "export_tsplib",
        [](const std::string& instance_json, const std::string& config_json) {
            const Instance inst = instance_from_json(json::parse(instance_json));
            const PlanConfig cfg = config_from_string(config_json);
            py::gil_scoped_release release;
            const auto samples = sample_states(inst.tasks, cfg.m, inst.vehicle);
            RoadmapConfig rm_cfg;
            rm_cfg.mode = cfg.roadmap_mode;
            rm_cfg.prune_factor = cfg.prune_factor;
            rm_cfg.trajopt = cfg.trajopt;
            const Roadmap rm = build_roadmap(samples, inst.vehicle, rm_cfg);
            const NinMap nin = nin_map_for_mode(samples, inst.tasks, inst.vehicle, cfg.nin_mode);
            const AtspInstance atsp_inst = noon_bean_with_nin(build_gtsp(rm), nin);
            py::gil_scoped_acquire acquire;
            return py::make_tuple(to_tsplib(atsp_inst, "export"),
                                  atsp_meta_to_json(atsp_inst).dump());
        },
        py::arg("instance_json"), py::arg("config_json") = std::string{},
        "Roadmap + transformation; returns (tsplib_text, metadata_json).");

    m.def("plot_svg", &plot_svg_from_json, py::arg("solution_json"),
          "SVG rendering of a serialized solution.");
}
