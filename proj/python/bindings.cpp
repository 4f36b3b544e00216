#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opnet/distributions.hpp"
#include "opnet/dynamics.hpp"
#include "opnet/errors.hpp"
#include "opnet/formation.hpp"
#include "opnet/graph_metrics.hpp"
#include "opnet/hk.hpp"
#include "opnet/polarization.hpp"
#include "opnet/rational.hpp"
#include "opnet/sweep.hpp"
#include "opnet/thresholds.hpp"

namespace py = pybind11;
using namespace opnet;

namespace {

std::vector<double> to_vec(const OpinionProfile& x) { return {x.values().begin(), x.values().end()}; }

std::vector<std::vector<int>> rows(const PeerGraph& g) { return g.rows(); }

PeerGraph graph_from(const std::vector<std::vector<int>>& r) { return PeerGraph(r); }

py::dict cell_dict(const SweepCell& c) {
    py::dict d;
    d["f"] = c.f;
    d["V"] = c.V;
    d["diameter_t1"] = c.diameter_t1;
    d["components_final"] = c.components_final;
    d["classification"] = c.classification ? py::cast(std::string(to_string(*c.classification))) : py::none();
    d["steps_to_steady"] = c.steps_to_steady;
    d["consensus_value"] = c.consensus_value;
    d["error"] = c.error;
    return d;
}

}  // namespace

PYBIND11_MODULE(_opnet, m) {
    m.doc() = "Co-evolving opinions and strategic peer networks";

    py::register_exception<InvalidWindow>(m, "InvalidWindow", PyExc_ValueError);
    py::register_exception<UnattainableVariance>(m, "UnattainableVariance", PyExc_ValueError);
    py::register_exception<BlockOverlap>(m, "BlockOverlap", PyExc_ValueError);
    py::register_exception<SizeLimitExceeded>(m, "SizeLimitExceeded", PyExc_ValueError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    py::enum_<UpdateRule>(m, "UpdateRule")
        .value("hearing", UpdateRule::hearing)
        .value("simultaneous", UpdateRule::simultaneous);

    py::enum_<Classification>(m, "Classification")
        .value("monotone_consensus", Classification::monotone_consensus)
        .value("temporary_disagreement", Classification::temporary_disagreement)
        .value("persistent_disagreement", Classification::persistent_disagreement);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double V, double f, int n, int max_steps, UpdateRule rule) {
                 ModelParams p{V, f, n, max_steps, rule};
                 p.validate();
                 return p;
             }),
             py::arg("V"), py::arg("f") = 0.5, py::arg("n") = 2, py::arg("max_steps") = 500,
             py::arg("rule") = UpdateRule::hearing)
        .def_readwrite("V", &ModelParams::V)
        .def_readwrite("f", &ModelParams::f)
        .def_readwrite("n", &ModelParams::n)
        .def_readwrite("max_steps", &ModelParams::max_steps)
        .def_readwrite("rule", &ModelParams::rule);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("steps", &Trajectory::steps)
        .def_property_readonly("steady", [](const Trajectory& t) { return t.termination == Termination::steady_state; })
        .def_readonly("classification", &Trajectory::classification)
        .def_readonly("first_disorder", &Trajectory::first_disorder)
        .def_property_readonly("opinions",
                               [](const Trajectory& t) {
                                   std::vector<std::vector<double>> out;
                                   for (int k = 0; k <= t.steps(); ++k) out.push_back(to_vec(t.at(k)));
                                   return out;
                               })
        .def_property_readonly("graphs",
                               [](const Trajectory& t) {
                                   std::vector<std::vector<std::vector<int>>> out;
                                   for (const auto& g : t.graphs) out.push_back(g.rows());
                                   return out;
                               })
        .def_property_readonly("components",
                               [](const Trajectory& t) { return weak_components(t.final_graph); })
        .def_property_readonly("first_diameter",
                               [](const Trajectory& t) { return directed_diameter(t.first_graph); });

    m.def("uniform_grid", [](int n) { return to_vec(uniform_grid(n)); }, py::arg("n"));
    m.def("piecewise_normal", [](int n, double v) { return to_vec(piecewise_normal(n, v)); }, py::arg("n"),
          py::arg("variance") = 0.0546);
    m.def("bimodal", [](int n, double gap, double width) { return to_vec(bimodal(n, gap, width)); }, py::arg("n"),
          py::arg("mode_gap") = 0.5, py::arg("mode_width") = 0.3);

    m.def("best_window",
          [](const ModelParams& p, const std::vector<double>& x, int i) {
              return best_window(p, OpinionProfile(x), i);
          },
          py::arg("params"), py::arg("x"), py::arg("i"));
    m.def("form_network",
          [](const ModelParams& p, const std::vector<double>& x) { return rows(form_network(p, OpinionProfile(x))); },
          py::arg("params"), py::arg("x"));
    m.def("run",
          [](const ModelParams& p, const std::vector<double>& x0, bool keep_graphs) {
              RunOptions opt;
              opt.keep_graphs = keep_graphs;
              py::gil_scoped_release release;
              return run(p, OpinionProfile(x0), opt);
          },
          py::arg("params"), py::arg("initial"), py::arg("keep_graphs") = false);

    m.def("threshold_xi", &threshold_xi, py::arg("V"), py::arg("f"));
    m.def("threshold_phi", &threshold_phi, py::arg("V"), py::arg("f"));
    m.def("uniform_radii",
          [](double V, double f, int n) {
              const auto r = uniform_radii(V, f, n);
              py::dict d;
              d["delta"] = r.delta;
              d["vartheta"] = r.vartheta;
              d["delta_limit"] = r.delta_limit;
              d["vartheta_limit"] = r.vartheta_limit;
              return d;
          },
          py::arg("V"), py::arg("f"), py::arg("n"));

    m.def("esteban_ray",
          [](const std::vector<double>& x, double alpha, int segments, double K) {
              return esteban_ray(x, PolarizationParams{K, alpha, segments});
          },
          py::arg("x"), py::arg("alpha") = 1.0, py::arg("segments") = 10, py::arg("K") = 1.0);

    m.def("hk_run",
          [](double f, double eps, const std::vector<double>& x0, int max_steps) {
              const auto tr = hk_run(f, eps, OpinionProfile(x0), max_steps);
              std::vector<std::vector<double>> out{x0};
              for (const auto& x : tr.profiles) out.push_back(to_vec(x));
              return out;
          },
          py::arg("f"), py::arg("eps"), py::arg("initial"), py::arg("max_steps") = 500);

    m.def("solve_given_network",
          [](const std::vector<double>& theta, double f, const std::vector<std::vector<int>>& graph) {
              return solve_given_network(RationalInstance::homogeneous(theta, f, 0.0), graph_from(graph));
          },
          py::arg("theta"), py::arg("f"), py::arg("graph"));
    m.def("enumerate_equilibria",
          [](const std::vector<double>& theta, double f, double V, bool all_subsets) {
              const auto eq = enumerate_equilibria(RationalInstance::homogeneous(theta, f, V),
                                                   all_subsets ? DeviationSet::all_subsets : DeviationSet::windows);
              std::vector<std::vector<std::vector<int>>> out;
              for (const auto& e : eq) out.push_back(e.graph.rows());
              return out;
          },
          py::arg("theta"), py::arg("f"), py::arg("V"), py::arg("all_subsets") = false);

    m.def("run_sweep",
          [](int n, int max_steps, std::pair<double, double> f_range, std::pair<double, double> v_range,
             std::pair<int, int> grid, int jobs) {
              SweepConfig c;
              c.n = n;
              c.max_steps = max_steps;
              std::tie(c.f_lo, c.f_hi) = f_range;
              std::tie(c.v_lo, c.v_hi) = v_range;
              std::tie(c.f_points, c.v_points) = grid;
              c.jobs = jobs;
              c.validate();
              std::vector<SweepCell> cells;
              {
                  py::gil_scoped_release release;
                  cells = run_sweep(c, uniform_grid(n));
              }
              py::list out;
              for (const auto& cell : cells) out.append(cell_dict(cell));
              return out;
          },
          py::arg("n") = 81, py::arg("max_steps") = 20, py::arg("f_range") = std::pair{0.05, 0.95},
          py::arg("v_range") = std::pair{0.002, 0.2}, py::arg("grid") = std::pair{25, 25}, py::arg("jobs") = 1);
}
