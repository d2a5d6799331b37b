#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "gaugepf/bp.hpp"
#include "gaugepf/errors.hpp"
#include "gaugepf/gauge.hpp"
#include "gaugepf/loops.hpp"
#include "gaugepf/model_io.hpp"
#include "gaugepf/poly.hpp"

namespace py = pybind11;
using namespace gaugepf;

namespace {

SolverConfig make_config(double tol, double damping, std::size_t restarts, std::size_t max_sweeps,
                         std::uint64_t seed, double soften_eps) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.damping = damping;
  cfg.restarts = restarts;
  cfg.max_sweeps = max_sweeps;
  cfg.seed = seed;
  cfg.soften_eps = soften_eps;
  return cfg;
}

// Gauge values keyed by directed edge name ("e+", "e-").
py::dict gauge_dict(const MultiGraph& g, const GaugeVector& x) {
  py::dict out;
  for (const Edge& e : g.edges()) {
    for (Polarity pol : {Polarity::Plus, Polarity::Minus}) {
      const DirectedEdgeId d{e.id, pol};
      out[py::str(directed_edge_name(g, d))] = x[d];
    }
  }
  return out;
}

std::vector<EdgeId> order_from_names(const MultiGraph& g, const std::vector<std::string>& names) {
  if (names.empty()) return normal_first_order(g);
  std::vector<EdgeId> order;
  for (const std::string& name : names) {
    bool found = false;
    for (const Edge& e : g.edges()) {
      if (e.name == name) {
        order.push_back(e.id);
        found = true;
        break;
      }
    }
    if (!found) throw InputError("order names unknown edge '" + name + "'");
  }
  return order;
}

}  // namespace

PYBIND11_MODULE(_gaugepf, mod) {
  mod.doc() = "Gauge transformations and variational BP on multi-graph models";

  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
  py::register_exception<LookupError>(mod, "LookupError", PyExc_KeyError);
  py::register_exception<GuardError>(mod, "GuardError", PyExc_ValueError);
  py::register_exception<DegenerateError>(mod, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

  py::class_<MultiGM>(mod, "Model")
      .def_property_readonly("num_nodes", [](const MultiGM& m) { return m.graph().num_nodes(); })
      .def_property_readonly("num_edges", [](const MultiGM& m) { return m.graph().num_edges(); })
      .def_property_readonly("num_self_edges", [](const MultiGM& m) { return m.graph().num_self_edges(); })
      .def_property_readonly("edge_names",
                             [](const MultiGM& m) {
                               std::vector<std::string> names;
                               for (const Edge& e : m.graph().edges()) names.push_back(e.name);
                               return names;
                             })
      .def_property_readonly("soft", &MultiGM::soft)
      .def("partition", [](const MultiGM& m) { return partition_exact(m); })
      .def("map_energy", [](const MultiGM& m) { return map_energy_exact(m).energy; })
      .def("serialize", &serialize_model)
      .def("__repr__", [](const MultiGM& m) {
        return "<Model nodes=" + std::to_string(m.graph().num_nodes()) +
               " edges=" + std::to_string(m.graph().num_edges()) + ">";
      });

  mod.def("parse_model", [](const std::string& text) { return parse_model(text); }, py::arg("text"));
  mod.def("load_model", [](const std::string& path) { return load_model(path); }, py::arg("path"));

  mod.def(
      "solve_bp",
      [](const MultiGM& m, double tol, double damping, std::size_t restarts, std::size_t max_sweeps,
         std::uint64_t seed, double soften_eps) {
        const SolverConfig cfg = make_config(tol, damping, restarts, max_sweeps, seed, soften_eps);
        const MultiGM solved = solver_model(m, cfg);
        const BPGauge bp = solve_bp(solved, cfg);
        py::dict out;
        out["z"] = bp.z;
        out["log_z"] = bp.log_z;
        out["residual"] = bp.residual;
        out["converged"] = bp.converged;
        out["sweeps"] = bp.sweeps;
        out["softened"] = !m.soft();
        out["stationary_values"] = bp.stationary_values;
        out["gauge"] = gauge_dict(solved.graph(), bp.x);
        return out;
      },
      py::arg("model"), py::kw_only(), py::arg("tol") = 1e-10, py::arg("damping") = 0.5,
      py::arg("restarts") = 16, py::arg("max_sweeps") = 10000, py::arg("seed") = 0,
      py::arg("soften_eps") = 1e-12);

  mod.def(
      "loop_series",
      [](const MultiGM& m, std::uint64_t seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        const MultiGM solved = solver_model(m, cfg);
        const BPGauge bp = solve_bp(solved, cfg);
        if (!bp.converged) throw ConvergenceError("BP did not converge");
        std::vector<std::pair<std::vector<std::string>, double>> out;
        for (const LoopTerm& t : loop_series(solved, bp.x)) {
          std::vector<std::string> colored;
          for (std::size_t k = 0; k < t.loop.size(); ++k) {
            if (t.loop[k]) colored.push_back(solved.graph().edges()[k].name);
          }
          out.emplace_back(std::move(colored), t.term);
        }
        return out;
      },
      py::arg("model"), py::kw_only(), py::arg("seed") = 0,
      "Generalized loops (as lists of edge names) and their terms at the BP gauge.");

  mod.def(
      "contract_sequence",
      [](const MultiGM& m, const std::vector<std::string>& order, std::uint64_t seed) {
        SolverConfig cfg;
        cfg.seed = seed;
        const SequenceReport rep = bp_contract_sequence(m, order_from_names(m.graph(), order), cfg);
        std::vector<double> values;
        for (const SequenceEntry& e : rep.entries) values.push_back(e.z_vbp);
        py::dict out;
        out["z_vbp"] = values;
        out["z"] = rep.z_exact;
        out["monotone"] = rep.monotone();
        out["converged"] = rep.all_converged();
        return out;
      },
      py::arg("model"), py::arg("order") = std::vector<std::string>{}, py::kw_only(), py::arg("seed") = 0);

  mod.def(
      "gauge_matrix",
      [](double p, double q) {
        const GaugeMatrix g = gauge_matrix(p, q);
        return std::vector<std::vector<double>>{{g[0][0], g[0][1]}, {g[1][0], g[1][1]}};
      },
      py::arg("x_self"), py::arg("x_sibling"));

  mod.def(
      "edge_pair_update",
      [](double h00, double h10, double h01, double h11) {
        const EdgePair p = edge_pair_update({h00, h10, h01, h11});
        return std::make_pair(p.plus, p.minus);
      },
      py::arg("h00"), py::arg("h10"), py::arg("h01"), py::arg("h11"));

  mod.def(
      "bp_value", [](double h00, double h10, double h01, double h11) { return bp_value({h00, h10, h01, h11}); },
      py::arg("h00"), py::arg("h10"), py::arg("h01"), py::arg("h11"));
}
