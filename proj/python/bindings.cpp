// Copyright 2026 The selfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "selfsim/config.hpp"
#include "selfsim/engine.hpp"
#include "selfsim/error.hpp"
#include "selfsim/oracles.hpp"
#include "selfsim/report.hpp"

namespace py = pybind11;
using namespace selfsim;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> nodes(const Grid& g) {
  std::vector<double> x(g.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.x(i);
  return to_numpy(x);
}

}  // namespace

PYBIND11_MODULE(_selfsim, m) {
  m.doc() = "Numerical renormalization-group runs for self-similar PDE asymptotics";

  py::register_exception<Error>(m, "SelfsimError", PyExc_RuntimeError);

  py::class_<ExperimentConfig>(m, "Config")
      .def_readwrite("L", &ExperimentConfig::L)
      .def_readwrite("dt", &ExperimentConfig::dt)
      .def_readwrite("iterations", &ExperimentConfig::iterations)
      .def_readwrite("normalize", &ExperimentConfig::normalize)
      .def_readwrite("symmetrize", &ExperimentConfig::symmetrize)
      .def_property_readonly("model", [](const ExperimentConfig& c) { return to_string(c.model.kind); })
      .def_property_readonly("x", [](const ExperimentConfig& c) { return nodes(c.grid); })
      .def("set", [](ExperimentConfig& c, const std::string& name, double value) { set_parameter(c, name, value); },
           py::arg("name"), py::arg("value"))
      .def("validate", &ExperimentConfig::validate)
      .def("to_ini", [](const ExperimentConfig& c) { return format_config(c); })
      .def("__repr__", [](const ExperimentConfig& c) {
        return "<selfsim.Config model=" + std::string(to_string(c.model.kind)) +
               " iterations=" + std::to_string(c.iterations) + ">";
      });

  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config_string, py::arg("text"));

  py::class_<RgReport>(m, "Report")
      .def_property_readonly("iterations", [](const RgReport& r) { return r.history.iterations(); })
      .def_property_readonly("components", [](const RgReport& r) { return r.history.components(); })
      .def("alpha", [](const RgReport& r, std::size_t c) { return to_numpy(r.history.alpha(c)); },
           py::arg("component") = 0)
      .def("alpha_bar", [](const RgReport& r, std::size_t c) { return to_numpy(r.history.alpha_bar(c)); },
           py::arg("component") = 0)
      .def("prefactor", [](const RgReport& r, std::size_t c) { return to_numpy(r.history.prefactor(c)); },
           py::arg("component") = 0)
      .def_property_readonly("beta", [](const RgReport& r) { return to_numpy(r.history.beta()); })
      .def_property_readonly("beta_bar", [](const RgReport& r) { return to_numpy(r.history.beta_bar()); })
      .def_property_readonly("gamma", [](const RgReport& r) { return to_numpy(r.history.gamma()); })
      .def_property_readonly("x", [](const RgReport& r) { return nodes(r.final_u.grid()); })
      .def_property_readonly("final_u", [](const RgReport& r) { return to_numpy(r.final_u.data()); })
      .def_property_readonly("final_v", [](const RgReport& r) -> py::object {
        if (!r.final_v) return py::none();
        return to_numpy(r.final_v->data());
      })
      .def_property_readonly("failure", [](const RgReport& r) -> py::object {
        if (!r.failure) return py::none();
        return py::str(r.failure->what());
      })
      .def_readonly("warnings", &RgReport::warnings);

  m.def("run", &run_experiment, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("kdv_direct_simulation",
        [](const ExperimentConfig& c, double t_end) { return to_numpy(kdv_direct_simulation(c, t_end).data()); },
        py::arg("config"), py::arg("t_end"));

  m.def(
      "sweep",
      [](const ExperimentConfig& c, const std::string& param, const std::vector<double>& values, unsigned jobs) {
        std::vector<SweepPoint> pts;
        {
          py::gil_scoped_release release;
          pts = sweep(c, param, values, jobs);
        }
        py::list out;
        for (auto& p : pts) {
          py::object rep = p.report ? py::cast(std::move(*p.report)) : py::object(py::none());
          py::object err = p.error ? py::object(py::str(p.error->what())) : py::object(py::none());
          out.append(py::make_tuple(p.value, rep, err));
        }
        return out;
      },
      py::arg("config"), py::arg("param"), py::arg("values"), py::arg("jobs") = 1);

  m.def(
      "estimate_costs",
      [](const ExperimentConfig& c, std::size_t n) {
        const CostEstimate e = estimate_costs(c, n);
        py::dict d;
        d["direct_steps"] = e.direct_steps;
        d["nrg_steps"] = e.nrg_steps;
        d["beta"] = e.beta;
        d["crossover"] = e.crossover ? py::cast(*e.crossover) : py::none();
        return d;
      },
      py::arg("config"), py::arg("n"));

  m.def("write_run_outputs", &write_run_outputs, py::arg("dir"), py::arg("report"), py::arg("config"));
  m.def(
      "compare",
      [](const std::string& dir, const std::string& oracle) {
        const CompareReport r = compare_run(dir, oracle);
        py::dict d;
        d["sup"] = r.discrepancy.sup;
        d["l2"] = r.discrepancy.l2;
        d["lines"] = r.lines;
        return d;
      },
      py::arg("run_dir"), py::arg("oracle") = "self");

  m.def("whitham_g", &whitham_g, py::arg("z"), py::arg("R"));
  m.def("dipole_profile", &dipole_profile, py::arg("z_hat"), py::arg("nu"));
  m.def("erfcx", &erfcx, py::arg("x"));
  m.def("gaussian_phi", &gaussian_phi, py::arg("x"), py::arg("d"));
  m.def(
      "cole_wagner_alpha",
      [](double eps, bool quadratic) {
        return cole_wagner_alpha(eps, quadratic ? PerturbationOrder::Quadratic : PerturbationOrder::Linear);
      },
      py::arg("epsilon"), py::arg("quadratic") = false);
  m.def(
      "absorption_alpha_theory",
      [](double p, double mm, int dim) {
        const AbsorptionTheory t = absorption_alpha_theory(p, mm, dim);
        return py::make_tuple(t.alpha, t.p_star);
      },
      py::arg("p"), py::arg("m") = 0.0, py::arg("dim") = 1);
  m.def(
      "li_qi_constants",
      [](double p, double q, double d, double A, double L) {
        const LiQiConstants c = li_qi_constants(p, q, d, A, L);
        py::dict out;
        out["B"] = c.B;
        out["gamma"] = c.gamma;
        out["A_star"] = c.A_star;
        out["A_v"] = c.A_v;
        return out;
      },
      py::arg("p"), py::arg("q"), py::arg("d"), py::arg("A"), py::arg("L"));
  m.def("table_a1", [] {
    py::list rows;
    for (const auto& r : table_a1()) {
      rows.append(py::make_tuple(r.epsilon, r.alpha_linear, r.alpha_quadratic, r.alpha_computed));
    }
    return rows;
  });
}
