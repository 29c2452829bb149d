#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rfw/algorithms.hpp"
#include "rfw/analysis.hpp"
#include "rfw/experiment.hpp"
#include "rfw/gaps.hpp"

namespace py = pybind11;
using namespace rfw;

namespace {

py::dict log_to_dict(const RunLog& log) {
  py::dict d;
  py::list records;
  for (const auto& r : log.records) {
    py::dict row;
    row["t"] = r.t;
    row["restart_index"] = r.restart_index;
    row["step_type"] = to_string(r.step_type);
    row["eta"] = r.eta;
    row["f"] = r.f_value;
    row["fw_gap"] = r.fw_gap;
    row["strong_wolfe_gap"] = r.strong_wolfe_gap;
    row["active_set_size"] = r.active_set_size;
    row["lmo_calls"] = r.lmo_calls;
    row["grad_calls"] = r.grad_calls;
    records.append(row);
  }
  py::list boundaries;
  for (const auto& b : log.restart_boundaries) {
    py::dict row;
    row["restart_index"] = b.restart_index;
    row["t"] = b.t;
    row["gap_at_restart"] = b.gap_at_restart;
    row["active_set_size"] = b.active_set_size;
    row["burn_in"] = b.burn_in;
    boundaries.append(row);
  }
  d["records"] = records;
  d["restart_boundaries"] = boundaries;
  d["termination"] = to_string(log.termination);
  d["final_x"] = log.final_x;
  d["final_f"] = log.final_f;
  d["final_fw_gap"] = log.final_fw_gap;
  d["final_strong_wolfe_gap"] = log.final_strong_wolfe_gap;
  d["lmo_calls"] = log.counters.lmo_calls;
  d["grad_calls"] = log.counters.grad_calls;
  d["iterations"] = log.iterations;
  return d;
}

SolverConfig make_config(double gamma, double target_gap, std::int64_t max_oracle_calls,
                         const std::optional<std::string>& line_search) {
  SolverConfig cfg;
  cfg.gamma = gamma;
  cfg.target_gap = target_gap;
  cfg.max_oracle_calls = max_oracle_calls;
  if (line_search) cfg.line_search = line_search_from_string(*line_search);
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Restarted away-step Frank-Wolfe solvers";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<DivergedError>(m, "DivergedError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Vertex>(m, "Vertex")
      .def_readonly("point", &Vertex::point)
      .def_property_readonly("id", [](const Vertex& v) { return v.id.to_string(); })
      .def("__repr__", [](const Vertex& v) { return "<Vertex " + v.id.to_string() + ">"; });

  py::class_<FeasibleRegion>(m, "FeasibleRegion")
      .def_static("l1_ball", &FeasibleRegion::l1_ball, py::arg("dim"), py::arg("radius"))
      .def_static("lp_ball", &FeasibleRegion::lp_ball, py::arg("dim"), py::arg("radius"),
                  py::arg("p"))
      .def_static("simplex", &FeasibleRegion::simplex, py::arg("dim"), py::arg("scale") = 1.0)
      .def_static("box", &FeasibleRegion::box, py::arg("lower"), py::arg("upper"))
      .def_property_readonly("dim", &FeasibleRegion::dim)
      .def_property_readonly("is_polytope", &FeasibleRegion::is_polytope)
      .def_property_readonly("name", &FeasibleRegion::name)
      .def("contains", &FeasibleRegion::contains, py::arg("x"), py::arg("tol") = 1e-8)
      .def("vertices", &FeasibleRegion::vertices)
      .def("diameter", [](const FeasibleRegion& r) { return region_diameter(r); });

  m.def("lmo", &lmo, py::arg("region"), py::arg("c"));
  m.def("random_extreme_point", &random_extreme_point, py::arg("region"), py::arg("seed"));

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const Matrix& X, const Vector& y) {
             Dataset d{X, y, std::nullopt};
             d.validate();
             return d;
           }),
           py::arg("X"), py::arg("y"))
      .def_readonly("X", &Dataset::X)
      .def_readonly("y", &Dataset::y)
      .def_readonly("planted", &Dataset::planted);

  m.def(
      "generate_synthetic",
      [](const std::string& kind, int n, int dim, double noise, std::uint64_t seed) {
        SyntheticKind k;
        if (kind == "regression") {
          k = SyntheticKind::Regression;
        } else if (kind == "classification") {
          k = SyntheticKind::Classification;
        } else {
          throw DomainError("kind must be 'regression' or 'classification'");
        }
        return generate_synthetic(k, n, dim, noise, seed);
      },
      py::arg("kind"), py::arg("n_samples"), py::arg("dim"), py::arg("noise"), py::arg("seed"));
  m.def("load_csv", &load_csv, py::arg("path"));

  py::class_<Objective>(m, "Objective")
      .def_static("least_squares", &Objective::least_squares, py::arg("data"))
      .def_static("powered_norm", &Objective::powered_norm, py::arg("data"), py::arg("alpha"))
      .def_static("logistic", &Objective::logistic, py::arg("data"))
      .def_static("squared_distance", &Objective::squared_distance, py::arg("center"))
      .def_property_readonly("kind", [](const Objective& o) { return to_string(o.kind()); })
      .def_property_readonly("dim", &Objective::dim)
      .def("value", &Objective::value, py::arg("w"))
      .def("gradient", &Objective::gradient, py::arg("w"))
      .def("smoothness", &Objective::smoothness);

  m.def(
      "compute_gaps",
      [](const FeasibleRegion& region, const Objective& obj, const Vector& x) {
        OracleCounters counters;
        const auto g = compute_gaps(region, obj, x, nullptr, counters).report;
        py::dict d;
        d["fw_gap"] = g.fw_gap;
        d["fw_vertex"] = g.fw_vertex;
        return d;
      },
      py::arg("region"), py::arg("objective"), py::arg("x"));

  m.def(
      "scheduled_restarts",
      [](const FeasibleRegion& region, const Objective& obj, const Vertex& x0, double gamma,
         double target_gap, std::int64_t max_oracle_calls,
         std::optional<std::string> line_search) {
        const auto cfg = make_config(gamma, target_gap, max_oracle_calls, line_search);
        py::gil_scoped_release release;
        return scheduled_restarts(region, obj, x0, cfg);
      },
      py::arg("region"), py::arg("objective"), py::arg("x0"), py::arg("gamma") = 0.5,
      py::arg("target_gap") = 1e-8, py::arg("max_oracle_calls") = 100000,
      py::arg("line_search") = py::none());

  m.def(
      "vanilla_fw",
      [](const FeasibleRegion& region, const Objective& obj, const Vector& x0, double target_gap,
         std::int64_t max_oracle_calls, std::optional<std::string> line_search) {
        const auto cfg = make_config(0.5, target_gap, max_oracle_calls, line_search);
        py::gil_scoped_release release;
        return vanilla_fw(region, obj, x0, cfg);
      },
      py::arg("region"), py::arg("objective"), py::arg("x0"), py::arg("target_gap") = 1e-8,
      py::arg("max_oracle_calls") = 100000, py::arg("line_search") = py::none());

  m.def(
      "restart_fractional_fw",
      [](const FeasibleRegion& region, const Objective& obj, const Vector& x0, double gamma,
         double target_gap, std::int64_t max_oracle_calls,
         std::optional<std::string> line_search) {
        const auto cfg = make_config(gamma, target_gap, max_oracle_calls, line_search);
        py::gil_scoped_release release;
        return restart_fractional_fw(region, obj, x0, cfg);
      },
      py::arg("region"), py::arg("objective"), py::arg("x0"), py::arg("gamma") = 0.5,
      py::arg("target_gap") = 1e-8, py::arg("max_oracle_calls") = 100000,
      py::arg("line_search") = py::none());

  m.def(
      "one_shot_large_gamma",
      [](const FeasibleRegion& region, const Objective& obj, const Vertex& x0, double epsilon,
         std::int64_t max_oracle_calls, std::optional<std::string> line_search) {
        const auto cfg = make_config(0.5, epsilon, max_oracle_calls, line_search);
        py::gil_scoped_release release;
        return one_shot_large_gamma(region, obj, ActiveSet::singleton(x0), epsilon, cfg);
      },
      py::arg("region"), py::arg("objective"), py::arg("x0"), py::arg("epsilon"),
      py::arg("max_oracle_calls") = 100000, py::arg("line_search") = py::none());

  py::class_<RunLog>(m, "RunLog")
      .def_property_readonly("termination",
                             [](const RunLog& l) { return to_string(l.termination); })
      .def_readonly("final_x", &RunLog::final_x)
      .def_readonly("final_f", &RunLog::final_f)
      .def_readonly("final_fw_gap", &RunLog::final_fw_gap)
      .def_readonly("final_strong_wolfe_gap", &RunLog::final_strong_wolfe_gap)
      .def_readonly("iterations", &RunLog::iterations)
      .def_property_readonly("oracle_calls", [](const RunLog& l) { return l.counters.total(); })
      .def("to_dict", &log_to_dict)
      .def("to_csv", &run_csv, py::arg("f_star"));

  m.def(
      "theoretical_bound",
      [](double r, double mu, double curvature, double gamma, double w0, double t) {
        RateParams p;
        p.r = r;
        p.mu = mu;
        p.curvature = curvature;
        return theoretical_bound(p, gamma, w0, t);
      },
      py::arg("r"), py::arg("mu"), py::arg("curvature"), py::arg("gamma"), py::arg("w0"),
      py::arg("t_tilde"));

  m.def(
      "recurrence_check",
      [](double h0, double m_, double beta, std::int64_t t_max) {
        const auto r = recurrence_check(h0, m_, beta, t_max);
        py::dict d;
        d["ok"] = r.ok;
        d["k"] = r.k;
        d["c_prime"] = r.c_prime;
        d["c"] = r.c;
        d["first_violation"] = r.first_violation;
        return d;
      },
      py::arg("h0"), py::arg("m"), py::arg("beta"), py::arg("t_max"));

  m.def(
      "fit_rate",
      [](const std::vector<double>& t, const std::vector<double>& gap, const std::string& model,
         double tail_fraction) {
        RateModel rm;
        if (model == "loglinear") {
          rm = RateModel::LogLinear;
        } else if (model == "loglog") {
          rm = RateModel::LogLog;
        } else {
          throw DomainError("model must be 'loglinear' or 'loglog'");
        }
        const auto f = fit_rate(t, gap, rm, tail_fraction);
        py::dict d;
        d["slope"] = f.slope;
        d["intercept"] = f.intercept;
        d["r_squared"] = f.r_squared;
        d["points"] = f.points;
        return d;
      },
      py::arg("t"), py::arg("gap"), py::arg("model"), py::arg("tail_fraction") = 0.5);

  m.def("solve", &cmd_solve, py::arg("config_path"), py::call_guard<py::gil_scoped_release>());
  m.def("compare", &cmd_compare, py::arg("config_path"),
        py::call_guard<py::gil_scoped_release>());
  m.def("check_rates", &cmd_check_rates, py::arg("config_path"),
        py::call_guard<py::gil_scoped_release>());
}
