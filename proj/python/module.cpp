#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hypwarp/acceptance.hpp"
#include "hypwarp/runner.hpp"
#include "hypwarp/spd.hpp"

namespace py = pybind11;
using namespace hypwarp;

namespace {

RunConfig config_from_kwargs(const py::dict& kw) {
  RunConfig cfg;
  for (auto item : kw) {
    const std::string key = py::str(item.first);
    const py::handle v = item.second;
    if (key == "metric") cfg.metric = py::str(v).cast<std::string>();
    else if (key == "family") cfg.family = py::str(v).cast<std::string>();
    else if (key == "warp") cfg.warp = py::str(v).cast<std::string>();
    else if (key == "dim") cfg.dim = v.cast<int>();
    else if (key == "a") cfg.a = v.cast<double>();
    else if (key == "d") cfg.d = v.cast<double>();
    else if (key == "xi") cfg.xi = v.cast<double>();
    else if (key == "eps") cfg.eps = v.cast<double>();
    else if (key == "c") cfg.c = v.cast<double>();
    else if (key == "t0_list") cfg.t0_list = v.cast<std::vector<double>>();
    else if (key == "grid_space") cfg.grid_space = v.cast<int>();
    else if (key == "grid_t") cfg.grid_t = v.cast<int>();
    else if (key == "block_space") cfg.block_space = v.cast<int>();
    else if (key == "block_t") cfg.block_t = v.cast<int>();
    else if (key == "seed") cfg.seed = v.cast<std::uint64_t>();
    else if (key == "planes") cfg.planes = v.cast<int>();
    else if (key == "points") cfg.points = v.cast<int>();
    else if (key == "region_lo") cfg.region_lo = v.cast<double>();
    else if (key == "region_hi") cfg.region_hi = v.cast<double>();
    else if (key == "verify_ball_close") cfg.verify_ball_close = v.cast<bool>();
    else if (key == "allow_small_radius") cfg.allow_small_radius = v.cast<bool>();
    else if (key == "n") cfg.n = v.cast<int>();
    else if (key == "c_in") cfg.c_in = v.cast<double>();
    else if (key == "eps_g") cfg.eps_g = v.cast<double>();
    else if (key == "c_sphere") cfg.c_sphere = v.cast<double>();
    else if (key == "t0") cfg.t0 = v.cast<double>();
    else throw py::key_error("unknown config key '" + key + "'");
  }
  return cfg;
}

std::string run_json(const std::string& subcommand, const py::dict& kw) {
  RunConfig cfg = config_from_kwargs(kw);
  cfg.subcommand = subcommand;
  json report;
  if (subcommand == "constants") report = run_constants(cfg);
  else if (subcommand == "bounded") report = run_bounded(cfg);
  else if (subcommand == "slowness") report = run_slowness(cfg);
  else if (subcommand == "verify-chart") report = run_verify_chart(cfg, nullptr);
  else if (subcommand == "deform") report = run_deform(cfg, nullptr);
  else if (subcommand == "curvature") report = run_curvature(cfg, nullptr);
  else throw py::value_error("unknown subcommand '" + subcommand + "'");
  return report.dump();
}

}  // namespace

PYBIND11_MODULE(_hypwarp, m) {
  m.doc() = "warped-metric deformation and chart verification core";

  m.def("run_json", &run_json, py::arg("subcommand"), py::arg("options") = py::dict(),
        "Run one verification operation; returns the JSON report as a string.");

  m.def(
      "suite_json",
      [](std::uint64_t seed, bool progress) {
        std::ostringstream sink;
        const SuiteResult suite = run_acceptance_suite(seed, progress ? &sink : nullptr);
        json out = suite.report;
        out["progress"] = sink.str();
        return out.dump();
      },
      py::arg("seed") = 42, py::arg("progress") = false,
      "Run the acceptance suite; returns the JSON report as a string.");

  m.def(
      "spd_factor",
      [](const std::vector<std::vector<double>>& g, double c) {
        const int n = static_cast<int>(g.size());
        Mat m_in(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m_in(i, j) = g[i][j];
        const BoundedFactorization f = spd_factor(m_in, c);
        auto to_rows = [n](const Mat& m_out) {
          std::vector<std::vector<double>> rows(n, std::vector<double>(n));
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = m_out(i, j);
          return rows;
        };
        py::dict out;
        out["f"] = to_rows(f.f);
        out["f_inv"] = to_rows(f.f_inv);
        out["eigenvalues"] = f.eigenvalues;
        out["entry_bound"] = f.entry_bound();
        out["inv_entry_bound"] = f.inv_entry_bound();
        return out;
      },
      py::arg("g"), py::arg("c"),
      "Bounded factorization G = F^T F with the eigenvalue sandwich bounds.");

  m.def("bump", &BumpFunction::value, py::arg("t"));
  m.def("bump_d1", &BumpFunction::d1, py::arg("t"));
  m.def("bump_d2", &BumpFunction::d2, py::arg("t"));
  m.def("k_function", &KFunction::value, py::arg("t"));
  m.def(
      "hyperbolic_threshold",
      [](double eps, int n_plus_1, double xi, double c_sphere) {
        return hyperbolic_threshold(eps, n_plus_1, xi, c_sphere);
      },
      py::arg("eps"), py::arg("n_plus_1"), py::arg("xi"), py::arg("c_sphere"));

  py::register_exception<Error>(m, "HypwarpError");
}
