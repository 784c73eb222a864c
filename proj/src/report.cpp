#include "hypwarp/report.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace hypwarp {

json ext_to_json(real_ext v) {
  if (std::isnan(v)) return nullptr;
  if (std::fabs(static_cast<long double>(v)) <= static_cast<long double>(DBL_MAX))
    return static_cast<double>(v);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.18Le", v);
  return std::string(buf);
}

json to_json(const ConstantsLedger& led) {
  json inputs = {{"n", led.in.n},
                 {"c", ext_to_json(led.in.c)},
                 {"xi", ext_to_json(led.in.xi)},
                 {"eps", ext_to_json(led.in.eps)},
                 {"t0", ext_to_json(led.in.t0)},
                 {"eps_g", ext_to_json(led.in.eps_g)},
                 {"c_sphere", ext_to_json(led.in.c_sphere)}};
  return json{{"inputs", inputs},
              {"c1", ext_to_json(led.c1)},
              {"c2", ext_to_json(led.c2)},
              {"c3", ext_to_json(led.c3)},
              {"c4", ext_to_json(led.c4)},
              {"c5", ext_to_json(led.c5)},
              {"c6", ext_to_json(led.c6)},
              {"c7", ext_to_json(led.c7)},
              {"c8", ext_to_json(led.c8)},
              {"c9", ext_to_json(led.c9)},
              {"c10", ext_to_json(led.c10)},
              {"c11", ext_to_json(led.c11)},
              {"c12", ext_to_json(led.c12)},
              {"c13", ext_to_json(led.c13)},
              {"max_deviation_bound", ext_to_json(led.max_deviation_bound)},
              {"C", ext_to_json(led.big_c)},
              {"C1", ext_to_json(led.big_c1)},
              {"C2", ext_to_json(led.big_c2)},
              {"C2_prime", ext_to_json(led.big_c2_prime)},
              {"slowness_bridge_c14", ext_to_json(led.slowness_bridge_c14)},
              {"a_prime", ext_to_json(led.a_prime)},
              {"eps3_coeff_a", ext_to_json(led.eps3_coeff_a)},
              {"eps3_coeff_b", ext_to_json(led.eps3_coeff_b)},
              {"hyp_threshold", ext_to_json(led.hyp_threshold)},
              {"a_threshold", ext_to_json(led.a_threshold)},
              {"d_threshold", ext_to_json(led.d_threshold)}};
}

json to_json(const BoundednessReport& rep) {
  return json{{"c_hat", rep.c_hat},
              {"sup_c2", rep.sup_c2},
              {"inv_det", rep.inv_det},
              {"per_chart", rep.per_chart},
              {"attained", {{"chart", rep.attained.chart},
                            {"value", rep.attained.value},
                            {"point", rep.attained.point},
                            {"t", rep.attained.t}}},
              {"grid", {{"space_points", rep.grid.space_points}, {"t_points", rep.grid.t_points}}}};
}

json to_json(const SlownessReport& rep) {
  return json{{"eps1", rep.eps1},
              {"eps1_k1", rep.eps1_k1},
              {"eps1_k2", rep.eps1_k2},
              {"eps2", rep.eps2},
              {"eps3", rep.eps3},
              {"direct_eps", rep.direct_eps},
              {"direct_eps_i", rep.direct_eps_i},
              {"direct_eps_ii", rep.direct_eps_ii},
              {"c_used", rep.c_used},
              {"sampling", {{"random_const_fields", rep.sampling.random_const_fields},
                            {"random_linear_fields", rep.sampling.random_linear_fields},
                            {"random_directions", rep.sampling.random_directions},
                            {"seed", rep.sampling.seed}}},
              {"grid", {{"space_points", rep.grid.space_points}, {"t_points", rep.grid.t_points}}}};
}

json to_json(const DeviationReport& rep) {
  return json{{"c0", rep.c0},
              {"d1_sup", rep.d1_sup},
              {"d2_sup", rep.d2_sup},
              {"c2_norm", rep.c2_norm},
              {"attaining_point", rep.attaining_point},
              {"attaining_class", rep.attaining_class},
              {"classes", rep.class_count()},
              {"grid", {{"space_points", rep.grid.space_points}, {"t_points", rep.grid.t_points}}}};
}

json to_json(const RadialCloseVerdict& verdict) {
  return json{{"close", verdict.close},
              {"eps", verdict.eps},
              {"worst_deviation", verdict.worst_deviation},
              {"worst_center", {{"ambient", verdict.worst_center.ambient}, {"t0", verdict.worst_center.t0}}},
              {"worst_report", to_json(verdict.worst_report)},
              {"centers_checked", verdict.centers_checked}};
}

json to_json(const EtaBoundReport& rep) {
  json centers = json::array();
  for (const CenterDeviation& c : rep.per_center)
    centers.push_back({{"t0", c.center.t0},
                       {"ambient", c.center.ambient},
                       {"deviation", c.deviation},
                       {"lambda", c.lambda}});
  return json{{"measured_eta", rep.measured_eta}, {"bound_eta", rep.bound_eta},
              {"eps_hat", rep.eps_hat},           {"c_hat", rep.c_hat},
              {"T", rep.big_t},                   {"pass", rep.pass},
              {"per_center", centers}};
}

json to_json(const PinchingReport& rep) {
  json hist = json::array();
  for (const auto& [center, count] : rep.histogram) hist.push_back({{"k_plus_1", center}, {"count", count}});
  return json{{"sup_deviation", rep.sup_deviation},
              {"k_min", rep.k_min},
              {"k_max", rep.k_max},
              {"samples", rep.samples},
              {"pass", rep.pass},
              {"eps", rep.eps},
              {"worst_point", rep.worst_point},
              {"histogram", hist}};
}

json to_json(const BallCloseReport& rep) {
  return json{{"verdict", rep.verdict},
              {"condition1_exact", rep.condition1_exact},
              {"radius_ok", rep.radius_ok},
              {"required_radius", rep.required_radius},
              {"eps", rep.eps},
              {"centers", rep.centers.size()},
              {"radial", to_json(rep.radial)}};
}

json to_json(const HypChart& chart) {
  json a = json::array();
  for (int i = 0; i < chart.a.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < chart.a.n(); ++j) row.push_back(chart.a(i, j));
    a.push_back(row);
  }
  return json{{"chart_index", chart.chart_index},
              {"center_coords", chart.center_coords},
              {"center_ambient", chart.center_ambient},
              {"t0", chart.t0},
              {"A", a},
              {"lambda", chart.lambda},
              {"c4", chart.c4},
              {"c", chart.c},
              {"c_eff", chart.c_eff},
              {"xi", chart.xi},
              {"warp", chart.warp.name()}};
}

std::string iso_timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

}  // namespace hypwarp
