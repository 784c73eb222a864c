#include "hypwarp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hypwarp/acceptance.hpp"

namespace hypwarp {

namespace {

json config_to_json(const RunConfig& cfg) {
  return json{{"subcommand", cfg.subcommand},
              {"metric", cfg.metric},
              {"dim", cfg.dim},
              {"family", cfg.family},
              {"warp", cfg.warp},
              {"a", cfg.a},
              {"d", cfg.d},
              {"xi", cfg.xi},
              {"eps", cfg.eps},
              {"c", cfg.c},
              {"t0_list", cfg.t0_list},
              {"grid_space", cfg.grid_space},
              {"grid_t", cfg.grid_t},
              {"block_space", cfg.block_space},
              {"block_t", cfg.block_t},
              {"fd_step", cfg.fd_step},
              {"use_fd", cfg.use_fd},
              {"seed", cfg.seed},
              {"planes", cfg.planes},
              {"points", cfg.points},
              {"region", {cfg.region_lo, cfg.region_hi}},
              {"verify_ball_close", cfg.verify_ball_close},
              {"allow_small_radius", cfg.allow_small_radius},
              {"n", cfg.n},
              {"c_in", cfg.c_in},
              {"eps_g", cfg.eps_g},
              {"c_sphere", cfg.c_sphere},
              {"t0", cfg.t0}};
}

Warp warp_of(const std::string& name) {
  if (name == "exp") return Warp{WarpKind::Exp};
  if (name == "sinh") return Warp{WarpKind::Sinh};
  if (name == "none") return Warp{WarpKind::None};
  fail(ErrorCode::ConfigParse, "unknown warp '" + name + "' (expected exp|sinh|none)");
}

struct Resolved {
  AtlasPtr atlas;
  MetricOnAtlas metric;
};

Resolved resolve_metric(const RunConfig& cfg) {
  Resolved r;
  const std::string name = cfg.metric.substr(0, cfg.metric.find(':'));
  int dim = cfg.dim;
  if (name == "ellipsoid") {
    int axes = 1;
    for (char ch : cfg.metric)
      if (ch == ',') ++axes;
    dim = axes - 1;
  }
  if (name == "flat")
    r.atlas = make_torus_atlas(dim);
  else
    r.atlas = make_sphere_atlas(dim);
  r.metric = builtin_metric(cfg.metric, r.atlas);

  if (cfg.use_fd) {
    for (auto& field : r.metric.fields) {
      auto analytic = field;
      field = std::make_shared<FdSpaceMetric>(
          dim, [analytic](const Vec& x) { return analytic->value(x); }, cfg.fd_step);
    }
  }
  return r;
}

// The measurement family named by --family, plus the t samples it should be
// scanned on.
struct ResolvedFamily {
  FamilyOnAtlas fam;
  RegularityGrid grid;
};

ResolvedFamily resolve_family(const RunConfig& cfg, const Resolved& r) {
  ResolvedFamily out;
  out.grid.space_points = cfg.grid_space;
  out.grid.t_points = cfg.grid_t;
  if (cfg.family == "const") {
    out.fam = constant_family(r.metric, {cfg.region_lo, cfg.region_hi});
  } else if (cfg.family.rfind("linear", 0) == 0) {
    double slope = 0.05;
    const auto colon = cfg.family.find(':');
    if (colon != std::string::npos) slope = std::stod(cfg.family.substr(colon + 1));
    out.fam = scaled_family(constant_family(r.metric, {cfg.region_lo, cfg.region_hi}),
                            Schedule::linear(slope));
  } else if (cfg.family == "interp") {
    out.fam = family_from_interpolation(r.metric, Schedule::bump({cfg.a, cfg.d}),
                                        {0.0, std::numeric_limits<double>::infinity()});
    out.grid.t_samples.clear();
    for (double phase : linspace(0.02, 0.98, cfg.grid_t))
      out.grid.t_samples.push_back(cfg.a + 0.5 * cfg.d * phase);
  } else {
    fail(ErrorCode::ConfigParse, "unknown family '" + cfg.family + "' (expected interp|const|linear[:slope])");
  }
  return out;
}

std::vector<Center> chart_centers(const RunConfig& cfg, const AtlasPtr& atlas) {
  std::vector<Vec> pts;
  Vec coords(atlas->dim(), 0.0);
  double v = 0.5;
  for (int i = 0; i < atlas->dim(); ++i, v *= 0.6) coords[i] = v;
  pts.push_back(atlas->to_ambient(0, coords));
  Rng rng(cfg.seed ^ 0xc3u);
  for (int i = 0; i < 2; ++i) {
    if (atlas->ambient_dim() == atlas->dim() + 1)
      pts.push_back(rng.unit_vector(atlas->ambient_dim()));
    else
      pts.push_back(atlas->to_ambient(0, Vec(atlas->dim(), rng.uniform(-0.5, 0.5))));
  }
  std::vector<Center> centers;
  for (double t0 : cfg.t0_list)
    for (const Vec& p : pts) centers.push_back({p, t0});
  return centers;
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path, const std::vector<std::string>& set_flags) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigParse, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json values;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      values = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ConfigParse, std::string("config JSON: ") + e.what());
    }
  } else {
    values = json::object();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty()) continue;
      try {
        values[key] = std::stod(val);
      } catch (const std::exception&) {
        values[key] = val;
      }
    }
  }

  auto overridden = [&](const std::string& key) {
    return std::find(set_flags.begin(), set_flags.end(), key) != set_flags.end();
  };
  auto num = [&](const char* key, auto& field) {
    if (values.contains(key) && !overridden(key)) field = values[key].get<double>();
  };
  auto integer = [&](const char* key, auto& field) {
    if (values.contains(key) && !overridden(key))
      field = static_cast<std::remove_reference_t<decltype(field)>>(values[key].get<double>());
  };
  auto str = [&](const char* key, std::string& field) {
    if (values.contains(key) && !overridden(key)) field = values[key].get<std::string>();
  };

  str("metric", cfg.metric);
  str("family", cfg.family);
  str("warp", cfg.warp);
  integer("dim", cfg.dim);
  num("a", cfg.a);
  num("d", cfg.d);
  num("xi", cfg.xi);
  num("eps", cfg.eps);
  num("c", cfg.c);
  integer("grid_space", cfg.grid_space);
  integer("grid_t", cfg.grid_t);
  integer("block_space", cfg.block_space);
  integer("block_t", cfg.block_t);
  num("fd_step", cfg.fd_step);
  integer("seed", cfg.seed);
  integer("planes", cfg.planes);
  integer("points", cfg.points);
  num("region_lo", cfg.region_lo);
  num("region_hi", cfg.region_hi);
  integer("n", cfg.n);
  num("c_in", cfg.c_in);
  num("eps_g", cfg.eps_g);
  num("c_sphere", cfg.c_sphere);
  num("t0", cfg.t0);
}

json run_constants(const RunConfig& cfg) {
  LedgerInputs in;
  in.n = cfg.n;
  in.c = static_cast<real_ext>(cfg.c_in);
  in.xi = static_cast<real_ext>(cfg.xi);
  in.eps = static_cast<real_ext>(cfg.eps);
  in.t0 = static_cast<real_ext>(cfg.t0);
  in.eps_g = static_cast<real_ext>(cfg.eps_g);
  in.c_sphere = static_cast<real_ext>(cfg.c_sphere);
  return to_json(ledger(in));
}

json run_bounded(const RunConfig& cfg) {
  const Resolved r = resolve_metric(cfg);
  RegularityGrid grid;
  grid.space_points = cfg.grid_space;
  const BoundednessReport rep = check_bounded(r.metric, grid);
  return json{{"metric", cfg.metric},
              {"atlas_margin", r.atlas->niceness_margin()},
              {"bounded", to_json(rep)}};
}

json run_slowness(const RunConfig& cfg) {
  const Resolved r = resolve_metric(cfg);
  const ResolvedFamily rf = resolve_family(cfg, r);
  const BoundednessReport bounded = check_bounded(patches_of(rf.fam), rf.fam.t, rf.grid);
  const double c = cfg.c > 0.0 ? cfg.c : bounded.c_hat * (1.0 + 1e-9);
  const SlownessReport rep = measure_slowness(patches_of(rf.fam), rf.fam.t, c, rf.grid,
                                              SlownessSampling{32, 8, 4, cfg.seed});
  return json{{"metric", cfg.metric},
              {"family", cfg.family},
              {"bounded", to_json(bounded)},
              {"slowness", to_json(rep)}};
}

json run_verify_chart(const RunConfig& cfg, std::string* csv) {
  const Resolved r = resolve_metric(cfg);
  if (cfg.t0_list.empty()) fail(ErrorCode::ConfigParse, "verify-chart needs a nonempty --t0 list");
  const double t0_min = *std::min_element(cfg.t0_list.begin(), cfg.t0_list.end());
  const double t0_max = *std::max_element(cfg.t0_list.begin(), cfg.t0_list.end());
  const double lo = t0_min - (1.0 + cfg.xi) - 0.5;
  if (!(lo > 0.0))
    fail(ErrorCode::InputOutOfRange, "smallest t0 leaves no room for the chart above t = 0");
  const FamilyOnAtlas fam = constant_family(r.metric, {lo, t0_max + 1.0 + cfg.xi + 0.5});

  RegularityGrid grid;
  grid.space_points = cfg.grid_space;
  grid.t_points = cfg.grid_t;
  const double c = cfg.c > 0.0 ? cfg.c : check_bounded(fam, grid).c_hat * (1.0 + 1e-9);

  const std::vector<Center> centers = chart_centers(cfg, r.atlas);
  const EtaBoundReport rep =
      eta_bound_check(fam, c, cfg.xi, centers, warp_of(cfg.warp), grid, SlownessSampling{16, 4, 4, cfg.seed},
                      BlockGridSpec{cfg.block_space, cfg.block_t});

  if (csv) {
    std::ostringstream os;
    os << "t0,measured_eta\n";
    for (double t0 : cfg.t0_list) {
      double worst = 0.0;
      for (const CenterDeviation& cd : rep.per_center)
        if (cd.center.t0 == t0) worst = std::max(worst, cd.deviation);
      os << t0 << "," << worst << "\n";
    }
    *csv = os.str();
  }
  return json{{"metric", cfg.metric}, {"warp", cfg.warp}, {"c", c}, {"eta_bound", to_json(rep)}};
}

json run_deform(const RunConfig& cfg, std::string* csv) {
  const Resolved r = resolve_metric(cfg);
  if (r.atlas->ambient_dim() != r.atlas->dim() + 1)
    fail(ErrorCode::ConfigParse, "deform expects a sphere metric");
  const DeformedMetric t_ad = deform(r.metric, {cfg.a, cfg.d});

  json rep{{"metric", cfg.metric}, {"a", cfg.a}, {"d", cfg.d}};

  if (cfg.d >= 8.0) {
    RegularityGrid grid;
    grid.space_points = cfg.grid_space;
    grid.t_points = cfg.grid_t;
    const DeformationSlownessReport sb =
        deformation_slowness_bound(r.metric, t_ad.params, grid, SlownessSampling{16, 4, 4, cfg.seed});
    rep["slowness_bound"] = {{"eps_g", sb.eps_g}, {"bound", sb.bound}, {"measured", sb.measured},
                             {"pass", sb.pass}};
  }

  if (cfg.verify_ball_close) {
    RegularityGrid grid;
    grid.space_points = cfg.grid_space;
    grid.t_points = 5;
    const double c_g = check_bounded(r.metric, grid).c_hat;
    const double c_sphere = check_bounded(builtin_metric("round", r.atlas), grid).c_hat;
    const double hyp = hyperbolic_threshold(cfg.eps, r.atlas->dim() + 1, cfg.xi, c_sphere);

    BallCloseOptions opt;
    opt.xi = cfg.xi;
    opt.c = cfg.c > 0.0 ? cfg.c : c_g + c_sphere;
    opt.hyp_threshold = hyp;
    opt.enforce_radius = !cfg.allow_small_radius;
    opt.sphere_samples = 4;
    opt.seed = cfg.seed;
    opt.grid = BlockGridSpec{cfg.grid_space, 2 * cfg.grid_t - 1};
    const BallCloseReport ball = ball_close_verdict(t_ad, cfg.eps, opt);
    rep["ball_close"] = to_json(ball);
    rep["inputs"] = {{"c_g", c_g}, {"c_sphere", c_sphere}, {"hyp_threshold", hyp}};
  }

  if (csv) {
    std::ostringstream os;
    os << "t,sup_k_plus_1\n";
    Rng rng(cfg.seed ^ 0xcafeu);
    const double hi = std::min({cfg.region_hi, cfg.a + 0.5 * cfg.d + 2.0, 300.0});
    for (double t : linspace(std::max(0.5, cfg.region_lo), hi, 25)) {
      std::vector<Vec> pts0, pts1;
      for (int i = 0; i < 12; ++i) {
        const ChartLocation loc = r.atlas->best_chart(rng.unit_vector(r.atlas->ambient_dim()));
        Vec xt = loc.coords;
        xt.push_back(t);
        (loc.chart == 0 ? pts0 : pts1).push_back(xt);
      }
      double sup = 0.0;
      if (!pts0.empty())
        sup = std::max(sup, pinching_report(*t_ad.block(0), pts0, cfg.planes, cfg.seed, 1.0).sup_deviation);
      if (!pts1.empty())
        sup = std::max(sup, pinching_report(*t_ad.block(1), pts1, cfg.planes, cfg.seed, 1.0).sup_deviation);
      os << t << "," << sup << "\n";
    }
    *csv = os.str();
  }
  return rep;
}

json run_curvature(const RunConfig& cfg, std::string* csv) {
  const Resolved r = resolve_metric(cfg);
  const double lo = std::max(cfg.region_lo, 1e-3);
  const double hi = cfg.region_hi;
  const FamilyOnAtlas fam = constant_family(r.metric, {std::min(lo, 0.5), hi + 1.0});
  const Warp warp = warp_of(cfg.warp);

  Rng rng(cfg.seed);
  std::vector<std::vector<Vec>> chart_points(r.atlas->num_charts());
  for (int i = 0; i < cfg.points; ++i) {
    Vec ambient;
    if (r.atlas->ambient_dim() == r.atlas->dim() + 1)
      ambient = rng.unit_vector(r.atlas->ambient_dim());
    else {
      ambient.assign(r.atlas->dim(), 0.0);
      for (int k = 0; k < r.atlas->dim(); ++k) ambient[k] = rng.uniform(-1.5, 1.5);
    }
    const ChartLocation loc = r.atlas->best_chart(ambient);
    Vec xt = loc.coords;
    xt.push_back(rng.uniform(lo, hi));
    chart_points[loc.chart].push_back(xt);
  }

  PinchingReport merged;
  merged.eps = cfg.eps;
  merged.k_min = 1e300;
  merged.k_max = -1e300;
  json per_chart = json::array();
  for (int chart = 0; chart < r.atlas->num_charts(); ++chart) {
    if (chart_points[chart].empty()) continue;
    WarpedBlockMetric block(fam.families[chart], warp);
    const PinchingReport rep =
        pinching_report(block, chart_points[chart], cfg.planes, cfg.seed ^ chart, cfg.eps);
    merged.samples += rep.samples;
    merged.k_min = std::min(merged.k_min, rep.k_min);
    merged.k_max = std::max(merged.k_max, rep.k_max);
    if (rep.sup_deviation > merged.sup_deviation) {
      merged.sup_deviation = rep.sup_deviation;
      merged.worst_point = rep.worst_point;
    }
    per_chart.push_back(to_json(rep));
  }
  merged.pass = merged.sup_deviation < cfg.eps;

  if (csv) {
    std::ostringstream os;
    os << "k_plus_1,count\n";
    for (const json& chart_rep : per_chart)
      for (const json& bin : chart_rep["histogram"])
        os << bin["k_plus_1"].get<double>() << "," << bin["count"].get<std::size_t>() << "\n";
    *csv = os.str();
  }
  json summary = to_json(merged);
  summary.erase("histogram");
  return json{{"metric", cfg.metric}, {"warp", cfg.warp}, {"region", {lo, hi}},
              {"summary", summary},   {"per_chart", per_chart}};
}

json run_suite(const RunConfig& cfg, std::ostream* progress, bool* all_pass) {
  const SuiteResult suite = run_acceptance_suite(cfg.seed, progress);
  if (all_pass) *all_pass = suite.all_pass;
  return suite.report;
}

json envelope(const RunConfig& cfg, json report) {
  return json{{"tool", "hypwarp"},
              {"version", "0.1.0"},
              {"subcommand", cfg.subcommand},
              {"timestamp", iso_timestamp_utc()},
              {"seed", cfg.seed},
              {"config", config_to_json(cfg)},
              {"report", std::move(report)}};
}

namespace {

void write_output(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) fail(ErrorCode::ConfigParse, "cannot write '" + cfg.out_path + "'");
    f << doc.dump(2) << "\n";
  }
}

void write_csv(const RunConfig& cfg, const std::string& csv) {
  if (cfg.csv_path.empty()) return;
  std::ofstream f(cfg.csv_path);
  if (!f) fail(ErrorCode::ConfigParse, "cannot write '" + cfg.csv_path + "'");
  f << csv;
}

}  // namespace

int dispatch(RunConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    json report;
    int rc = 0;
    std::string csv;
    std::string* csv_slot = cfg.csv_path.empty() ? nullptr : &csv;

    if (cfg.subcommand == "constants") {
      report = run_constants(cfg);
    } else if (cfg.subcommand == "bounded") {
      report = run_bounded(cfg);
    } else if (cfg.subcommand == "slowness") {
      report = run_slowness(cfg);
    } else if (cfg.subcommand == "verify-chart") {
      report = run_verify_chart(cfg, csv_slot);
      if (!report["eta_bound"]["pass"].get<bool>()) rc = 1;
    } else if (cfg.subcommand == "deform") {
      report = run_deform(cfg, csv_slot);
      if (cfg.verify_ball_close && !report["ball_close"]["verdict"].get<bool>()) rc = 1;
    } else if (cfg.subcommand == "curvature") {
      report = run_curvature(cfg, csv_slot);
    } else if (cfg.subcommand == "suite") {
      bool all_pass = false;
      report = run_suite(cfg, &err, &all_pass);
      rc = all_pass ? 0 : 1;
    } else {
      fail(ErrorCode::ConfigParse, "unknown subcommand '" + cfg.subcommand + "'");
    }

    write_output(cfg, envelope(cfg, std::move(report)), out);
    write_csv(cfg, csv);
    return rc;
  } catch (const Error& e) {
    json doc = envelope(cfg, json{{"error", {{"code", to_string(e.code())}, {"message", e.what()}}}});
    out << doc.dump(2) << "\n";
    switch (e.code()) {
      case ErrorCode::ConfigParse:
      case ErrorCode::InputOutOfRange:
        err << e.what() << "\n";
        return 2;
      case ErrorCode::RadiusTooSmall:
      case ErrorCode::ThresholdNotMet:
        return 1;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hypwarp
