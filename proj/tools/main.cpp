#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypwarp/runner.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) values.push_back(std::stod(tok));
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypwarp — warped-metric deformation and chart verification toolkit"};
  app.require_subcommand(1);

  hypwarp::RunConfig cfg;
  std::string t0_text;
  std::string region_text;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON or key=value config file (flags win on conflict)");
    sub->add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
    sub->add_option("--seed", cfg.seed, "RNG seed for every sampled quantity");
    sub->add_option("--grid", cfg.grid_space, "space grid points per axis for sup scans");
    sub->add_option("--grid-t", cfg.grid_t, "t samples for sup scans");
    sub->add_option("--fd-step", cfg.fd_step, "central-difference step for --fd");
    sub->add_flag("--fd", cfg.use_fd, "replace analytic metric derivatives by finite differences");
  };

  CLI::App* constants = app.add_subcommand("constants", "evaluate the full constants ledger");
  constants->add_option("--n", cfg.n, "manifold dimension")->required();
  constants->add_option("--c", cfg.c_in, "boundedness constant (> 1)")->required();
  constants->add_option("--xi", cfg.xi, "chart excess");
  constants->add_option("--eps", cfg.eps, "slowness epsilon");
  constants->add_option("--t0", cfg.t0, "chart center time");
  constants->add_option("--eps-g", cfg.eps_g, "slowness of the interpolation family");
  constants->add_option("--c-sphere", cfg.c_sphere, "round-metric boundedness (defaults to c)");
  add_common(constants);

  CLI::App* bounded = app.add_subcommand("bounded", "boundedness certificate of a metric");
  bounded->add_option("--metric", cfg.metric, "round | ellipsoid:a1,..,ak | bumpy:amp,freq | flat");
  bounded->add_option("--dim", cfg.dim, "manifold dimension for round/bumpy/flat");
  add_common(bounded);

  CLI::App* slowness = app.add_subcommand("slowness", "slowness measurement of a metric family");
  slowness->add_option("--metric", cfg.metric, "metric spec");
  slowness->add_option("--dim", cfg.dim, "manifold dimension");
  slowness->add_option("--family", cfg.family, "interp | const | linear[:slope]");
  slowness->add_option("--a", cfg.a, "deformation core radius (interp family)");
  slowness->add_option("--d", cfg.d, "deformation stretch (interp family)");
  slowness->add_option("--c", cfg.c, "boundedness constant (0 = measured)");
  slowness->add_option("--region", region_text, "t interval lo,hi for const/linear families");
  add_common(slowness);

  CLI::App* verify = app.add_subcommand("verify-chart", "build charts and verify closeness bounds");
  verify->add_option("--metric", cfg.metric, "metric spec");
  verify->add_option("--dim", cfg.dim, "manifold dimension");
  verify->add_option("--t0", t0_text, "comma-separated chart center times");
  verify->add_option("--xi", cfg.xi, "chart excess");
  verify->add_option("--warp", cfg.warp, "exp | sinh");
  verify->add_option("--c", cfg.c, "boundedness constant threaded to the charts (0 = measured)");
  verify->add_option("--csv", cfg.csv_path, "write (t0, measured_eta) rows here");
  verify->add_option("--block-grid", cfg.block_space, "deviation grid points per space axis");
  verify->add_option("--block-grid-t", cfg.block_t, "deviation grid points in t");
  add_common(verify);

  CLI::App* deform = app.add_subcommand("deform", "two-variable warping deformation");
  deform->add_option("--metric", cfg.metric, "sphere metric spec")->required();
  deform->add_option("--a", cfg.a, "hyperbolic core radius")->required();
  deform->add_option("--d", cfg.d, "stretch length")->required();
  deform->add_flag("--verify-ball-close", cfg.verify_ball_close, "run the ball-closeness verdict");
  deform->add_option("--eps", cfg.eps, "closeness epsilon for the verdict");
  deform->add_option("--xi", cfg.xi, "chart excess");
  deform->add_option("--c", cfg.c, "chart boundedness constant (0 = measured)");
  deform->add_flag("--allow-small-radius", cfg.allow_small_radius,
                   "run the verdict below the radius threshold (informative)");
  deform->add_option("--csv", cfg.csv_path, "write (t, sup|K+1|) rows here");
  deform->add_option("--region", region_text, "t range for the curvature CSV");
  deform->add_option("--planes", cfg.planes, "sampled 2-planes per point for the CSV");
  add_common(deform);

  CLI::App* curvature = app.add_subcommand("curvature", "sectional-curvature pinching report");
  curvature->add_option("--metric", cfg.metric, "metric spec");
  curvature->add_option("--dim", cfg.dim, "manifold dimension");
  curvature->add_option("--warp", cfg.warp, "exp | sinh | none");
  curvature->add_option("--region", region_text, "t interval lo,hi");
  curvature->add_option("--planes", cfg.planes, "sampled 2-planes per point");
  curvature->add_option("--points", cfg.points, "sampled points");
  curvature->add_option("--eps", cfg.eps, "pinching tolerance for the pass flag");
  curvature->add_option("--csv", cfg.csv_path, "write the K+1 histogram here");
  add_common(curvature);

  CLI::App* suite = app.add_subcommand("suite", "run the full acceptance suite");
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.subcommand = active->get_name();

  if (!t0_text.empty()) cfg.t0_list = parse_list(t0_text);
  if (!region_text.empty()) {
    const std::vector<double> region = parse_list(region_text);
    if (region.size() != 2) {
      std::cerr << "--region expects lo,hi\n";
      return 2;
    }
    cfg.region_lo = region[0];
    cfg.region_hi = region[1];
  }

  if (!config_path.empty()) {
    std::vector<std::string> set_flags;
    for (const CLI::Option* opt : active->get_options()) {
      if (opt->count() > 0 && opt->get_name().size() > 2) set_flags.push_back(opt->get_name().substr(2));
    }
    try {
      hypwarp::apply_config_file(cfg, config_path, set_flags);
    } catch (const hypwarp::Error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }

  return hypwarp::dispatch(std::move(cfg), std::cout, std::cerr);
}
