#pragma once

#include "hypwarp/report.hpp"

namespace hypwarp {

// Resolved run configuration. A JSON config file may replace flags; flags win
// on conflict. Identical config + seed reproduce the report byte for byte
// (the timestamp lives in its own envelope field).
struct RunConfig {
  std::string subcommand;
  std::string metric = "round";
  int dim = 2;
  std::string family = "interp";  // interp | const | linear:<slope>
  std::string warp = "exp";
  double a = 6.0;
  double d = 16.0;
  double xi = 0.0;
  double eps = 0.5;
  double c = 0.0;  // 0 = use the measured boundedness certificate
  std::vector<double> t0_list{3, 4, 5, 6, 7, 8, 9, 10};
  int grid_space = 9;
  int grid_t = 9;
  int block_space = 17;
  int block_t = 33;
  double fd_step = 1e-4;
  bool use_fd = false;  // swap the analytic oracle for central differences
  std::uint64_t seed = 42;
  int planes = 4;
  int points = 100;
  double region_lo = 1.0;
  double region_hi = 10.0;
  bool verify_ball_close = false;
  bool allow_small_radius = false;
  // constants-subcommand inputs
  int n = 2;
  double c_in = 2.0;
  double eps_g = 0.0;
  double c_sphere = 0.0;
  double t0 = 5.0;

  std::string out_path;  // empty = stdout
  std::string csv_path;
};

// Merges file values under the flag values; key = value text or a JSON object.
void apply_config_file(RunConfig& cfg, const std::string& path, const std::vector<std::string>& set_flags);

json run_constants(const RunConfig& cfg);
json run_bounded(const RunConfig& cfg);
json run_slowness(const RunConfig& cfg);
json run_verify_chart(const RunConfig& cfg, std::string* csv);
json run_deform(const RunConfig& cfg, std::string* csv);
json run_curvature(const RunConfig& cfg, std::string* csv);
json run_suite(const RunConfig& cfg, std::ostream* progress, bool* all_pass);

// Envelope with tool metadata, resolved config, and the isolated timestamp.
json envelope(const RunConfig& cfg, json report);

// exit codes: 0 pass, 1 verification failure, 2 usage error, 3 numeric failure
int dispatch(RunConfig cfg, std::ostream& out, std::ostream& err);

}  // namespace hypwarp
