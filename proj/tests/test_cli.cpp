#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef HYPWARP_CLI_PATH
#error "HYPWARP_CLI_PATH must point at the built binary"
#endif

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_file = "/tmp/hypwarp_cli_" + std::to_string(counter++) + ".out";
  const std::string cmd = std::string(HYPWARP_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  std::remove(out_file.c_str());
  return r;
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("constants subcommand reproduces the worked chain") {
  const RunResult r = run_cli("constants --n 2 --c 2 --xi 0 --eps 0 --t0 5");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["subcommand"] == "constants");
  CHECK(doc.contains("timestamp"));
  CHECK(doc["config"]["n"] == 2);
  const double c_val = doc["report"]["C"].get<double>();
  CHECK(c_val == doctest::Approx(4.98e8).epsilon(2e-3));
  CHECK(doc["report"]["c4"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("constants subcommand validates input") {
  const RunResult r = run_cli("constants --n 1 --c 2");
  CHECK(r.exit_code == 2);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["report"]["error"]["code"] == "InputOutOfRange");
}

TEST_CASE("bounded subcommand on the round sphere") {
  const RunResult r = run_cli("bounded --metric round --grid 7");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["report"]["bounded"]["c_hat"].get<double>() >= 4.0);
  CHECK(doc["report"]["atlas_margin"].get<double>() >= 1.0);
}

TEST_CASE("slowness subcommand emits both reports") {
  const RunResult r =
      run_cli("slowness --metric ellipsoid:1,1,2 --a 6 --d 16 --grid 5 --grid-t 5 --seed 9");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["report"]["slowness"]["direct_eps"].get<double>() > 0.0);
  CHECK(doc["report"]["bounded"]["c_hat"].get<double>() > 1.0);
}

TEST_CASE("verify-chart: report, csv, exit code") {
  const std::string csv_path = "/tmp/hypwarp_chart.csv";
  const RunResult r = run_cli("verify-chart --metric round --t0 5,7 --xi 0 --warp exp --grid 5 "
                              "--grid-t 3 --block-grid 9 --block-grid-t 17 --csv " + csv_path);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["report"]["eta_bound"]["pass"].get<bool>());
  CHECK(doc["report"]["eta_bound"]["measured_eta"].get<double>() > 0.0);

  std::ifstream csv(csv_path);
  REQUIRE(csv.good());
  std::string header, row1, row2;
  std::getline(csv, header);
  std::getline(csv, row1);
  std::getline(csv, row2);
  CHECK(header == "t0,measured_eta");
  CHECK(row1.rfind("5,", 0) == 0);
  CHECK(row2.rfind("7,", 0) == 0);
  std::remove(csv_path.c_str());
}

TEST_CASE("deform subcommand with the ball-close verdict gate") {
  // the radius precondition fails at a = 6 for eps = 0.5, so the structured
  // error comes back with exit code 1
  const RunResult gated = run_cli(
      "deform --metric ellipsoid:1,1,2 --a 6 --d 16 --verify-ball-close --eps 0.5 --xi 0 --grid 5 --grid-t 5");
  CHECK(gated.exit_code == 1);
  const json gated_doc = json::parse(gated.stdout_text);
  CHECK(gated_doc["report"]["error"]["code"] == "RadiusTooSmall");

  const RunResult informative = run_cli(
      "deform --metric ellipsoid:1,1,2 --a 8 --d 32 --verify-ball-close --allow-small-radius "
      "--eps 0.9 --xi 0 --c 40 --grid 5 --grid-t 5 --seed 4");
  const json doc = json::parse(informative.stdout_text);
  CHECK(doc["report"]["ball_close"]["condition1_exact"].get<bool>());
  CHECK(doc["report"]["ball_close"]["radial"]["worst_deviation"].get<double>() > 0.0);
}

TEST_CASE("curvature subcommand: hyperbolic warp over a flat chart") {
  const std::string csv_path = "/tmp/hypwarp_curv.csv";
  const RunResult r = run_cli("curvature --metric flat --warp exp --region 1,10 --planes 3 "
                              "--points 40 --eps 1e-6 --seed 11 --csv " + csv_path);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["report"]["summary"]["pass"].get<bool>());
  CHECK(doc["report"]["summary"]["sup_deviation"].get<double>() < 1e-6);
  std::ifstream csv(csv_path);
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k_plus_1,count");
  std::remove(csv_path.c_str());
}

TEST_CASE("config file feeds defaults, flags win") {
  const std::string cfg_path = "/tmp/hypwarp_cfg.json";
  {
    std::ofstream f(cfg_path);
    f << "{\"metric\": \"round\", \"grid_space\": 5, \"t0\": 4.0}\n";
  }
  const RunResult r = run_cli("constants --config " + cfg_path + " --n 2 --c 2 --t0 5");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  CHECK(doc["config"]["t0"].get<double>() == 5.0);  // flag wins over the file
  std::remove(cfg_path.c_str());

  const std::string kv_path = "/tmp/hypwarp_cfg.txt";
  {
    std::ofstream f(kv_path);
    f << "# comment\nt0 = 7\nmetric = round\n";
  }
  const RunResult kv = run_cli("constants --config " + kv_path + " --n 2 --c 2");
  REQUIRE(kv.exit_code == 0);
  CHECK(json::parse(kv.stdout_text)["config"]["t0"].get<double>() == 7.0);
  std::remove(kv_path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("deform --metric round").exit_code == 2);      // missing required a, d
  CHECK(run_cli("curvature --warp spiral").exit_code == 2);    // unknown warp
}

TEST_CASE("suite --seed 42 twice: byte-identical excluding the timestamp") {
  const std::string out1 = "/tmp/hypwarp_suite_1.json";
  const std::string out2 = "/tmp/hypwarp_suite_2.json";
  const RunResult r1 = run_cli("suite --seed 42 --out " + out1);
  const RunResult r2 = run_cli("suite --seed 42 --out " + out2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);

  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  REQUIRE(!a.empty());
  CHECK(strip_timestamp(a) == strip_timestamp(b));
  CHECK(a.find("\"timestamp\"") != std::string::npos);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}
