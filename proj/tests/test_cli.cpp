#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "rforge-cli-tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Spawns the tool through the shell so env prefixes and redirection work.
RunResult run_cli(const std::string& args, const std::string& envPrefix = "") {
  static int counter = 0;
  fs::path scratch =
      fs::temp_directory_path() / "rforge-cli-tests" /
      ("io-" + std::to_string(counter++));
  fs::create_directories(scratch);
  fs::path o = scratch / "stdout.txt", e = scratch / "stderr.txt";
  std::string cmd = envPrefix + " \"" + RFORGE_CLI_PATH + "\" " + args +
                    " > \"" + o.string() + "\" 2> \"" + e.string() + "\"";
  int rc = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

json read_report(const fs::path& dir) {
  return json::parse(slurp(dir / "report.json"));
}

long line_count(const std::string& s) {
  return std::count(s.begin(), s.end(), '\n');
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<double> split_row(const std::string& line) {
  std::vector<double> vals;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      vals.push_back(std::stod(cell));
    } catch (...) {
      vals.push_back(std::nan(""));
    }
  }
  return vals;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("transform writes the full dataset and a passing report") {
  fs::path d = fresh_dir("transform-osc");
  RunResult r = run_cli("transform --example osc-7.1 --out-dir " + d.string());
  REQUIRE(r.code == 0);

  std::string csv = slurp(d / "transform.csv");
  auto lines = split_lines(csv);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "x,V0,V_intermediate,V_image,phi_in,phi_out");
  CHECK(line_count(csv) == 2001);

  json rep = read_report(d);
  CHECK(rep["status"] == "ok");
  CHECK(rep["params"]["example"] == "osc-7.1");
  CHECK(rep["params"]["l"].get<double>() == doctest::Approx(-1.25));
  CHECK(rep["maxResiduals"]["seed_w"].get<double>() <= 1e-5);
  CHECK(rep["maxResiduals"]["seed_v"].get<double>() <= 1e-5);
  CHECK(rep["maxResiduals"]["output"].get<double>() <= 1e-5);
  CHECK(rep["norms"]["eta_sq"].get<double>() ==
        doctest::Approx(0.5459544928261235).epsilon(1e-9));
  CHECK(rep["norms"]["eta_zero_count"].get<double>() == 0.0);
  CHECK(rep["wallTimeSeconds"].get<double>() >= 0.0);
}

TEST_CASE("reruns produce byte-identical datasets") {
  fs::path d1 = fresh_dir("repeat-1");
  fs::path d2 = fresh_dir("repeat-2");
  REQUIRE(run_cli("transform --example osc-7.1 --out-dir " + d1.string())
              .code == 0);
  REQUIRE(run_cli("transform --example osc-7.1 --out-dir " + d2.string())
              .code == 0);
  CHECK(slurp(d1 / "transform.csv") == slurp(d2 / "transform.csv"));
}

TEST_CASE("ladder example reports the expected norm") {
  fs::path d = fresh_dir("transform-coul2");
  RunResult r = run_cli(
      "transform --example coul-7.2 --l 2 --q -1 --k 1 --out-dir " +
      d.string());
  REQUIRE(r.code == 0);
  json rep = read_report(d);
  CHECK(rep["status"] == "ok");
  CHECK(rep["norms"]["eta_sq"].get<double>() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(rep["norms"]["eta_zero_count"].get<double>() == 0.0);
}

TEST_CASE("default parameter sweep") {
  fs::path d = fresh_dir("sweep-coul3");
  RunResult r = run_cli("sweep --example coul-7.3 --out-dir " + d.string());
  REQUIRE(r.code == 0);

  std::string csv = slurp(d / "sweep.csv");
  auto lines = split_lines(csv);
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "l,norm,maxResidual,status");
  double prev = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "ok");
    auto vals = split_row(lines[i]);
    REQUIRE(vals.size() >= 3);
    CHECK(vals[1] > prev);  // norm column strictly increases with l
    prev = vals[1];
  }
  CHECK(read_report(d)["status"] == "ok");
}

TEST_CASE("formal seed variant flags its note and node") {
  fs::path d = fresh_dir("transform-coul4");
  RunResult r = run_cli("transform --example coul-7.4 --out-dir " + d.string());
  REQUIRE(r.code == 0);
  json rep = read_report(d);
  CHECK(rep["norms"]["note_code"].get<double>() == 1.0);
  REQUIRE(rep["norms"]["eta_zero_count"].get<double>() == 1.0);
  double z = rep["norms"]["eta_zero_1"].get<double>();
  CHECK(std::abs(z - 0.1875) <= 1e-8 * 0.1875);
}

TEST_CASE("group law suite passes") {
  fs::path d = fresh_dir("verify-group");
  RunResult r = run_cli("verify --suite group-law --out-dir " + d.string());
  REQUIRE(r.code == 0);
  json rep = read_report(d);
  CHECK(rep["maxResiduals"]["composition"].get<double>() <= 1e-7);
  CHECK(rep["maxResiduals"]["coefficient_action"].get<double>() <= 1e-7);
  CHECK(rep["maxResiduals"]["cocycle"].get<double>() <= 1e-7);
}

TEST_CASE("orthonormality suite passes") {
  fs::path d = fresh_dir("verify-gram");
  RunResult r = run_cli(
      "verify --suite orthonormality --family oscillator --kmax 4 --out-dir " +
      d.string());
  REQUIRE(r.code == 0);
  CHECK(read_report(d)["maxResiduals"]["gram"].get<double>() <= 2e-4);
}

TEST_CASE("bad arguments exit with code 2 and a named constraint") {
  fs::path d = fresh_dir("bad-args");
  RunResult r = run_cli("transform --example osc-7.1 --l 0 --out-dir " +
                        d.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("l must lie strictly between") != std::string::npos);

  RunResult u = run_cli("transform --example osc-9.9 --out-dir " + d.string());
  CHECK(u.code == 2);
  CHECK(u.err.find("example must be one of") != std::string::npos);
}

TEST_CASE("tolerance override fails the run but still writes files") {
  fs::path d = fresh_dir("env-tol");
  RunResult r = run_cli("transform --example osc-7.1 --out-dir " + d.string(),
                        "RICCATI_FORGE_SEED_TOL=1e-30");
  CHECK(r.code == 1);
  CHECK(fs::exists(d / "transform.csv"));
  CHECK(read_report(d)["status"] == "FAILED");
}

TEST_CASE("config file values are overridden by flags") {
  fs::path d = fresh_dir("config");
  fs::path cfg = d / "cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"example": "osc-7.1", "l": -1.35, "samples": 50})";
  }
  RunResult r = run_cli("transform --config " + cfg.string() +
                        " --l -1.25 --out-dir " + d.string());
  REQUIRE(r.code == 0);
  json rep = read_report(d);
  CHECK(rep["params"]["l"].get<double>() == doctest::Approx(-1.25));
  CHECK(rep["params"]["samples"].get<int>() == 50);
  CHECK(line_count(slurp(d / "transform.csv")) == 51);
}

TEST_CASE("window flags lift the sample floor and are echoed") {
  // The window is a clamp, not a hard range: the floor lifts zero-ish lower
  // edges and the cap applies to unbounded tails only, so the observable
  // effect here is a raised first sample.
  fs::path dflt = fresh_dir("window-default");
  RunResult r0 = run_cli("transform --example osc-7.1 --samples 100 --out-dir " +
                         dflt.string());
  REQUIRE(r0.code == 0);
  double firstDefault = split_row(split_lines(slurp(dflt / "transform.csv"))[1])[0];

  fs::path d = fresh_dir("window");
  RunResult r = run_cli(
      "transform --example osc-7.1 --window-lo 0.5 --window-hi 8 "
      "--samples 100 --out-dir " +
      d.string());
  REQUIRE(r.code == 0);
  auto lines = split_lines(slurp(d / "transform.csv"));
  REQUIRE(lines.size() == 101);
  double first = split_row(lines[1])[0];
  CHECK(first > firstDefault);
  CHECK(first >= 0.01);
  json rep = read_report(d);
  CHECK(rep["params"]["window_lo"].get<double>() == 0.5);
  CHECK(rep["params"]["window_hi"].get<double>() == 8.0);
}

TEST_CASE("verify without a suite runs the pipeline checks") {
  fs::path d = fresh_dir("verify-pipeline");
  RunResult r = run_cli("verify --example coul-7.3 --out-dir " + d.string());
  REQUIRE(r.code == 0);
  json rep = read_report(d);
  CHECK(rep["params"]["command"] == "verify");
  CHECK(rep["status"] == "ok");
}

}  // TEST_SUITE
