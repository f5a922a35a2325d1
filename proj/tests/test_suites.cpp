#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hfm/suites.hpp"

using namespace hfm;

namespace {

int run(const std::string& args, const std::string& out = "") {
  std::string cmd = std::string(HFM_CLI_PATH) + " " + args;
  if (!out.empty()) cmd += " --out " + out;
  cmd += " 2>/dev/null >/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<nlohmann::json> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<nlohmann::json> v;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(nlohmann::json::parse(line));
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hfm_test_" + name)).string();
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("0.5") == cplx(0.5));
  CHECK(parse_complex("1/2") == cplx(0.5));
  CHECK(parse_complex("-1.1i") == cplx(0, -1.1));
  CHECK(parse_complex("2+1i") == cplx(2, 1));
  CHECK(parse_complex("i") == I);
  CHECK(parse_complex("-i") == -I);
  CHECK(parse_complex("0.1+0.9i") == cplx(0.1, 0.9));
  CHECK(parse_complex("1e8") == cplx(1e8));
  CHECK(parse_complex("1e3i") == cplx(0, 1e3));
  CHECK(parse_complex("inf") == q_infinity_sentinel());
  for (const char* bad : {"", "abc", "1+", "2++3i", "1/0"}) CHECK_THROWS_AS(parse_complex(bad), Error);
}

TEST_CASE("suite registry") {
  CHECK(is_suite("all"));
  CHECK(is_suite("frobenius3"));
  CHECK_FALSE(is_suite("nosuch"));
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("nosuch", {}), Error);
}

TEST_CASE("suite results are deterministic and independent of execution mode") {
  SuiteConfig cfg;
  cfg.samples = 3;
  auto a = run_suite("frobenius3", cfg);
  cfg.exec = Exec::serial;
  auto b = run_suite("frobenius3", cfg);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() > 3);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].pass);
  }
  auto c = a;
  std::reverse(c.begin(), c.end());
  stable_sort_reports(a);
  stable_sort_reports(c);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].name == c[i].name);
}

TEST_CASE("tolerance override and profiles") {
  SuiteConfig cfg;
  cfg.samples = 1;
  cfg.tol = 1e-300;
  bool any_fail = false, controls_pass = true;
  for (const auto& r : run_suite("frobenius3", cfg)) {
    if (r.must_exceed)
      controls_pass = controls_pass && r.pass;
    else
      any_fail = any_fail || !r.pass;
  }
  CHECK(any_fail);
  CHECK(controls_pass);
  unsetenv("HFM_TOL_PROFILE");
  CHECK(tolerance_profile_from_env() == 1.0);
  setenv("HFM_TOL_PROFILE", "strict", 1);
  CHECK(tolerance_profile_from_env() == 0.1);
  setenv("HFM_TOL_PROFILE", "loose", 1);
  CHECK(tolerance_profile_from_env() == 10.0);
  unsetenv("HFM_TOL_PROFILE");
}

TEST_CASE("sweep rows") {
  SuiteConfig cfg;
  auto rows = sweep("kernels", SweepParam::q_abs, {1e1, 1e2, 1e3, 1e4, 1e5}, cfg);
  REQUIRE(rows.size() == 5);
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].residual < rows[i - 1].residual);
  for (const auto& r : sweep("theta", SweepParam::mu_im, {0.5, 1.0, 2.0, 3.0}, cfg)) CHECK(r.residual < 1e-8);
  for (const auto& r : sweep("frobenius3", SweepParam::kappa, {0.5, 2.0, 3.0}, cfg)) CHECK(r.residual < 1e-9);
}

TEST_CASE("command line exit codes and reports") {
  const std::string rep = tmp("frob.json");
  CHECK(run("verify frobenius3 --q 2+1i --samples 20 --tol 1e-7", rep) == 0);
  auto lines = read_lines(rep);
  CHECK(lines.size() >= 20);
  for (const auto& j : lines) {
    CHECK(j.contains("suite"));
    CHECK(j.contains("params"));
    CHECK(j.contains("residual"));
    CHECK(j.contains("tolerance"));
    CHECK(j["seed"] == 20240611);
  }

  const std::string div = tmp("div.json");
  CHECK(run("verify frobenius3 --q -1.1i --mu 1.1i", div) == 1);
  int divisor_entries = 0;
  for (const auto& j : read_lines(div))
    if (j.contains("note") && j["note"].get<std::string>().find("divisor") != std::string::npos) ++divisor_entries;
  CHECK(divisor_entries > 0);

  CHECK(run("verify nosuch") == 2);
  CHECK(run("verify frobenius3 --q 2+") == 2);
  CHECK(run("verify frobenius3 --samples 0") == 2);
  CHECK(run("verify frobenius3 --w 0.5 --wp 0.1+0.9i --mu 1.1i") == 2);

  const std::string a = tmp("a.json"), b = tmp("b.json");
  CHECK(run("verify isomono --samples 2 --stable-order", a) == 0);
  CHECK(run("verify isomono --samples 2 --stable-order", b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  const std::string csv = tmp("sweep.csv");
  CHECK(run("sweep kernels --param q --range 1e1:1e5:5:log", csv) == 0);
  CHECK(slurp(csv).rfind("parameter,check,residual", 0) == 0);
  CHECK(run("sweep kernels --param nosuch --range 1:2:3") == 2);
}
