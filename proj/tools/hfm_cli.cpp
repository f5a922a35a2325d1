#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hfm/suites.hpp"

using namespace hfm;
using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

json complex_json(cplx z) {
  if (z == q_infinity_sentinel()) return "inf";
  return json::array({z.real(), z.imag()});
}

json report_json(const CheckReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = complex_json(v);
  json j{{"suite", r.suite},         {"name", r.name}, {"params", params},
         {"residual", r.residual},   {"tolerance", r.tolerance},
         {"pass", r.pass},           {"seed", r.seed}};
  if (r.must_exceed) j["must_exceed"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

struct Common {
  std::string w, wp, c = "0", mu;
  std::vector<std::string> q;
  int samples = 0;
  std::uint64_t seed = 20240611;
  double tol = 0;
  std::string out;
  bool stable = false;
  bool serial = false;
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("--w", o.w, "half-period w, e.g. 1/2");
  app->add_option("--wp", o.wp, "half-period w', e.g. 0.7i");
  app->add_option("--c", o.c, "shift c of the covering");
  app->add_option("--mu", o.mu, "modulus; sets w = 1/2, w' = mu/2")->excludes("--wp");
  app->add_option("--q", o.q, "deformation parameter(s), a+bi or inf");
  app->add_option("--samples", o.samples, "samples per grid axis")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--tol", o.tol, "override every tolerance")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output file (default stdout)");
  app->add_flag("--stable-order", o.stable, "sort report lines");
  app->add_flag("--serial", o.serial, "run the checks serially");
}

SuiteConfig make_config(const Common& o) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  if (o.tol > 0) cfg.tol = o.tol;
  cfg.tol_scale = tolerance_profile_from_env();
  cfg.exec = o.serial ? Exec::serial : Exec::parallel;
  for (const auto& q : o.q) cfg.q_values.push_back(parse_complex(q));
  if (!o.mu.empty() || !o.wp.empty()) {
    const cplx w = o.w.empty() ? cplx(0.5) : parse_complex(o.w);
    const cplx wp = o.mu.empty() ? parse_complex(o.wp) : parse_complex(o.mu) * w;
    try {
      cfg.coverings.emplace_back(w, wp, parse_complex(o.c));
    } catch (const Error& e) {
      fail(ErrorKind::usage, std::string("invalid covering: ") + e.what());
    }
  } else if (!o.w.empty()) {
    fail(ErrorKind::usage, "--w needs --wp or --mu");
  }
  return cfg;
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) fail(ErrorKind::usage, "cannot open " + path);
  return file;
}

int run_verify(const std::string& suite, const Common& o) {
  if (!is_suite(suite)) fail(ErrorKind::usage, "unknown suite '" + suite + "'");
  const SuiteConfig cfg = make_config(o);
  const auto t0 = std::chrono::steady_clock::now();
  auto reports = run_suite(suite, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.stable) stable_sort_reports(reports);
  std::ofstream file;
  std::ostream& os = output(o.out, file);
  int failed = 0;
  for (const auto& r : reports) {
    os << report_json(r).dump() << '\n';
    if (!r.pass) ++failed;
  }
  for (const auto& r : reports)
    if (!r.pass) std::cerr << "FAIL " << report_json(r).dump() << '\n';
  std::cerr << suite << ": " << reports.size() << " checks, " << failed << " failed, " << secs << " s\n";
  return failed == 0 ? kExitPass : kExitFail;
}

std::vector<double> parse_range(const std::string& spec) {
  // lo:hi:n[:log]
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4) fail(ErrorKind::usage, "--range expects lo:hi:n[:log]");
  const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
  const int n = std::stoi(parts[2]);
  const bool log = parts.size() == 4 && parts[3] == "log";
  if (parts.size() == 4 && !log) fail(ErrorKind::usage, "--range scale must be log");
  if (n < 1 || (log && (lo <= 0 || hi <= 0))) fail(ErrorKind::usage, "invalid --range");
  std::vector<double> v;
  for (int k = 0; k < n; ++k) {
    const double f = n == 1 ? 0.0 : double(k) / (n - 1);
    v.push_back(log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
  }
  return v;
}

int run_sweep(const std::string& suite, const std::string& param, const std::string& range, const Common& o) {
  SweepParam p;
  if (param == "q") p = SweepParam::q_abs;
  else if (param == "mu") p = SweepParam::mu_im;
  else if (param == "kappa") p = SweepParam::kappa;
  else fail(ErrorKind::usage, "--param must be q, mu or kappa");
  const auto rows = sweep(suite, p, parse_range(range), make_config(o));
  std::ofstream file;
  std::ostream& os = output(o.out, file);
  os << "parameter,check,residual\n";
  os.precision(17);
  for (const auto& r : rows) os << r.param << ',' << r.check << ',' << r.residual << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual suites for deformed Hurwitz Frobenius structures at genus one"};
  app.require_subcommand(1);
  Common vo, so;
  std::string vsuite, ssuite, param, range;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", vsuite, "theta, chazy, torus, kernels, frobenius3, isomono, tau, realdouble or all")
      ->required();
  add_common(verify, vo);
  auto* sw = app.add_subcommand("sweep", "tabulate one residual against a parameter (CSV)");
  sw->add_option("suite", ssuite, "suite name")->required();
  sw->add_option("--param", param, "q, mu or kappa")->required();
  sw->add_option("--range", range, "lo:hi:n[:log]")->required();
  add_common(sw, so);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    if (*verify) return run_verify(vsuite, vo);
    return run_sweep(ssuite, param, range, so);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
