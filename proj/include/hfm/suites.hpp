#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hfm/kernels.hpp"

namespace hfm {

struct SuiteConfig {
  std::vector<TorusCovering> coverings;  // replaces the default covering grid when non-empty
  std::vector<cplx> q_values;            // replaces the default q grid when non-empty
  int samples = 0;                       // 0: per-suite default
  std::uint64_t seed = 20240611;
  std::optional<double> tol;             // overrides every tolerance (not negative controls)
  double tol_scale = 1.0;                // profile multiplier
  Exec exec = Exec::parallel;
};

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite(const std::string& name);          // accepts "all"

// Runs one suite (or "all"); reports come back in a fixed order.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteConfig& cfg);

// Sort by suite, name, then parameters.
void stable_sort_reports(std::vector<CheckReport>& reports);

// Tolerance multiplier from HFM_TOL_PROFILE (strict 0.1, default 1, loose 10).
double tolerance_profile_from_env();

// Single residual probes used by the sweep command.
enum class SweepParam { q_abs, mu_im, kappa };
struct SweepRow {
  double param;
  std::string check;
  double residual;
};
std::vector<SweepRow> sweep(const std::string& suite, SweepParam param, const std::vector<double>& values,
                            const SuiteConfig& cfg);

// Parses "a+bi"-style complex numbers: "0.5", "1/2", "-1.1i", "2+1i", "i", "0.1+0.9i", "inf".
// Infinity maps to the q = infinity sentinel.
cplx parse_complex(const std::string& s);
cplx q_infinity_sentinel();

}  // namespace hfm
