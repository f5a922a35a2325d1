#include <doctest.h>

#include "hfm/frobenius3.hpp"
#include "hfm/tau.hpp"

using namespace hfm;

namespace {

cplx euler_sum(const TorusCovering& cov, const TauOdeResult& r) {
  const auto l = branch_points(cov);
  return l[0] * r.lhs[0] + l[1] * r.lhs[1] + l[2] * r.lhs[2];
}

// Removes the 2 pi i/24 ambiguity of the fractional powers in G.
std::vector<cplx> aligned_differences(const std::vector<cplx>& d) {
  std::vector<cplx> out;
  for (cplx x : d) out.emplace_back(x.real(), d[0].imag() + wrap_symmetric(x.imag() - d[0].imag(), 2 * pi / 24));
  return out;
}

}  // namespace

TEST_CASE("tau_W factors") {
  TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);
  auto t = tau_w(cov);
  CHECK(t.log_factors.size() == 3);
  CHECK(std::abs(t.value() / t.factor_product() - 1.0) < 1e-10);
  cplx sum = 0;
  for (const auto& f : t.log_factors) sum += f.second;
  CHECK(std::abs(sum - t.log_tau) < 1e-14);
  auto tq = tau_wq(cov, DeformationParam::from_q(cplx(2, 1)));
  CHECK(tq.log_factors.size() == 4);
  CHECK(std::abs(tq.log_tau - t.log_tau - std::log(1.0 + cov.mu() / cplx(2, 1))) < 1e-14);
  auto ti = tau_wq(cov, DeformationParam::infinity());
  CHECK(std::abs(ti.log_tau - t.log_tau) < 1e-15);
  try {
    tau_wq(TorusCovering(0.5, cplx(0, 0.55)), DeformationParam::from_q(cplx(0, -1.1)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divisor);
  }
}

TEST_CASE("log_near picks the branch closest to the reference") {
  CHECK(std::abs(log_near(cplx(-1, 1e-9), cplx(0, -3.0)) - cplx(0, -pi)) < 1e-8);
  CHECK(std::abs(log_near(cplx(2), cplx(0, 6.0)) - cplx(std::log(2.0), 2 * pi)) < 1e-15);
}

TEST_CASE("defining equations of tau_W and tau_Wq") {
  TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto w = tau_w_ode(cov);
  CHECK(w.max() < 1e-5);
  CHECK(tau_wq_ode(cov, q).max() < 1e-5);
  CHECK(tau_wq_ode(cov, DeformationParam::from_q(1e8)).max() < 1e-5);
  CHECK(tau_i_relation(cov, q).max() < 1e-5);
  CHECK(tau_i_relation(cov, DeformationParam::from_q(1e8)).max() < 1e-5);
  // tau_W is homogeneous of degree 1/4 in the branch points
  TorusCovering scaled(cov.w() / std::sqrt(2.0), cov.wp() / std::sqrt(2.0), 2.0 * cov.c());
  CHECK(std::abs(euler_sum(cov, w) - 0.25) < 1e-5);
  CHECK(std::abs(euler_sum(scaled, tau_w_ode(scaled)) - 0.25) < 1e-5);
}

TEST_CASE("Euler-type actions on the deformed projective connection") {
  auto r = s_wq_actions(TorusCovering(0.5, cplx(0.1, 0.9), 0.2), DeformationParam::from_q(cplx(2, 1)));
  for (int i = 0; i < 3; ++i) {
    CHECK(r.e[i] < 1e-5);
    CHECK(r.E[i] < 1e-4);
  }
}

TEST_CASE("tau_Omega_q defining equations") {
  TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);
  auto r = tau_omega_q_ode(cov, DeformationParam::from_q(cplx(0, 3), true));
  CHECK(r.d.max() < 1e-4);
  CHECK(r.dbar.max() < 1e-4);
  const cplx big = log_tau_omega_q(cov, DeformationParam::from_q(cplx(0, 1e8), true));
  const cplx inf = log_tau_omega_q(cov, DeformationParam::infinity(true));
  CHECK(std::abs(big - inf) < 1e-7);
}

TEST_CASE("G assembly") {
  TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);
  auto q = DeformationParam::from_q(cplx(2, 1));
  CHECK(std::abs(g_assembly(cov, q, 2.0) - g_assembly(cov, q) + 3.0 / 24.0 * std::log(2.0)) < 1e-14);
  Sampler s(5);
  for (auto qq : {q, DeformationParam::from_q(1e8)}) {
    std::vector<cplx> d;
    for (int k = 0; k < 5; ++k) {
      TorusCovering c(s.box(0.4, 0.8, -0.1, 0.1), s.box(-0.3, 0.3, 0.7, 1.4) * 0.5, s.box(-0.3, 0.3, -0.3, 0.3));
      d.push_back(g_function3(flat_coords3(c, qq), qq) - g_assembly(c, qq));
    }
    CHECK(variance(aligned_differences(d)) < 1e-7);
  }
}
