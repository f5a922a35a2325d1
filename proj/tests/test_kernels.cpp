#include <doctest.h>

#include "hfm/kernels.hpp"
#include "oracles.hpp"

using namespace hfm;

namespace {
const TorusCovering kCov(0.5, cplx(0.1, 0.7), 0.2);
const cplx kP(0.13, 0.21), kQ(0.31, -0.07);
}  // namespace

TEST_CASE("deformation parameter") {
  CHECK_THROWS_AS(DeformationParam::from_q(0.0), Error);
  CHECK_THROWS_AS(DeformationParam::from_q(cplx(1, 3), true), Error);
  CHECK(DeformationParam::infinity().is_infinite());
  auto q = DeformationParam::from_q(cplx(2, 1));
  CHECK(std::abs(q.inv_shift(cplx(0.1, 0.5), ErrorKind::divisor) - 1.0 / cplx(2.1, 1.5)) < 1e-15);
  try {
    q.inv_shift(cplx(-2, -1), ErrorKind::divisor);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divisor);
  }
}

TEST_CASE("W and Wq evaluations") {
  CHECK(std::abs(W_eval(kP, kQ, kCov) - W_eval(kQ, kP, kCov)) < 1e-14 * std::abs(W_eval(kP, kQ, kCov)));
  auto q = DeformationParam::from_q(cplx(2, 1));
  CHECK(std::abs(Wq_eval(kP, kQ, kCov, q) - Wq_eval(kQ, kP, kCov, q)) < 1e-14);
  CHECK_THROWS_AS(W_eval(kP, kP, kCov), Error);
  TorusCovering c(0.5, cplx(0, 0.55));
  CHECK_THROWS_AS(Wq_eval(kP, kQ, c, DeformationParam::from_q(cplx(0, -1.1))), Error);
  // |Wq - W| ~ C/|q| with stable C
  auto diff = [&](double a) { return a * std::abs(Wq_eval(kP, kQ, kCov, DeformationParam::from_q(a * cplx(2, 1))) - W_eval(kP, kQ, kCov)); };
  CHECK(std::abs(diff(1e7) / diff(1e8) - 1.0) < 1e-6);
}

TEST_CASE("periods") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto pw = kernel_periods(KernelKind::W, kQ, kCov, q);
  CHECK(std::abs(pw.a) < 1e-9);
  CHECK(std::abs(pw.b / two_pi_i - 1.0 / (2.0 * kCov.w())) < 1e-9);
  auto pq = kernel_periods(KernelKind::Wq, kQ, kCov, q);
  CHECK(std::abs(pq.a + q.inv() * pq.b) < 1e-8);
  auto s = kernel_periods(KernelKind::Schiffer, kQ, kCov, q);
  auto b = kernel_periods(KernelKind::Bergman, kQ, kCov, q);
  CHECK(std::abs(s.a + b.a) < 1e-8);
  auto qi = DeformationParam::from_q(cplx(0, 3), true);
  auto o = kernel_periods(KernelKind::OmegaQ, kQ, kCov, qi);
  auto bq = kernel_periods(KernelKind::BQ, kQ, kCov, qi);
  CHECK(std::abs(o.a + bq.a + qi.inv() * o.b) < 1e-7);
  CHECK(std::abs(o.b + bq.b) < 1e-7);
}

TEST_CASE("v and muOmega") {
  const VData v = v_and_muOmega(kCov);
  CHECK(std::abs(v.mu_omega.real()) < 1e-12);
  const cplx mu = kCov.mu(), mub = std::conj(mu);
  CHECK(std::abs(v.mu_omega - mub / (mub - mu) * mu) < 1e-14);
  // Re of the a- and b-periods of v: 1/2 and 0
  CHECK(std::abs((v.v * 2.0 * kCov.w()).real() - 0.5) < 1e-9);
  CHECK(std::abs((v.v * 2.0 * kCov.wp()).real()) < 1e-9);
}

TEST_CASE("Schiffer and Bergman") {
  auto sb = schiffer_bergman_eval(kP, kQ, kCov);
  const cplx om = 1.0 / (2.0 * kCov.w());
  CHECK(std::abs(sb.bergman - pi / kCov.mu().imag() * om * std::conj(om)) < 1e-14);
  // basis change (a, b) -> (b, -a): w -> w', w' -> -w
  TorusCovering swapped(kCov.wp(), -kCov.w(), kCov.c());
  CHECK(rel_residual(schiffer_bergman_eval(kP, kQ, swapped).omega, sb.omega) < 1e-7);
  auto qi = DeformationParam::from_q(cplx(0, 1e8), true);
  auto d = deformed_schiffer_bergman(kP, kQ, kCov, qi);
  CHECK(std::abs(d.omega - sb.omega) < 1e-6);
  CHECK(std::abs(d.bergman - sb.bergman) < 1e-6);
}

TEST_CASE("kernels at ramification points") {
  const RamificationData rd = ramification_data(kCov);
  const Modulus& m = kCov.modulus();
  const cplx r3 = theta_const(3, m, 2) / theta_const(3, m);
  const cplx r4 = theta_const(4, m, 2) / theta_const(4, m);
  const cplx w12 = kernel_at_ramification(KernelKind::W, 0, 1, kCov, DeformationParam::infinity(), rd);
  const cplx cf12 = -rd.omega[0] * rd.omega[1] * r3;
  CHECK(rel_residual(w12 * w12, cf12 * cf12) < 1e-8);
  const cplx w23 = kernel_at_ramification(KernelKind::W, 1, 2, kCov, DeformationParam::infinity(), rd);
  const cplx cf23 = -rd.omega[1] * rd.omega[2] * r4;
  CHECK(rel_residual(w23 * w23, cf23 * cf23) < 1e-8);
  auto q = DeformationParam::from_q(cplx(2, 1));
  const cplx wq = kernel_at_ramification(KernelKind::Wq, 0, 2, kCov, q, rd);
  const cplx w = kernel_at_ramification(KernelKind::W, 0, 2, kCov, q, rd);
  CHECK(std::abs(wq - w + two_pi_i / (kCov.mu() + cplx(2, 1)) * rd.omega[0] * rd.omega[2]) < 1e-10);
}

TEST_CASE("Rauch residuals") {
  TorusCovering c(0.5, cplx(0, 0.6), 0.0);
  auto q = DeformationParam::from_q(cplx(2, 1));
  CHECK(rauch_residual(KernelKind::W, kP, kQ, 0, c, q).residual < 1e-6);
  CHECK(rauch_residual(KernelKind::Wq, kP, kQ, 0, c, q).residual < 1e-6);
  CHECK(holomorphy_residual(KernelKind::W, kP, kQ, 0, c, q) < 1e-7);
  auto qi = DeformationParam::from_q(cplx(0, 3), true);
  for (int j = 0; j < 3; ++j) CHECK(rauch_residual_deformed(kP, kQ, j, kCov, qi).residual < 1e-5);
}

TEST_CASE("Bergman projective connection") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  const RamificationData rd = ramification_data(kCov);
  for (int i = 0; i < 3; ++i) {
    auto S = bergman_projective_connection(i, kCov);
    const cplx ref = oracle::s_w_closed(kCov.eta1(), kCov.w(), weierstrass_p(rd.sigma[i], kCov), rd.pp2[i]);
    CHECK(std::abs(S.value - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
    CHECK(S.error < 1e-6);
    const cplx Sq = projective_connection_Wq(i, kCov, q, S.value, rd);
    CHECK(std::abs(Sq - S.value + two_pi_i / (kCov.mu() + cplx(2, 1)) * rd.omega[i] * rd.omega[i]) < 1e-8);
  }
  // dS_1/dlambda_2 = W(P1, P2)^2 / 2
  auto g = lambda_gradient([](const TorusCovering& c) { return bergman_projective_connection(0, c).value; }, kCov, true);
  const cplx w12 = kernel_at_ramification(KernelKind::W, 0, 1, kCov, q, rd);
  CHECK(rel_residual(g.d[1], w12 * w12 / 2.0) < 1e-5);
}

TEST_CASE("projector action against the Stokes oracle") {
  auto qi = DeformationParam::from_q(cplx(0, 3), true);
  const VData v = v_and_muOmega(kCov);
  const cplx expect = -v.mu_omega / (v.mu_omega + cplx(0, 3)) * v.v;
  const cplx got = projector_action(kQ, kCov, qi, 64, Exec::serial);
  CHECK(std::abs(got - expect) < 1e-6 * std::abs(v.v));
  const cplx c = kernel_constant(KernelKind::OmegaQ, kCov, qi);
  const cplx st = oracle::projector_stokes([&](cplx z) { return weierstrass_zeta(z, kCov); }, kQ, kCov.w(), kCov.wp(), c,
                                           std::conj(v.v));
  CHECK(std::abs(got - st) < 1e-8 * std::abs(v.v));
  CHECK(std::abs(projector_action(kQ, kCov, DeformationParam::infinity(true))) < 1e-8 * std::abs(v.v));
  CHECK(projector_action(kQ, kCov, qi, 64, Exec::parallel) == got);
}
