#include <doctest.h>

#include "hfm/isomono.hpp"

using namespace hfm;

TEST_CASE("Omega triplet constraint") {
  const Modulus m(cplx(0, 1.1));
  auto t = omega_triplet(m, DeformationParam::from_q(cplx(2, 1)));
  CHECK(t.constraint_residual() < 1e-9);
  auto big = omega_triplet(m, DeformationParam::from_q(1e8));
  CHECK(big.constraint_residual() < 1e-9);
  auto inf = omega_triplet(m, DeformationParam::infinity());
  CHECK(std::abs(big.O1 - inf.O1) < 1e-7);
  CHECK(inf.constraint_residual() < 1e-9);
  auto fd = omega_triplet_fd(m, DeformationParam::from_q(cplx(2, 1)));
  CHECK(std::abs(fd.O1 - t.O1) < 1e-9);
  CHECK(std::abs(fd.O2 - t.O2) < 1e-9);
  CHECK(std::abs(fd.O3 - t.O3) < 1e-9);
  auto bad = omega_triplet(m, DeformationParam::from_q(cplx(2, 1)), OmegaVariant::doubled_shift_O1);
  CHECK(bad.constraint_residual() > 1e-3);
  try {
    omega_triplet(m, DeformationParam::from_q(cplx(0, -1.1)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divisor);
  }
}

TEST_CASE("notation bridge is a fixed labeled permutation") {
  auto b = babich_korotkin_bridge();
  CHECK(b.omega_source == std::array<int, 3>{2, 0, 1});
  CHECK(b.omega_factor[0] == cplx(1));
  CHECK(b.omega_factor[1] == I);
  CHECK(b.omega_factor[2] == -I);
  CHECK(b.lambda_source == std::array<int, 3>{2, 1, 0});
  CHECK(b.mu_factor == -I);
  auto t = omega_triplet(Modulus(cplx(0.2, 1.3)), DeformationParam::from_q(cplx(2, 1)));
  auto o = apply_bridge(b, t);
  CHECK(o[0] == t.O3);
  CHECK(o[1] == I * t.O1);
  CHECK(o[2] == -I * t.O2);
  // the constraint is not preserved by the bridge's signs: the sum of squares flips sign
  CHECK(std::abs(o[0] * o[0] + o[1] * o[1] + o[2] * o[2] - (t.O3 * t.O3 - t.O1 * t.O1 - t.O2 * t.O2)) < 1e-15);
}

TEST_CASE("system (top)") {
  TorusCovering cov(0.5, cplx(0, 0.7), 0.0);
  auto q = DeformationParam::from_q(cplx(2, 1));
  const double r = top_system_residual(cov, q);
  CHECK(r < 1e-5);
  TorusCovering shifted(0.5, cplx(0, 0.7), 0.4);
  CHECK(std::abs(top_system_residual(shifted, q) - r) < 1e-10);
  CHECK(top_system_residual(cov, q, OmegaVariant::doubled_shift_O1) > 1e-3);
}

TEST_CASE("rotation coefficients from the triplet") {
  TorusCovering cov(0.5, cplx(0.1, 0.8), 0.3);
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto t = omega_triplet(cov.modulus(), q);
  auto l = branch_points(cov);
  auto b = rotation_from_omega(t, l);
  CHECK(b.get(0, 1) == b.get(1, 0));
  CHECK(b.get(1, 2) == b.b23);
  CHECK(std::abs(b.b12 - t.O3 / (l[0] - l[1])) < 1e-15);
  CHECK(rot_euler_residual(cov, q) < 1e-5);
  // lambda -> 2 lambda: w -> w/sqrt2, c -> 2c
  const double k = 2.0;
  TorusCovering scaled(cov.w() / std::sqrt(k), cov.wp() / std::sqrt(k), k * cov.c());
  auto l2 = branch_points(scaled);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(l2[i] - k * l[i]) < 1e-10 * std::abs(l[i]) + 1e-12);
  auto b2 = rotation_from_omega(omega_triplet(scaled.modulus(), q), l2);
  CHECK(std::abs(b2.b12 - b.b12 / k) < 1e-8 * std::abs(b.b12));
  CHECK(std::abs(b2.b13 - b.b13 / k) < 1e-8 * std::abs(b.b13));
  std::array<cplx, 3> coincident{l[0], l[0], l[2]};
  try {
    rotation_from_omega(t, coincident);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }
}

TEST_CASE("rotation coefficients from Wq coincide with the triplet") {
  TorusCovering cov(0.5, cplx(0, 0.8), 0.3);
  auto r = proposition_crosscheck(cov, DeformationParam::from_q(cplx(2, 1)));
  CHECK(r[0] < 1e-7);
  CHECK(r[1] < 1e-7);
  auto lim = proposition_crosscheck(cov, DeformationParam::from_q(1e8));
  CHECK(lim[0] < 1e-7);
  CHECK(lim[1] < 1e-7);
  try {
    proposition_crosscheck(cov.relabeled(Labeling::text), DeformationParam::from_q(cplx(2, 1)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::convention);
  }
}

TEST_CASE("Darboux-Egoroff system") {
  TorusCovering cov(0.5, cplx(0, 0.6), 0.0);
  auto r = darboux_egoroff_residual(cov, DeformationParam::from_q(cplx(2, 1)));
  CHECK(r[0] < 1e-5);
  CHECK(r[1] < 1e-5);
  auto u = darboux_egoroff_residual(cov, DeformationParam::from_q(1e8));
  CHECK(u[0] < 1e-5);
  CHECK(u[1] < 1e-5);
  auto s = darboux_egoroff_residual(cov, DeformationParam::from_q(cplx(2, 1)), 1e-3);
  CHECK(s[0] > 1e-4);
}
