#include "hfm/isomono.hpp"

namespace hfm {

namespace {

// theta_k'' / (4 pi i theta_k) = d/dmu log theta_k(0) via the heat equation
OmegaTriplet assemble(cplx mu, const DeformationParam& q, cplx d2, cplx d3, cplx d4, const Modulus& m,
                      OmegaVariant variant) {
  const cplx s = q.inv_shift(mu, ErrorKind::divisor);
  const cplx th2 = theta_const(2, m), th3 = theta_const(3, m), th4 = theta_const(4, m);
  const cplx s1 = variant == OmegaVariant::doubled_shift_O1 ? 2.0 * s : s;
  OmegaTriplet t{0, 0, 0, mu, q};
  t.O1 = -(2.0 * d4 + s1) / (pi * th2 * th2 * th3 * th3);
  t.O2 = -(2.0 * d2 + s) / (pi * th3 * th3 * th4 * th4);
  t.O3 = -(2.0 * d3 + s) / (pi * I * th2 * th2 * th4 * th4);
  return t;
}

}  // namespace

OmegaTriplet omega_triplet(const Modulus& m, const DeformationParam& q, OmegaVariant variant) {
  return assemble(m.mu(), q, dlog_theta_const(2, m), dlog_theta_const(3, m), dlog_theta_const(4, m), m, variant);
}

OmegaTriplet omega_triplet_fd(const Modulus& m, const DeformationParam& q, const DiffConfig& cfg) {
  std::array<cplx, 3> d;
  for (int k = 2; k <= 4; ++k) {
    auto f = [k](cplx mu) { return std::log(theta_const(k, Modulus(mu))); };
    d[k - 2] = nth_derivative(f, m.mu(), 1, cfg).value;
  }
  return assemble(m.mu(), q, d[0], d[1], d[2], m, OmegaVariant::standard);
}

NotationBridge babich_korotkin_bridge() {
  return {{2, 0, 1}, {1.0, I, -I}, {2, 1, 0}, -I};
}

std::array<cplx, 3> apply_bridge(const NotationBridge& b, const OmegaTriplet& t) {
  const std::array<cplx, 3> O{t.O1, t.O2, t.O3};
  std::array<cplx, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = b.omega_factor[k] * O[b.omega_source[k]];
  return out;
}

cplx RotationCoefficients::get(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return b12;
  if (i == 0 && j == 2) return b13;
  if (i == 1 && j == 2) return b23;
  fail(ErrorKind::usage, "rotation coefficient needs distinct indices");
}

RotationCoefficients rotation_from_omega(const OmegaTriplet& t, const std::array<cplx, 3>& l) {
  const double scale = std::abs(l[0]) + std::abs(l[1]) + std::abs(l[2]);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(l[i] - l[j]) < 1e-12 * scale) fail(ErrorKind::degenerate, "coincident branch points");
  return {t.O3 / (l[0] - l[1]), t.O2 / (l[2] - l[0]), t.O1 / (l[1] - l[2]), RotationSource::from_omega, true};
}

RotationCoefficients rotation_from_Wq(const TorusCovering& cov, const DeformationParam& q,
                                      const RamificationData* align, double shift12) {
  const RamificationData rd = ramification_data(cov, align);
  auto b = [&](int i, int j) { return kernel_at_ramification(KernelKind::Wq, i, j, cov, q, rd) / 2.0; };
  return {b(0, 1) + shift12, b(0, 2), b(1, 2), RotationSource::from_Wq, rd.principal};
}

namespace {

double mixed(cplx a, cplx b) {
  const double d = std::abs(a - b);
  return std::max(d, d / std::abs(b));
}

}  // namespace

std::array<double, 2> proposition_crosscheck(const TorusCovering& cov, const DeformationParam& q) {
  const RotationCoefficients w = rotation_from_Wq(cov, q);
  const RotationCoefficients o = rotation_from_omega(omega_triplet(cov.modulus(), q), branch_points(cov));
  double sq = 0;
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    cplx a = w.get(i, j), b = o.get(i, j);
    sq = std::max(sq, mixed(a * a, b * b));
  }
  const double tp = mixed(w.b12 * w.b13 * w.b23, o.b12 * o.b13 * o.b23);
  if (sq > 0.1 || tp > 0.1)
    fail(ErrorKind::convention,
         "rotation coefficients from Wq and from the Omega triplet disagree (squares " + std::to_string(sq) +
             ", triple product " + std::to_string(tp) +
             "); check that P1, P2, P3 sit at w', w, w + w' so that the a-cycle encircles P1 and P3");
  return {sq, tp};
}

double top_system_residual(const TorusCovering& cov, const DeformationParam& q, OmegaVariant variant,
                           const DiffConfig& cfg) {
  const auto l = branch_points(cov);
  const cplx x = cross_ratio(cov);
  if (std::abs(x) < 1e-12 || std::abs(x - 1.0) < 1e-12) fail(ErrorKind::degenerate, "cross-ratio at 0 or 1");
  const JacobianResult jac = canonical_jacobian(cov, cfg);
  std::array<cplx, 3> dO;
  for (int k = 0; k < 3; ++k) {
    auto f = [&, k](const TorusCovering& c) {
      OmegaTriplet t = omega_triplet(c.modulus(), q, variant);
      return k == 0 ? t.O1 : (k == 1 ? t.O2 : t.O3);
    };
    dO[k] = lambda_gradient(f, cov, true, jac, cfg).d[2] * (l[1] - l[0]);
  }
  const OmegaTriplet t = omega_triplet(cov.modulus(), q, variant);
  const cplx r1 = t.O2 * t.O3 / x, r2 = -t.O1 * t.O3 / (x - 1.0), r3 = t.O1 * t.O2 / (x * (x - 1.0));
  return std::max({rel_residual(dO[0], r1), rel_residual(dO[1], r2), rel_residual(dO[2], r3)});
}

double rot_euler_residual(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg) {
  auto b12 = [&](const TorusCovering& c) {
    return rotation_from_omega(omega_triplet(c.modulus(), q), branch_points(c)).b12;
  };
  const auto g = lambda_gradient(b12, cov, true, cfg);
  const auto l = branch_points(cov);
  const cplx b = b12(cov);
  cplx s = b;
  for (int k = 0; k < 3; ++k) s += l[k] * g.d[k];
  return std::abs(s) / std::abs(b);
}

std::array<double, 2> darboux_egoroff_residual(const TorusCovering& cov, const DeformationParam& q, double shift12,
                                               const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const JacobianResult jac = canonical_jacobian(cov, cfg);
  const RotationCoefficients b0 = rotation_from_Wq(cov, q, &rd, shift12);
  double r1 = 0, r2 = 0;
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    auto f = [&, i, j](const TorusCovering& c) { return rotation_from_Wq(c, q, &rd, shift12).get(i, j); };
    const auto g = lambda_gradient(f, cov, true, jac, cfg);
    const int k = 3 - i - j;
    r1 = std::max(r1, rel_residual(g.d[k], b0.get(i, k) * b0.get(k, j)));
    const cplx sum = g.d[0] + g.d[1] + g.d[2];
    const double scale = std::max({std::abs(g.d[0]), std::abs(g.d[1]), std::abs(g.d[2])});
    r2 = std::max(r2, std::abs(sum) / scale);
  }
  return {r1, r2};
}

}  // namespace hfm
