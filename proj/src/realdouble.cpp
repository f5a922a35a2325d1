#include "hfm/realdouble.hpp"

#include "hfm/tau.hpp"

namespace hfm {

DeformationParam imaginary_q(cplx q) {
  if (!finite(q)) return DeformationParam::infinity(true);
  return DeformationParam::from_q(q, true);
}

namespace {

void require_imaginary(const DeformationParam& q) {
  const cplx i = q.inv();
  if (std::abs(i.real()) > 1e-14 * std::abs(i))
    fail(ErrorKind::usage, "real double: q must be purely imaginary");
}

// Integral of p + c over a segment, by quadrature.
cplx p_period(const TorusCovering& cov, const QuadratureSpec& seg) {
  return contour_integral([&](cplx s) { return lambda_of(s, cov); }, seg);
}

}  // namespace

FlatChart6 flat_coords6(const TorusCovering& cov, const DeformationParam& q, Chart6Variant variant) {
  require_imaginary(q);
  const VData v = v_and_muOmega(cov);
  const cplx w = cov.w();
  const cplx pre = 1.0 - v.mu_omega * q.inv_shift(v.mu_omega, ErrorKind::submanifold);  // q/(muO+q)
  // Base point off the lattice and away from the half-periods.
  const cplx base = 0.37 * w + 0.29 * cov.wp();
  const cplx Ia = p_period(cov, a_segment(cov, base));
  const cplx Ib = p_period(cov, b_segment(cov, base));
  FlatChart6 t;
  t[1] = pre * v.m / w;
  t[2] = pre * v.mu_omega / two_pi_i;
  t[4] = std::conj(t[1]);
  t[5] = pre * v.m / two_pi_i;
  if (variant == Chart6Variant::consistent) t[5] += t[2] * q.inv();
  t[3] = -pre * (v.m * Ib / w).real();
  t[0] = -pre * (v.m * Ia / w).real() - pre * v.m * Ib / (2.0 * w);
  auto g = gamma_arguments6(t, q);
  t.valid = g[0].imag() > 0 && g[1].imag() > 0;
  return t;
}

std::array<cplx, 2> gamma_arguments6(const FlatChart6& t, const DeformationParam& q) {
  const cplx A = t[5] - t[2] * q.inv();
  const cplx B = 1.0 - two_pi_i * t[5];
  return {t[2] / A, two_pi_i * t[2] / B};
}

Taylor3<6> prepotential6_series(const FlatChart6& t, const DeformationParam& q, double quartic_eps) {
  using T = Taylor3<6>;
  std::array<T, 6> x;
  for (int i = 0; i < 6; ++i) x[i] = T::variable(i, t[i]);
  const T &t1 = x[0], &t2 = x[1], &t3 = x[2], &t4 = x[3], &t5 = x[4], &t6 = x[5];
  const cplx k = 1.0 / two_pi_i;
  const T A = t6 - q.inv() * t3;
  const T B = two_pi_i * t6 - T(1.0);
  const T r3 = t3.reciprocal();
  const T t2sq = t2 * t2, t5sq = t5 * t5;

  const T arg1 = t3 / A;
  const T arg2 = (two_pi_i * t3) / (T(1.0) - two_pi_i * t6);
  auto gam = [](const T& a) {
    auto j = gamma_jet(Modulus(a.value()));
    return a.compose(j);
  };

  T F = -0.25 * (t1 * t2sq) - 0.25 * (t1 * t5sq) + 0.5 * (t1 * t1 * t3) -
        0.5 * (t1 * t4 * (2.0 * t6 - T(k)));
  F = F + (0.25 * (t2sq * t4 * (t6 - T(k))) + 0.25 * (t4 * t5sq * t6) + 0.5 * (t4 * t4 * t6 * (t6 - T(k))) +
           (1.0 / 16.0) * (t2sq * t5sq)) *
              r3;
  const T Ar = A.reciprocal();
  T block1 = -(1.0 / (4.0 * pi * I)) * (gam(arg1) * Ar * Ar) + r3 - k * (r3 * Ar);
  T block2 = -(pi * I) * (gam(arg2) * (B * B).reciprocal()) + r3 + r3 * B.reciprocal();
  F = F + ((1.0 + quartic_eps) / 32.0) * (t2sq * t2sq * block1) + (1.0 / 32.0) * (t5sq * t5sq * block2);
  return F;
}

cplx prepotential6(const FlatChart6& t, const DeformationParam& q, const std::array<int, 6>& e) {
  return prepotential6_series(t, q).derivative(e);
}

Third6 third_derivatives6(const FlatChart6& t, const DeformationParam& q, double quartic_eps) {
  auto F = prepotential6_series(t, q, quartic_eps);
  Third6 out;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) out[a][b][c] = F.derivative3(a, b, c);
  return out;
}

double wdvv_residual6(const FlatChart6& t, const DeformationParam& q, double quartic_eps) {
  using M = Eigen::Matrix<cplx, 6, 6>;
  auto T3 = third_derivatives6(t, q, quartic_eps);
  std::array<M, 6> F;
  for (int i = 0; i < 6; ++i)
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) F[i](a, b) = T3[i][a][b];
  Eigen::FullPivLU<M> lu(F[0]);
  if (!lu.isInvertible()) fail(ErrorKind::structure, "WDVV: F_1 is singular");
  const M inv = lu.inverse();
  double r = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) r = std::max(r, (F[i] * inv * F[j] - F[j] * inv * F[i]).norm());
  return r;
}

double quasihomogeneity_residual6(const FlatChart6& t, const DeformationParam& q, cplx kappa) {
  if (kappa == 0.0) fail(ErrorKind::usage, "quasihomogeneity: kappa must be nonzero");
  const cplx r = std::sqrt(kappa);
  FlatChart6 s = t;
  s[0] *= kappa;
  s[1] *= r;
  s[3] *= kappa;
  s[4] *= r;
  return std::abs(prepotential6(s, q) - kappa * kappa * prepotential6(t, q));
}

std::array<cplx, 6> euler_action6(const FlatChart6& t) {
  return {t[0], 0.5 * t[1], 0.0, t[3], 0.5 * t[4], 0.0};
}

cplx g_function6(const FlatChart6& t, const DeformationParam& q) {
  auto g = gamma_arguments6(t, q);
  const cplx A = t[5] - t[2] * q.inv();
  const cplx B = two_pi_i * t[5] - 1.0;
  return -(std::log(dedekind_eta(Modulus(g[0]))) + std::log(dedekind_eta(Modulus(g[1]))) +
           std::log(t[1] * t[4]) / 8.0 + std::log(t[2] / (A * B)) / 2.0);
}

cplx g_assembly6(const TorusCovering& cov, const DeformationParam& q) {
  require_imaginary(q);
  const VData v = v_and_muOmega(cov);
  const cplx pre = 1.0 - v.mu_omega * q.inv_shift(v.mu_omega, ErrorKind::submanifold);
  const RamificationData rd = ramification_data(cov);
  const TauValue tw = tau_w(cov);
  cplx prod = 1.0;
  for (int i = 0; i < 3; ++i) prod *= (pre * v.m * rd.omega[i]) * std::conj(pre * v.m * rd.omega[i]);
  // (muO + q)/q = 1/pre
  return -0.5 * (2.0 * tw.log_tau.real() + std::log(cov.mu().imag()) - std::log(pre)) - std::log(prod) / 24.0;
}

Mat6 inverse_metric6(const TorusCovering& cov, const DeformationParam& q, Chart6Variant variant,
                     const DiffConfig& cfg) {
  const VData v = v_and_muOmega(cov);
  const cplx pre = 1.0 - v.mu_omega * q.inv_shift(v.mu_omega, ErrorKind::submanifold);
  const RamificationData rd = ramification_data(cov);
  const JacobianResult jac = canonical_jacobian(cov, cfg);
  std::array<LambdaGradient, 6> grad;
  for (int a = 0; a < 6; ++a)
    grad[a] = lambda_gradient([&](const TorusCovering& c) { return flat_coords6(c, q, variant)[a]; }, cov, false,
                              jac, cfg);
  std::array<cplx, 3> g, gb;
  for (int i = 0; i < 3; ++i) {
    const cplx phi = pre * v.m * rd.omega[i];
    g[i] = phi * phi / 2.0;
    gb[i] = std::conj(phi) * std::conj(phi) / 2.0;
  }
  Mat6 M;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      cplx s = 0;
      for (int i = 0; i < 3; ++i)
        s += grad[a].d[i] * grad[b].d[i] / g[i] + grad[a].dbar[i] * grad[b].dbar[i] / gb[i];
      M(a, b) = s;
    }
  return M;
}

}  // namespace hfm
