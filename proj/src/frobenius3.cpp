#include "hfm/frobenius3.hpp"

#include <Eigen/Dense>

namespace hfm {

FlatChart3 flat_coords3(const TorusCovering& cov, const DeformationParam& q, T1Variant variant) {
  const cplx w = cov.w(), mu = cov.mu();
  const cplx s = q.inv_shift(mu, ErrorKind::divisor);  // 1/(mu+q)
  const cplx pre = 1.0 - mu * s;                        // q/(mu+q)
  const cplx g = gamma_chazy(cov.modulus());
  FlatChart3 t;
  t.t1 = -I * pi * g / (4.0 * w * w) - cov.c();
  t.t1 -= variant == T1Variant::corrected ? I * pi * s / (2.0 * w * w) : I * pi * s / (2.0 * w);
  t.t2 = pre / w;
  t.t3 = pre * mu / two_pi_i;
  t.valid = chart3_mu(t, q).imag() > 0;
  return t;
}

cplx chart3_mu(const FlatChart3& t, const DeformationParam& q) {
  const cplx x = two_pi_i * t.t3;
  return x / (1.0 - x * q.inv());
}

PrepotentialFamily3 PrepotentialFamily3::undeformed() { return {}; }

PrepotentialFamily3 PrepotentialFamily3::deformed(const DeformationParam& q) {
  PrepotentialFamily3 p;
  p.kind_ = Kind::deformed;
  p.f_ = q.is_infinite() ? ChazyFunction::gamma()
                         : sl2_transform_chazy(ChazyFunction::gamma(), 1.0, 0.0, -q.inv(), 1.0);
  return p;
}

PrepotentialFamily3 PrepotentialFamily3::chazy_family(const ChazyFunction& f) {
  PrepotentialFamily3 p;
  p.kind_ = Kind::chazy_family;
  p.f_ = f;
  return p;
}

PrepotentialFamily3 PrepotentialFamily3::sl2_family(cplx a, cplx b, cplx c, cplx d) {
  PrepotentialFamily3 p;
  p.kind_ = Kind::sl2_family;
  p.f_ = sl2_transform_chazy(ChazyFunction::gamma(), a, b, c, d);
  return p;
}

PrepotentialFamily3 PrepotentialFamily3::with_quartic_scale(double s) const {
  PrepotentialFamily3 p = *this;
  p.quartic_scale_ = s;
  return p;
}

Taylor3<3> PrepotentialFamily3::evaluate(const FlatChart3& t) const {
  using T = Taylor3<3>;
  T t1 = T::variable(0, t.t1), t2 = T::variable(1, t.t2), t3 = T::variable(2, t.t3);
  // h(t3) = f(2 pi i t3)
  auto j = f_.jet(two_pi_i * t.t3);
  const cplx k = two_pi_i;
  T h = t3.compose({j[0], k * j[1], k * k * j[2], k * k * k * j[3]});
  T t2sq = t2 * t2;
  return -0.25 * (t1 * t2sq) + 0.5 * (t1 * t1 * t3) -
         (I * pi / 32.0 * quartic_scale_) * (t2sq * t2sq * h);
}

cplx PrepotentialFamily3::value(const FlatChart3& t) const { return evaluate(t).value(); }

Third3 third_derivatives3(const PrepotentialFamily3& fam, const FlatChart3& t) {
  auto F = fam.evaluate(t);
  Third3 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) out[a][b][c] = F.derivative3(a, b, c);
  return out;
}

cplx prepotential3(const PrepotentialFamily3& fam, const FlatChart3& t, const std::array<int, 3>& e) {
  return fam.evaluate(t).derivative(e);
}

namespace {

template <int N, class Tensor>
double wdvv_from(const Tensor& T3) {
  using M = Eigen::Matrix<cplx, N, N>;
  std::array<M, N> F;
  for (int i = 0; i < N; ++i)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) F[i](a, b) = T3[i][a][b];
  Eigen::FullPivLU<M> lu(F[0]);
  if (!lu.isInvertible()) fail(ErrorKind::structure, "WDVV: F_1 is singular");
  M inv = lu.inverse();
  double r = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) r = std::max(r, (F[i] * inv * F[j] - F[j] * inv * F[i]).norm());
  return r;
}

}  // namespace

double wdvv_residual3(const PrepotentialFamily3& fam, const FlatChart3& t) {
  return wdvv_from<3>(third_derivatives3(fam, t));
}

double quasihomogeneity_residual3(const PrepotentialFamily3& fam, const FlatChart3& t, cplx kappa) {
  if (kappa == 0.0) fail(ErrorKind::usage, "quasihomogeneity: kappa must be nonzero");
  FlatChart3 s{kappa * t.t1, std::sqrt(kappa) * t.t2, t.t3, t.valid};
  return std::abs(fam.value(s) - kappa * kappa * fam.value(t));
}

std::array<cplx, 3> euler_action3(const FlatChart3& t) { return {t.t1, 0.5 * t.t2, 0.0}; }

cplx g_function3(const FlatChart3& t, const DeformationParam& q) {
  const cplx mu = chart3_mu(t, q);
  const cplx eta = dedekind_eta(Modulus(mu));
  return -(std::log(eta) + std::log(t.t2) / 8.0 - std::log(two_pi_i * t.t3 * q.inv() - 1.0) / 2.0);
}

Eigen::Matrix3cd inverse_metric3(const TorusCovering& cov, const DeformationParam& q, T1Variant variant,
                                 const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const JacobianResult jac = canonical_jacobian(cov, cfg);
  const cplx pre = 1.0 - cov.mu() * q.inv_shift(cov.mu(), ErrorKind::divisor);
  std::array<LambdaGradient, 3> g;
  for (int a = 0; a < 3; ++a)
    g[a] = lambda_gradient(
        [&](const TorusCovering& c) {
          const FlatChart3 t = flat_coords3(c, q, variant);
          return a == 0 ? t.t1 : (a == 1 ? t.t2 : t.t3);
        },
        cov, true, jac, cfg);
  Eigen::Matrix3cd M;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      cplx s = 0;
      for (int i = 0; i < 3; ++i) {
        const cplx phi = pre * rd.omega[i];
        s += g[a].d[i] * g[b].d[i] / (phi * phi / 2.0);
      }
      M(a, b) = s;
    }
  return M;
}

}  // namespace hfm
