#include "hfm/tau.hpp"

namespace hfm {

cplx TauValue::factor_product() const {
  cplx p = 1.0;
  for (const auto& f : log_factors) p *= std::exp(f.second);
  return p;
}

cplx log_near(cplx z, cplx ref) {
  cplx l = std::log(z);
  double k = std::round((ref.imag() - l.imag()) / (2 * pi));
  return l + cplx(0, 2 * pi * k);
}

namespace {

cplx aligned_log(cplx z, const TauValue* align, std::size_t idx) {
  return align ? log_near(z, align->log_factors.at(idx).second) : std::log(z);
}

void finish(TauValue& t) {
  t.log_tau = 0;
  for (const auto& f : t.log_factors) t.log_tau += f.second;
}

}  // namespace

TauValue tau_w(const TorusCovering& cov, const TauValue* align, const RamificationData* rd_align) {
  const RamificationData rd = ramification_data(cov, rd_align);
  const cplx prod = rd.omega[0] * rd.omega[1] * rd.omega[2];
  if (!finite(prod) || prod == 0.0) fail(ErrorKind::degenerate, "tau_W: degenerate covering");
  // eta^2 = theta_1'(0)^{2/3} on the principal cube root
  const std::array<const char*, 3> names{"eta^2", "(2w)^(-1/4)", "prod omega^(-1/12)"};
  const std::array<double, 3> power{2.0 / 3.0, -1.0 / 4.0, -1.0 / 12.0};
  const std::array<cplx, 3> raw{theta1(0.0, cov.modulus(), 1), 2.0 * cov.w(), prod};
  TauValue t;
  for (std::size_t i = 0; i < 3; ++i) {
    cplx l = align ? log_near(raw[i], align->log_factors.at(i).second / power[i]) : std::log(raw[i]);
    t.log_factors.emplace_back(names[i], power[i] * l);
  }
  finish(t);
  return t;
}

TauValue tau_wq(const TorusCovering& cov, const DeformationParam& q, const TauValue* align,
                const RamificationData* rd_align) {
  TauValue t = tau_w(cov, align, rd_align);
  // mu + q = q (1 + mu/q); the constant log q is dropped so q = infinity is finite
  const cplx d = 1.0 + cov.mu() * q.inv();
  if (std::abs(d) < 1e-12) fail(ErrorKind::divisor, "tau_Wq: mu + q = 0");
  t.log_factors.emplace_back("det(B+q)/q", aligned_log(d, align, 3));
  finish(t);
  return t;
}

cplx log_tau_omega_q(const TorusCovering& cov, const DeformationParam& q, const TauValue* align,
                     const RamificationData* rd_align) {
  TauValue t = tau_w(cov, align, rd_align);
  const VData v = v_and_muOmega(cov);
  const cplx d = 1.0 + v.mu_omega * q.inv();
  if (std::abs(d) < 1e-12) fail(ErrorKind::submanifold, "tau_Omega_q: muO + q = 0");
  cplx l = align ? log_near(d, align->log_factors.back().second) : std::log(d);
  return 2.0 * t.log_tau.real() + std::log(cov.mu().imag()) + l;
}

double TauOdeResult::max() const { return std::max({residual[0], residual[1], residual[2]}); }

namespace {

std::array<cplx, 3> s_w(const TorusCovering& cov) {
  std::array<cplx, 3> s;
  for (int i = 0; i < 3; ++i) s[i] = bergman_projective_connection(i, cov).value;
  return s;
}

TauOdeResult compare(const std::array<cplx, 3>& lhs, const std::array<cplx, 3>& rhs) {
  TauOdeResult r;
  r.lhs = lhs;
  r.rhs = rhs;
  for (int i = 0; i < 3; ++i) r.residual[i] = rel_residual(lhs[i], rhs[i]);
  return r;
}

}  // namespace

TauOdeResult tau_w_ode(const TorusCovering& cov, const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const TauValue base = tau_w(cov);
  auto g = lambda_gradient([&](const TorusCovering& c) { return tau_w(c, &base, &rd).log_tau; }, cov, true, cfg);
  auto S = s_w(cov);
  std::array<cplx, 3> rhs;
  for (int i = 0; i < 3; ++i) rhs[i] = -S[i] / 2.0;
  return compare(g.d, rhs);
}

TauOdeResult tau_wq_ode(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const TauValue base = tau_wq(cov, q);
  auto g = lambda_gradient([&](const TorusCovering& c) { return tau_wq(c, q, &base, &rd).log_tau; }, cov, true,
                           cfg);
  auto S = s_w(cov);
  std::array<cplx, 3> rhs;
  for (int i = 0; i < 3; ++i) rhs[i] = -projective_connection_Wq(i, cov, q, S[i], rd) / 2.0;
  return compare(g.d, rhs);
}

TauOdeResult tau_i_relation(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const TauValue base = tau_wq(cov, q);
  auto g = lambda_gradient([&](const TorusCovering& c) { return -tau_wq(c, q, &base, &rd).log_tau / 2.0; }, cov,
                           true, cfg);
  std::array<cplx, 3> rhs{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      cplx b = kernel_at_ramification(KernelKind::Wq, i, j, cov, q, rd) / 2.0;
      rhs[i] += 0.5 * b * b * (rd.lambda[i] - rd.lambda[j]);
    }
  return compare(g.d, rhs);
}

TauOmegaResult tau_omega_q_ode(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const TauValue base = tau_wq(cov, DeformationParam::infinity());
  TauValue ref = base;
  {
    const VData v = v_and_muOmega(cov);
    ref.log_factors.back().second = std::log(1.0 + v.mu_omega * q.inv());
  }
  auto g = lambda_gradient([&](const TorusCovering& c) { return log_tau_omega_q(c, q, &ref, &rd); }, cov, false,
                           cfg);
  auto S = s_w(cov);
  std::array<cplx, 3> rhs, rhsb;
  for (int i = 0; i < 3; ++i) {
    cplx s = projective_connection_OmegaQ(i, cov, q, S[i], rd);
    rhs[i] = -s / 2.0;
    rhsb[i] = -std::conj(s) / 2.0;
  }
  return {compare(g.d, rhs), compare(g.dbar, rhsb)};
}

SActionResult s_wq_actions(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg) {
  const RamificationData rd = ramification_data(cov);
  const JacobianResult jac = canonical_jacobian(cov, cfg);
  SActionResult out;
  for (int i = 0; i < 3; ++i) {
    auto S = [&](const TorusCovering& c) {
      RamificationData r = ramification_data(c, &rd);
      return projective_connection_Wq(i, c, q, bergman_projective_connection(i, c).value, r);
    };
    auto g = lambda_gradient(S, cov, true, jac, cfg);
    const cplx s0 = S(cov);
    cplx e = g.d[0] + g.d[1] + g.d[2];
    cplx E = s0;
    double scale = 0;
    for (int j = 0; j < 3; ++j) {
      E += rd.lambda[j] * g.d[j];
      scale = std::max(scale, std::abs(g.d[j]));
    }
    out.e[i] = std::abs(e) / scale;
    out.E[i] = std::abs(E) / std::abs(s0);
  }
  return out;
}

cplx g_assembly(const TorusCovering& cov, const DeformationParam& q, cplx phi_scale) {
  const TauValue t = tau_w(cov);
  const cplx d = 1.0 + cov.mu() * q.inv();  // (mu + q)/q
  if (std::abs(d) < 1e-12) fail(ErrorKind::divisor, "G assembly: mu + q = 0");
  const RamificationData rd = ramification_data(cov);
  cplx prod = 1.0;
  for (int i = 0; i < 3; ++i) prod *= phi_scale * rd.omega[i] / d;
  return -0.5 * (t.log_tau + std::log(d)) - std::log(prod) / 24.0;
}

}  // namespace hfm
