#pragma once

#include <array>
#include <string>
#include <vector>

#include "hfm/kernels.hpp"

namespace hfm {

// log tau as a sum of per-factor logs, each on its principal branch unless
// aligned to a reference value (used for nearby perturbed coverings).
struct TauValue {
  cplx log_tau = 0;
  std::vector<std::pair<std::string, cplx>> log_factors;
  cplx value() const { return std::exp(log_tau); }
  cplx factor_product() const;
};

// tau_W = eta^2 (2w)^{-1/4} (prod omega(P_i))^{-1/12}
TauValue tau_w(const TorusCovering& cov, const TauValue* align = nullptr,
               const RamificationData* rd_align = nullptr);

// tau_Wq = tau_W (mu + q); for q = infinity the normalized factor (1 + mu/q) is used.
TauValue tau_wq(const TorusCovering& cov, const DeformationParam& q, const TauValue* align = nullptr,
                const RamificationData* rd_align = nullptr);

// log tau_{Omega_q} = 2 Re log tau_W + log Im mu + log(muO + q)
cplx log_tau_omega_q(const TorusCovering& cov, const DeformationParam& q, const TauValue* align = nullptr,
                     const RamificationData* rd_align = nullptr);

// Log with the 2 pi i ambiguity resolved towards ref.
cplx log_near(cplx z, cplx ref);

struct TauOdeResult {
  std::array<double, 3> residual{};  // relative, per branch point
  std::array<cplx, 3> lhs{}, rhs{};
  double max() const;
};

// d log tau_W / d lambda_i + S_i^W / 2
TauOdeResult tau_w_ode(const TorusCovering& cov, const DiffConfig& cfg = {});
// d log tau_Wq / d lambda_i + S_i^Wq / 2
TauOdeResult tau_wq_ode(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg = {});
// d log tau_I / d lambda_i - (1/2) sum_{j != i} beta_ij^2 (lambda_i - lambda_j), tau_I = tau_Wq^{-1/2}
TauOdeResult tau_i_relation(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg = {});

// Holomorphic and antiholomorphic defining equations of tau_{Omega_q}.
struct TauOmegaResult {
  TauOdeResult d, dbar;
};
TauOmegaResult tau_omega_q_ode(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg = {});

// Euler-type actions on S_i^Wq: |sum_j d_j S_i| (relative to max_j |d_j S_i|)
// and |sum_j lambda_j d_j S_i + S_i| (relative to |S_i|).
struct SActionResult {
  std::array<double, 3> e{}, E{};
};
SActionResult s_wq_actions(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg = {});

// -1/2 log(tau_W (mu + q)/q) - 1/24 log prod phi(P_i), phi = (q/(mu+q)) omega scaled by phi_scale.
cplx g_assembly(const TorusCovering& cov, const DeformationParam& q, cplx phi_scale = 1.0);

}  // namespace hfm
