#pragma once

#include <array>

#include "hfm/kernels.hpp"

namespace hfm {

struct OmegaTriplet {
  cplx O1, O2, O3;
  cplx mu;
  DeformationParam q;
  double constraint_residual() const { return std::abs(O1 * O1 + O2 * O2 + O3 * O3 + 0.25); }
};

enum class OmegaVariant {
  standard,
  doubled_shift_O1,  // 2/(mu+q) in O1 only; negative control
};

// Derivatives of log theta_k(0) come from the heat equation.
OmegaTriplet omega_triplet(const Modulus& m, const DeformationParam& q,
                           OmegaVariant variant = OmegaVariant::standard);

// Same triplet with d/dmu log theta_k taken by finite differences (oracle path).
OmegaTriplet omega_triplet_fd(const Modulus& m, const DeformationParam& q, const DiffConfig& cfg = {});

// Correspondence with the other common normalization of the triplet:
// O1' = O3, O2' = i O1, O3' = -i O2; lambda1' = lambda3, lambda3' = lambda1; i mu' = mu.
struct NotationBridge {
  std::array<int, 3> omega_source;    // O_k' = factor_k * O_{omega_source[k]}
  std::array<cplx, 3> omega_factor;
  std::array<int, 3> lambda_source;   // lambda_k' = lambda_{lambda_source[k]}
  cplx mu_factor;                     // mu' = mu_factor * mu
};
NotationBridge babich_korotkin_bridge();
std::array<cplx, 3> apply_bridge(const NotationBridge& b, const OmegaTriplet& t);

enum class RotationSource { from_omega, from_Wq };

struct RotationCoefficients {
  cplx b12, b13, b23;
  RotationSource source;
  bool principal_branch = true;
  cplx get(int i, int j) const;  // 0-based, symmetric
};

// b12 = O3/(l1 - l2), b23 = O1/(l2 - l3), b13 = O2/(l3 - l1)
RotationCoefficients rotation_from_omega(const OmegaTriplet& t, const std::array<cplx, 3>& lambda);

// b_ij = Wq(P_i, P_j)/2 in the local parameters
RotationCoefficients rotation_from_Wq(const TorusCovering& cov, const DeformationParam& q,
                                      const RamificationData* align = nullptr, double shift12 = 0.0);

// max |b^2 difference| and |triple product difference|, each max(absolute, relative).
// Throws a convention error when either exceeds 0.1.
std::array<double, 2> proposition_crosscheck(const TorusCovering& cov, const DeformationParam& q);

// dOmega/dx realized as (l2 - l1) d/dl3; relative residuals of the three equations.
double top_system_residual(const TorusCovering& cov, const DeformationParam& q,
                           OmegaVariant variant = OmegaVariant::standard, const DiffConfig& cfg = {});

// |sum_k l_k d_k b12 + b12| / |b12| with b12 from the triplet.
double rot_euler_residual(const TorusCovering& cov, const DeformationParam& q, const DiffConfig& cfg = {});

// (max relative |d_k b_ij - b_ik b_kj|, max relative |sum_k d_k b_ij|) with b from Wq.
// shift12 perturbs b12 only (sensitivity control).
std::array<double, 2> darboux_egoroff_residual(const TorusCovering& cov, const DeformationParam& q,
                                               double shift12 = 0.0, const DiffConfig& cfg = {});

}  // namespace hfm
