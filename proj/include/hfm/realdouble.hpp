#pragma once

#include <array>

#include <Eigen/Dense>

#include "hfm/frobenius3.hpp"

namespace hfm {

struct FlatChart6 {
  std::array<cplx, 6> t{};
  bool valid = true;  // both gamma arguments in the upper half-plane
  cplx& operator[](int i) { return t[i]; }
  cplx operator[](int i) const { return t[i]; }
};

enum class Chart6Variant {
  consistent,  // t6 = (q/(muO+q)) m/(2 pi i) + t3/q; gamma arguments become mu and -conj(mu)
  as_printed,  // t6 without the t3/q shift
};

// Requires a purely imaginary q (or q = infinity).
DeformationParam imaginary_q(cplx q);

FlatChart6 flat_coords6(const TorusCovering& cov, const DeformationParam& q,
                        Chart6Variant variant = Chart6Variant::consistent);

// Arguments of the two gamma blocks: t3/(t6 - t3/q) and 2 pi i t3/(1 - 2 pi i t6).
std::array<cplx, 2> gamma_arguments6(const FlatChart6& t, const DeformationParam& q);

// Explicit prepotential of the deformed real double. quartic_eps scales the
// t2^4 block by (1 + eps) for negative controls.
Taylor3<6> prepotential6_series(const FlatChart6& t, const DeformationParam& q,
                                double quartic_eps = 0.0);
cplx prepotential6(const FlatChart6& t, const DeformationParam& q, const std::array<int, 6>& e = {});

using Third6 = std::array<std::array<std::array<cplx, 6>, 6>, 6>;
Third6 third_derivatives6(const FlatChart6& t, const DeformationParam& q, double quartic_eps = 0.0);

double wdvv_residual6(const FlatChart6& t, const DeformationParam& q, double quartic_eps = 0.0);
double quasihomogeneity_residual6(const FlatChart6& t, const DeformationParam& q, cplx kappa);

// Weights (1, 1/2, 0, 1, 1/2, 0).
std::array<cplx, 6> euler_action6(const FlatChart6& t);

cplx g_function6(const FlatChart6& t, const DeformationParam& q);

// -1/2 log(|tau_W|^2 Im mu (muO + q)/q) - 1/24 log prod phi10 phi01.
cplx g_assembly6(const TorusCovering& cov, const DeformationParam& q);

// Inverse metric sum_i (dt_a/dl_i dt_b/dl_i / g_i + conj-part / gbar_i) with
// g_i = phi10(P_i)^2 / 2, computed by differentiating the chart.
using Mat6 = Eigen::Matrix<cplx, 6, 6>;
Mat6 inverse_metric6(const TorusCovering& cov, const DeformationParam& q,
                     Chart6Variant variant = Chart6Variant::consistent, const DiffConfig& cfg = {});

}  // namespace hfm
