#pragma once

#include <array>
#include <optional>

#include <Eigen/Dense>

#include "hfm/kernels.hpp"
#include "hfm/taylor.hpp"

namespace hfm {

struct FlatChart3 {
  cplx t1, t2, t3;
  bool valid = true;  // recovered mu lies in the upper half-plane
};

enum class T1Variant {
  corrected,   // -pi i gamma/(4w^2) - c - pi i/(2 w^2 (mu+q)), consistent with the metric
  as_printed,  // last term -pi i/((mu+q) 2w)
};

FlatChart3 flat_coords3(const TorusCovering& cov, const DeformationParam& q,
                        T1Variant variant = T1Variant::corrected);

// mu = 2 pi i t3 / (1 - 2 pi i t3 / q)
cplx chart3_mu(const FlatChart3& t, const DeformationParam& q);

// F = -t1 t2^2/4 + t1^2 t3/2 - (pi i/32) t2^4 f(2 pi i t3).
class PrepotentialFamily3 {
 public:
  enum class Kind { undeformed, deformed, chazy_family, sl2_family };

  static PrepotentialFamily3 undeformed();
  static PrepotentialFamily3 deformed(const DeformationParam& q);
  static PrepotentialFamily3 chazy_family(const ChazyFunction& f);
  static PrepotentialFamily3 sl2_family(cplx a, cplx b, cplx c, cplx d);

  Kind kind() const { return kind_; }
  const ChazyFunction& f() const { return f_; }

  // Multiplies the t2^4 block (negative controls).
  PrepotentialFamily3 with_quartic_scale(double s) const;

  Taylor3<3> evaluate(const FlatChart3& t) const;
  cplx value(const FlatChart3& t) const;

 private:
  Kind kind_ = Kind::undeformed;
  ChazyFunction f_ = ChazyFunction::gamma();
  double quartic_scale_ = 1.0;
};

using Third3 = std::array<std::array<std::array<cplx, 3>, 3>, 3>;

// All third derivatives F_abc (0-based indices).
Third3 third_derivatives3(const PrepotentialFamily3& fam, const FlatChart3& t);

// Partial derivative with multi-index e (total order <= 3).
cplx prepotential3(const PrepotentialFamily3& fam, const FlatChart3& t, const std::array<int, 3>& e);

double wdvv_residual3(const PrepotentialFamily3& fam, const FlatChart3& t);

double quasihomogeneity_residual3(const PrepotentialFamily3& fam, const FlatChart3& t, cplx kappa);

// Coefficients of E = t1 d1 + (1/2) t2 d2.
std::array<cplx, 3> euler_action3(const FlatChart3& t);

// G = -log{ eta(mu(t)) t2^{1/8} (2 pi i t3/q - 1)^{-1/2} }, principal logs.
cplx g_function3(const FlatChart3& t, const DeformationParam& q);

// Inverse metric sum_i dt_a/dl_i dt_b/dl_i / g_i with g_i = phi(P_i)^2 / 2,
// phi = (q/(mu+q)) omega; constant exactly when the chart is flat.
Eigen::Matrix3cd inverse_metric3(const TorusCovering& cov, const DeformationParam& q,
                                 T1Variant variant = T1Variant::corrected, const DiffConfig& cfg = {});

}  // namespace hfm
