#pragma once

#include <array>
#include <functional>

#include "hfm/numkit.hpp"
#include "hfm/theta.hpp"

namespace hfm {

// Which half-period carries which label. `cycle` puts P1 at w', P2 at w and
// P3 at w + w', the assignment under which the a-cycle (s -> s + 2w)
// encircles P1 and P3 and the Thomae relations hold as stated. `text` is the
// naive order (w, w', w + w'), kept for negative controls.
enum class Labeling { cycle, text };

class TorusCovering {
 public:
  TorusCovering(cplx w, cplx wp, cplx c = 0.0, Labeling lab = Labeling::cycle);

  cplx w() const { return w_; }
  cplx wp() const { return wp_; }
  cplx c() const { return c_; }
  cplx mu() const { return wp_ / w_; }
  const Modulus& modulus() const { return modulus_; }
  Labeling labeling() const { return lab_; }

  // Quasi-period constants: zeta(s + 2w) = zeta(s) + 2 eta1, likewise eta2 for w'.
  cplx eta1() const { return eta1_; }
  cplx eta2() const { return eta2_; }

  std::array<cplx, 3> sigma() const;
  Vec3 params() const { return {w_, wp_, c_}; }
  TorusCovering with_params(const Vec3& p) const { return {p(0), p(1), p(2), lab_}; }
  TorusCovering relabeled(Labeling lab) const { return {w_, wp_, c_, lab}; }

  // 2g - 2 = -2N + L + n0 with (g, N, L, n0) = (1, 2, 3, 1); returns lhs - rhs.
  static int riemann_hurwitz_defect() { return (2 * 1 - 2) - (-2 * 2 + 3 + 1); }

 private:
  cplx w_, wp_, c_;
  Labeling lab_;
  Modulus modulus_;
  cplx eta1_, eta2_;
};

// Weierstrass p for the lattice 2w Z + 2w' Z, derivatives up to order 3.
cplx weierstrass_p(cplx s, const TorusCovering& cov, int order = 0);
cplx weierstrass_zeta(cplx s, const TorusCovering& cov);

// lambda(s) = p(s) + c
inline cplx lambda_of(cplx s, const TorusCovering& cov) { return weierstrass_p(s, cov) + cov.c(); }

std::array<cplx, 3> branch_points(const TorusCovering& cov);

struct RamificationData {
  std::array<cplx, 3> sigma;
  std::array<cplx, 3> lambda;
  std::array<cplx, 3> pp2;     // p''(sigma_i)
  std::array<cplx, 3> root;    // sqrt(p''(sigma_i)/2), the recorded branch
  std::array<cplx, 3> omega;   // omega(P_i) = (1/(2w)) / root_i
  bool principal = true;       // false when roots were aligned to a reference
};

// Square roots use the principal branch, or the branch closest to `align`
// when given (used for nearby perturbed coverings).
RamificationData ramification_data(const TorusCovering& cov, const RamificationData* align = nullptr);

// Square root of z on the branch nearest to ref.
cplx aligned_sqrt(cplx z, cplx ref);

double thomae_residual(const TorusCovering& cov);

JacobianResult canonical_jacobian(const TorusCovering& cov, const DiffConfig& cfg = {});

cplx cross_ratio(const TorusCovering& cov);

// Solve lambda(s) = target by Newton from `guess`.
cplx solve_sigma(const TorusCovering& cov, cplx target, cplx guess);

// Derivatives of a function of the covering with respect to the branch points.
struct LambdaGradient {
  std::array<cplx, 3> d{};     // d/d lambda_j
  std::array<cplx, 3> dbar{};  // d/d conj(lambda_j)
};

using CoveringFn = std::function<cplx(const TorusCovering&)>;

LambdaGradient lambda_gradient(const CoveringFn& f, const TorusCovering& cov, bool holomorphic,
                               const DiffConfig& cfg = {});

// Same, reusing a precomputed canonical Jacobian.
LambdaGradient lambda_gradient(const CoveringFn& f, const TorusCovering& cov, bool holomorphic,
                               const JacobianResult& jac, const DiffConfig& cfg = {});

// Straight a- and b-segments starting at `base`.
QuadratureSpec a_segment(const TorusCovering& cov, cplx base, int nodes = 64);
QuadratureSpec b_segment(const TorusCovering& cov, cplx base, int nodes = 64);

}  // namespace hfm
