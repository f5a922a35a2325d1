#pragma once

#include <array>
#include <string>
#include <utility>

#include "hfm/torus.hpp"

namespace hfm {

// The deformation scalar, stored as 1/q so that q = infinity is exact.
class DeformationParam {
 public:
  static DeformationParam from_q(cplx q, bool imaginary_only = false);
  static DeformationParam infinity(bool imaginary_only = false);

  cplx inv() const { return inv_; }
  bool is_infinite() const { return inv_ == 0.0; }
  bool imaginary_only() const { return imaginary_only_; }
  // Finite q; throws for q = infinity.
  cplx q() const;

  // 1/(x + q) computed as (1/q)/(1 + x/q); throws kind on a vanishing denominator.
  cplx inv_shift(cplx x, ErrorKind kind) const;

 private:
  cplx inv_ = 0.0;
  bool imaginary_only_ = false;
};

enum class KernelKind { W, Wq, Schiffer, Bergman, OmegaQ, BQ };
const char* to_string(KernelKind k);

// Coefficients of ds ds~ (or ds conj(ds~) for the Bergman-type kinds).
cplx omega_coeff(const TorusCovering& cov);
cplx W_eval(cplx s, cplx st, const TorusCovering& cov);
cplx Wq_eval(cplx s, cplx st, const TorusCovering& cov, const DeformationParam& q);

struct SchifferBergman {
  cplx omega;    // Schiffer or deformed Schiffer, coefficient of ds ds~
  cplx bergman;  // Bergman or deformed Bergman, coefficient of ds conj(ds~)
};

SchifferBergman schiffer_bergman_eval(cplx s, cplx st, const TorusCovering& cov);

struct VData {
  cplx m;        // conj(mu) / (conj(mu) - mu)
  cplx v;        // coefficient of v = m * omega
  cplx mu_omega; // mu conj(mu) / (conj(mu) - mu), purely imaginary
};
VData v_and_muOmega(const TorusCovering& cov);

SchifferBergman deformed_schiffer_bergman(cplx s, cplx st, const TorusCovering& cov,
                                          const DeformationParam& q);

// Constant parts: every kernel is p(s - s~) [for the holomorphic kinds] plus
// a constant times ds ds~ (or ds conj(ds~)). These return the constants.
cplx kernel_constant(KernelKind kind, const TorusCovering& cov, const DeformationParam& q);

// Kernel with both arguments at ramification points, in the local
// parameters x_i, x_j, using the branch recorded in rd.
cplx kernel_at_ramification(KernelKind kind, int i, int j, const TorusCovering& cov,
                            const DeformationParam& q, const RamificationData& rd);

// Kernel with first argument at s (coefficient of ds) and second at P_j
// (divided by dx_j). For Bergman-type kinds the second slot is conj(P_j).
cplx kernel_at_point_ramification(KernelKind kind, cplx s, int j, const TorusCovering& cov,
                                  const DeformationParam& q, const RamificationData& rd);

// Variational residuals in lambda-coordinates at fixed lambda(P), lambda(Q).
struct RauchResult {
  double residual = 0;             // max of the relative residuals
  std::array<double, 4> parts{};   // individual relative residuals
};

// Holomorphic kinds (W, Wq): |d_j K(P,Q) - K(P,P_j) K(Q,P_j)/2| relative.
RauchResult rauch_residual(KernelKind kind, cplx sP, cplx sQ, int j, const TorusCovering& cov,
                           const DeformationParam& q, const DiffConfig& cfg = {});

// Antiholomorphic derivative of W or Wq, relative to the holomorphic one.
double holomorphy_residual(KernelKind kind, cplx sP, cplx sQ, int j, const TorusCovering& cov,
                           const DeformationParam& q, const DiffConfig& cfg = {});

// The four identities for Omega_q and B_q with imaginary q.
RauchResult rauch_residual_deformed(cplx sP, cplx sQ, int j, const TorusCovering& cov,
                                    const DeformationParam& q, const DiffConfig& cfg = {});

// S_i^W by limit extraction in the local parameter at P_i.
struct ProjectiveConnection {
  cplx value;
  double error;
};
ProjectiveConnection bergman_projective_connection(int i, const TorusCovering& cov,
                                                   double h0 = 0.0, int levels = 5);

// S_i for the deformed kernels, from S_i^W and the constant shift.
cplx projective_connection_Wq(int i, const TorusCovering& cov, const DeformationParam& q,
                              cplx S_W, const RamificationData& rd);
cplx projective_connection_OmegaQ(int i, const TorusCovering& cov, const DeformationParam& q,
                                  cplx S_W, const RamificationData& rd);

// Period integrals of K(., s~) over the a- and b-segments (first argument).
struct Periods {
  cplx a, b;
};
Periods kernel_periods(KernelKind kind, cplx st, const TorusCovering& cov,
                       const DeformationParam& q);

// (1/2 pi i) times the surface integral of conj(v(P)) ^ Omega_q(P, Q) over a
// fundamental parallelogram, as a coefficient of ds~ at Q = st.
cplx projector_action(cplx st, const TorusCovering& cov, const DeformationParam& q,
                      int nodes = 64, Exec exec = Exec::parallel);

}  // namespace hfm
