#include "hfm/kernels.hpp"

#include <cmath>
#include <sstream>

namespace hfm {

DeformationParam DeformationParam::from_q(cplx q, bool imaginary_only) {
  if (q == 0.0 || !finite(q)) fail(ErrorKind::usage, "deformation parameter q must be finite and nonzero");
  if (imaginary_only && std::abs(q.real()) > 1e-14 * std::abs(q))
    fail(ErrorKind::usage, "deformation parameter q must be purely imaginary here");
  DeformationParam d;
  d.inv_ = 1.0 / q;
  d.imaginary_only_ = imaginary_only;
  return d;
}

DeformationParam DeformationParam::infinity(bool imaginary_only) {
  DeformationParam d;
  d.imaginary_only_ = imaginary_only;
  return d;
}

cplx DeformationParam::q() const {
  if (is_infinite()) fail(ErrorKind::usage, "q is infinite");
  return 1.0 / inv_;
}

cplx DeformationParam::inv_shift(cplx x, ErrorKind kind) const {
  cplx den = 1.0 + x * inv_;
  if (std::abs(den) < 1e-12) {
    std::ostringstream os;
    os << (kind == ErrorKind::divisor ? "divisor" : "submanifold") << ": " << x << " + q vanishes";
    fail(kind, os.str());
  }
  return inv_ / den;
}

const char* to_string(KernelKind k) {
  switch (k) {
    case KernelKind::W: return "W";
    case KernelKind::Wq: return "Wq";
    case KernelKind::Schiffer: return "Schiffer";
    case KernelKind::Bergman: return "Bergman";
    case KernelKind::OmegaQ: return "OmegaQ";
    case KernelKind::BQ: return "BQ";
  }
  return "?";
}

namespace {

bool bergman_type(KernelKind k) { return k == KernelKind::Bergman || k == KernelKind::BQ; }

void require_imaginary(const DeformationParam& q) {
  if (!q.is_infinite() && std::abs(q.inv().real()) > 1e-14 * std::abs(q.inv()))
    fail(ErrorKind::usage, "deformed Schiffer/Bergman kernels need imaginary q");
}

}  // namespace

cplx omega_coeff(const TorusCovering& cov) { return 1.0 / (2.0 * cov.w()); }

VData v_and_muOmega(const TorusCovering& cov) {
  const cplx mu = cov.mu(), mub = std::conj(mu);
  VData d;
  d.m = mub / (mub - mu);
  d.v = d.m * omega_coeff(cov);
  d.mu_omega = mu * mub / (mub - mu);
  return d;
}

cplx kernel_constant(KernelKind kind, const TorusCovering& cov, const DeformationParam& q) {
  const cplx om = omega_coeff(cov);
  const double k = pi / cov.mu().imag();
  const cplx base = cov.eta1() / cov.w();
  switch (kind) {
    case KernelKind::W: return base;
    case KernelKind::Wq: return base - two_pi_i * q.inv_shift(cov.mu(), ErrorKind::divisor) * om * om;
    case KernelKind::Schiffer: return base - k * om * om;
    case KernelKind::Bergman: return k * om * std::conj(om);
    case KernelKind::OmegaQ: {
      require_imaginary(q);
      VData v = v_and_muOmega(cov);
      return base - k * om * om - two_pi_i * q.inv_shift(v.mu_omega, ErrorKind::submanifold) * v.v * v.v;
    }
    case KernelKind::BQ: {
      require_imaginary(q);
      VData v = v_and_muOmega(cov);
      return k * om * std::conj(om) -
             two_pi_i * q.inv_shift(v.mu_omega, ErrorKind::submanifold) * v.v * std::conj(v.v);
    }
  }
  return 0.0;
}

namespace {

cplx kernel_value(KernelKind kind, cplx s, cplx st, const TorusCovering& cov, const DeformationParam& q) {
  cplx c = kernel_constant(kind, cov, q);
  if (bergman_type(kind)) return c;
  return weierstrass_p(s - st, cov) + c;
}

}  // namespace

cplx W_eval(cplx s, cplx st, const TorusCovering& cov) {
  return kernel_value(KernelKind::W, s, st, cov, DeformationParam::infinity());
}

cplx Wq_eval(cplx s, cplx st, const TorusCovering& cov, const DeformationParam& q) {
  return kernel_value(KernelKind::Wq, s, st, cov, q);
}

SchifferBergman schiffer_bergman_eval(cplx s, cplx st, const TorusCovering& cov) {
  auto inf = DeformationParam::infinity();
  return {kernel_value(KernelKind::Schiffer, s, st, cov, inf),
          kernel_value(KernelKind::Bergman, s, st, cov, inf)};
}

SchifferBergman deformed_schiffer_bergman(cplx s, cplx st, const TorusCovering& cov,
                                          const DeformationParam& q) {
  return {kernel_value(KernelKind::OmegaQ, s, st, cov, q),
          kernel_value(KernelKind::BQ, s, st, cov, q)};
}

cplx kernel_at_ramification(KernelKind kind, int i, int j, const TorusCovering& cov,
                            const DeformationParam& q, const RamificationData& rd) {
  if (bergman_type(kind)) return kernel_constant(kind, cov, q) / (rd.root[i] * std::conj(rd.root[j]));
  if (i == j) fail(ErrorKind::pole, "kernel at ramification: diagonal of a singular kernel");
  return kernel_value(kind, rd.sigma[i], rd.sigma[j], cov, q) / (rd.root[i] * rd.root[j]);
}

cplx kernel_at_point_ramification(KernelKind kind, cplx s, int j, const TorusCovering& cov,
                                  const DeformationParam& q, const RamificationData& rd) {
  cplx v = kernel_value(kind, s, rd.sigma[j], cov, q);
  return v / (bergman_type(kind) ? std::conj(rd.root[j]) : rd.root[j]);
}

namespace {

// Points held at fixed lambda while the covering moves.
struct TrackedPair {
  cplx lamP, lamQ, sP, sQ;
  std::pair<cplx, cplx> at(const TorusCovering& c) const {
    return {solve_sigma(c, lamP, sP), solve_sigma(c, lamQ, sQ)};
  }
};

}  // namespace

RauchResult rauch_residual(KernelKind kind, cplx sP, cplx sQ, int j, const TorusCovering& cov,
                           const DeformationParam& q, const DiffConfig& cfg) {
  if (kind != KernelKind::W && kind != KernelKind::Wq)
    fail(ErrorKind::usage, "rauch_residual: kind must be W or Wq");
  TrackedPair tp{lambda_of(sP, cov), lambda_of(sQ, cov), sP, sQ};
  auto f = [&](const TorusCovering& c) {
    auto [a, b] = tp.at(c);
    return kernel_value(kind, a, b, c, q) / (weierstrass_p(a, c, 1) * weierstrass_p(b, c, 1));
  };
  auto g = lambda_gradient(f, cov, true, cfg);
  auto rd = ramification_data(cov);
  cplx dP = weierstrass_p(sP, cov, 1), dQ = weierstrass_p(sQ, cov, 1);
  cplx KP = kernel_at_point_ramification(kind, sP, j, cov, q, rd) / dP;
  cplx KQ = kernel_at_point_ramification(kind, sQ, j, cov, q, rd) / dQ;
  RauchResult r;
  r.parts[0] = rel_residual(g.d[j], 0.5 * KP * KQ);
  r.residual = r.parts[0];
  return r;
}

double holomorphy_residual(KernelKind kind, cplx sP, cplx sQ, int j, const TorusCovering& cov,
                           const DeformationParam& q, const DiffConfig& cfg) {
  TrackedPair tp{lambda_of(sP, cov), lambda_of(sQ, cov), sP, sQ};
  auto f = [&](const TorusCovering& c) {
    auto [a, b] = tp.at(c);
    return kernel_value(kind, a, b, c, q) / (weierstrass_p(a, c, 1) * weierstrass_p(b, c, 1));
  };
  auto g = lambda_gradient(f, cov, false, cfg);
  return std::abs(g.dbar[j]) / std::max(std::abs(g.d[j]), 1e-300);
}

RauchResult rauch_residual_deformed(cplx sP, cplx sQ, int j, const TorusCovering& cov,
                                    const DeformationParam& q, const DiffConfig& cfg) {
  require_imaginary(q);
  TrackedPair tp{lambda_of(sP, cov), lambda_of(sQ, cov), sP, sQ};
  auto fO = [&](const TorusCovering& c) {
    auto [a, b] = tp.at(c);
    return kernel_value(KernelKind::OmegaQ, a, b, c, q) /
           (weierstrass_p(a, c, 1) * weierstrass_p(b, c, 1));
  };
  auto fB = [&](const TorusCovering& c) {
    auto [a, b] = tp.at(c);
    return kernel_constant(KernelKind::BQ, c, q) /
           (weierstrass_p(a, c, 1) * std::conj(weierstrass_p(b, c, 1)));
  };
  auto jac = canonical_jacobian(cov, cfg);
  auto gO = lambda_gradient(fO, cov, false, jac, cfg);
  auto gB = lambda_gradient(fB, cov, false, jac, cfg);
  auto rd = ramification_data(cov);
  const cplx dP = weierstrass_p(sP, cov, 1), dQ = weierstrass_p(sQ, cov, 1);
  const cplx r = rd.root[j];
  const cplx bq = kernel_constant(KernelKind::BQ, cov, q);
  const cplx OPj = kernel_value(KernelKind::OmegaQ, sP, rd.sigma[j], cov, q) / (dP * r);
  const cplx OQj = kernel_value(KernelKind::OmegaQ, sQ, rd.sigma[j], cov, q) / (dQ * r);
  const cplx BPj = bq / (dP * std::conj(r));       // B_q(P, conj P_j)
  const cplx BQj = bq / (dQ * std::conj(r));       // B_q(Q, conj P_j)
  const cplx BjQ = bq / (r * std::conj(dQ));       // B_q(P_j, conj Q)
  RauchResult out;
  out.parts[0] = rel_residual(gO.d[j], 0.5 * OPj * OQj);
  out.parts[1] = rel_residual(gO.dbar[j], 0.5 * BPj * BQj);
  out.parts[2] = rel_residual(gB.d[j], 0.5 * OPj * BjQ);
  out.parts[3] = rel_residual(gB.dbar[j], 0.5 * BPj * std::conj(OQj));
  for (double p : out.parts) out.residual = std::max(out.residual, p);
  return out;
}

ProjectiveConnection bergman_projective_connection(int i, const TorusCovering& cov, double h0,
                                                   int levels) {
  auto rd = ramification_data(cov);
  const cplx sig = rd.sigma[i];
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  const cplx ei = rd.lambda[i] - cov.c();
  const cplx num = (ei - (rd.lambda[j] - cov.c())) * (ei - (rd.lambda[k] - cov.c()));
  if (h0 <= 0) h0 = 0.2 * std::min(std::abs(cov.w()), std::abs(cov.wp()));
  // Symmetric pair s = sig +- d has local parameters x = -y = h with
  // h^2 = p(sig + d) - e_i, taken from the addition theorem to avoid cancellation.
  auto F = [&](double d) {
    const cplx h2 = num / (weierstrass_p(d, cov) - ei);
    const cplx sp = sig + d, sm = sig - d;
    const cplx jac = -4.0 * h2 / (weierstrass_p(sp, cov, 1) * weierstrass_p(sm, cov, 1));
    return W_eval(sp, sm, cov) * jac - 1.0 / (4.0 * h2);
  };
  std::vector<std::vector<cplx>> R(levels);
  for (int l = 0; l < levels; ++l) {
    R[l].push_back(F(h0 / double(1 << l)));
    for (int m = 1; m <= l; ++m)
      R[l].push_back(R[l][m - 1] + (R[l][m - 1] - R[l - 1][m - 1]) / (std::pow(4.0, m) - 1.0));
  }
  ProjectiveConnection pc{R[levels - 1][levels - 1],
                          std::abs(R[levels - 1][levels - 1] - R[levels - 1][levels - 2])};
  if (!(pc.error <= 1e-6 * std::max(1.0, std::abs(pc.value))))
    fail(ErrorKind::extraction, "projective connection: Richardson limit did not settle");
  return pc;
}

cplx projective_connection_Wq(int i, const TorusCovering& cov, const DeformationParam& q, cplx S_W,
                              const RamificationData& rd) {
  auto inf = DeformationParam::infinity();
  cplx dc = kernel_constant(KernelKind::Wq, cov, q) - kernel_constant(KernelKind::W, cov, inf);
  return S_W + dc / (rd.root[i] * rd.root[i]);
}

cplx projective_connection_OmegaQ(int i, const TorusCovering& cov, const DeformationParam& q,
                                  cplx S_W, const RamificationData& rd) {
  auto inf = DeformationParam::infinity();
  cplx dc = kernel_constant(KernelKind::OmegaQ, cov, q) - kernel_constant(KernelKind::W, cov, inf);
  return S_W + dc / (rd.root[i] * rd.root[i]);
}

Periods kernel_periods(KernelKind kind, cplx st, const TorusCovering& cov, const DeformationParam& q) {
  auto f = [&](cplx s) { return kernel_value(kind, s, st, cov, q); };
  // Base points half a period off the pole row/column.
  auto qa = a_segment(cov, st + cov.wp());
  auto qb = b_segment(cov, st + cov.w());
  if (bergman_type(kind)) return {contour_integral_conj(f, qa), contour_integral_conj(f, qb)};
  return {contour_integral(f, qa), contour_integral(f, qb)};
}

cplx projector_action(cplx st, const TorusCovering& cov, const DeformationParam& q, int nodes,
                      Exec exec) {
  require_imaginary(q);
  const cplx e1 = 2.0 * cov.w(), e2 = 2.0 * cov.wp();
  // Parallelogram centred on st, so the only pole inside is s = st.
  const cplx o = st - cov.w() - cov.wp();
  const cplx c = kernel_constant(KernelKind::OmegaQ, cov, q);
  // Regular part: Omega_q minus its double pole, surface-integrated.
  auto regular = [&](cplx s) {
    cplx z = s - st;
    if (std::abs(z) < 1e-3 * std::abs(cov.w())) {
      // p(z) - 1/z^2 = g2 z^2 / 20 + ...; the node set never gets this close.
      return c;
    }
    return weierstrass_p(z, cov) - 1.0 / (z * z) + c;
  };
  cplx reg = 2.0 * I * surface_integral(regular, o, e1, e2, nodes, exec);
  // Double pole: p.v. iint z^-2 ds^ ^ ds equals the boundary integral of
  // d(conj s)/z (the excised disc contributes nothing in the limit).
  const cplx corners[4] = {o, o + e1, o + e1 + e2, o + e2};
  cplx sing{};
  for (int k = 0; k < 4; ++k) {
    QuadratureSpec spec;
    spec.a = corners[k];
    spec.b = corners[(k + 1) % 4];
    spec.node_count = nodes;
    sing += contour_integral_conj([&](cplx s) { return 1.0 / (s - st); }, spec);
  }
  const cplx vbar = std::conj(v_and_muOmega(cov).v);
  return vbar * (sing + reg) / two_pi_i;
}

}  // namespace hfm
