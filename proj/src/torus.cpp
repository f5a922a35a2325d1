#include "hfm/torus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hfm {

TorusCovering::TorusCovering(cplx w, cplx wp, cplx c, Labeling lab)
    : w_(w), wp_(wp), c_(c), lab_(lab), modulus_(w == 0.0 ? cplx{0, 1} : wp / w) {
  if (w == 0.0 || !finite(w) || !finite(wp) || !finite(c))
    fail(ErrorKind::modulus_domain, "covering: half-period w must be finite and nonzero");
  if (!((wp / w).imag() > 0)) {
    std::ostringstream os;
    os << "covering: Im(w'/w) must be positive, got mu = " << wp / w;
    fail(ErrorKind::modulus_domain, os.str());
  }
  auto d = theta_derivs(ThetaChar::half_half(), 0.0, modulus_, 3);
  eta1_ = -d[3] / (12.0 * w_ * d[1]);
  // Legendre: eta1 w' - eta2 w = pi i / 2
  eta2_ = (eta1_ * wp_ - I * pi / 2.0) / w_;
}

std::array<cplx, 3> TorusCovering::sigma() const {
  if (lab_ == Labeling::cycle) return {wp_, w_, w_ + wp_};
  return {w_, wp_, w_ + wp_};
}

namespace {

// Distance from v to the nearest point of Z + mu Z.
double lattice_distance(cplx v, cplx mu) {
  double n = std::round(v.imag() / mu.imag());
  cplx r = v - n * mu;
  r -= std::round(r.real());
  return std::abs(r);
}

}  // namespace

cplx weierstrass_p(cplx s, const TorusCovering& cov, int order) {
  if (order < 0 || order > 3) fail(ErrorKind::usage, "weierstrass_p: order must be 0..3");
  const cplx tw = 2.0 * cov.w();
  const cplx v = s / tw;
  if (lattice_distance(v, cov.mu()) < 1e-12) fail(ErrorKind::pole, "weierstrass_p: lattice point");
  auto t = theta_derivs(ThetaChar::half_half(), v, cov.modulus(), order + 2);
  // log-derivatives of theta_1 (overall sign cancels)
  const cplx a1 = t[1] / t[0], a2 = t[2] / t[0];
  cplx L;
  switch (order) {
    case 0:
      L = a2 - a1 * a1;
      return -L / (tw * tw) - cov.eta1() / cov.w();
    case 1: {
      const cplx a3 = t[3] / t[0];
      L = a3 - 3.0 * a1 * a2 + 2.0 * a1 * a1 * a1;
      return -L / (tw * tw * tw);
    }
    case 2: {
      const cplx a3 = t[3] / t[0], a4 = t[4] / t[0];
      L = a4 - 4.0 * a1 * a3 - 3.0 * a2 * a2 + 12.0 * a1 * a1 * a2 - 6.0 * std::pow(a1, 4);
      return -L / std::pow(tw, 4);
    }
    default: {
      const cplx a3 = t[3] / t[0], a4 = t[4] / t[0], a5 = t[5] / t[0];
      L = a5 - 5.0 * a1 * a4 - 10.0 * a2 * a3 + 20.0 * a1 * a1 * a3 + 30.0 * a1 * a2 * a2 -
          60.0 * a1 * a1 * a1 * a2 + 24.0 * std::pow(a1, 5);
      return -L / std::pow(tw, 5);
    }
  }
}

cplx weierstrass_zeta(cplx s, const TorusCovering& cov) {
  const cplx tw = 2.0 * cov.w();
  const cplx v = s / tw;
  if (lattice_distance(v, cov.mu()) < 1e-12) fail(ErrorKind::pole, "weierstrass_zeta: lattice point");
  auto t = theta_derivs(ThetaChar::half_half(), v, cov.modulus(), 1);
  return cov.eta1() * s / cov.w() + t[1] / (t[0] * tw);
}

std::array<cplx, 3> branch_points(const TorusCovering& cov) {
  auto s = cov.sigma();
  std::array<cplx, 3> lam;
  for (int i = 0; i < 3; ++i) lam[i] = lambda_of(s[i], cov);
  double scale = 0;
  for (auto l : lam) scale = std::max(scale, std::abs(l - cov.c()));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(lam[i] - lam[j]) < 1e-10 * scale)
        fail(ErrorKind::degenerate, "branch points coincide");
  return lam;
}

cplx aligned_sqrt(cplx z, cplx ref) {
  cplx r = std::sqrt(z);
  return std::real(r * std::conj(ref)) >= 0 ? r : -r;
}

RamificationData ramification_data(const TorusCovering& cov, const RamificationData* align) {
  RamificationData rd;
  rd.sigma = cov.sigma();
  rd.lambda = branch_points(cov);
  rd.principal = align == nullptr;
  for (int i = 0; i < 3; ++i) {
    rd.pp2[i] = weierstrass_p(rd.sigma[i], cov, 2);
    if (std::abs(rd.pp2[i]) < 1e-14 * std::abs(1.0 / (cov.w() * cov.w() * cov.w() * cov.w())))
      fail(ErrorKind::degenerate, "ramification: p'' vanishes at a half-period");
    cplx h = rd.pp2[i] / 2.0;
    rd.root[i] = align ? aligned_sqrt(h, align->root[i]) : std::sqrt(h);
    rd.omega[i] = 1.0 / (2.0 * cov.w() * rd.root[i]);
  }
  return rd;
}

double thomae_residual(const TorusCovering& cov) {
  auto lam = branch_points(cov);
  const auto& m = cov.modulus();
  const cplx tw2 = 4.0 * cov.w() * cov.w();
  const double pi2 = pi * pi;
  cplx th2 = theta_const(2, m), th3 = theta_const(3, m), th4 = theta_const(4, m);
  double r = 0;
  r = std::max(r, rel_residual(pi2 * std::pow(th2, 4), tw2 * (lam[2] - lam[0])));
  r = std::max(r, rel_residual(pi2 * std::pow(th4, 4), tw2 * (lam[1] - lam[2])));
  r = std::max(r, rel_residual(pi2 * std::pow(th3, 4), tw2 * (lam[1] - lam[0])));
  return r;
}

JacobianResult canonical_jacobian(const TorusCovering& cov, const DiffConfig& cfg) {
  auto F = [&](const Vec3& p) {
    TorusCovering c = cov.with_params(p);
    auto s = c.sigma();
    Vec3 out;
    for (int i = 0; i < 3; ++i) out(i) = lambda_of(s[i], c);
    return out;
  };
  return jacobian_fd(F, cov.params(), cfg, 1e10);
}

cplx cross_ratio(const TorusCovering& cov) {
  auto l = branch_points(cov);
  cplx den = l[1] - l[0];
  if (std::abs(den) < 1e-14 * (std::abs(l[0]) + std::abs(l[1]) + 1e-300))
    fail(ErrorKind::degenerate, "cross ratio: lambda1 = lambda2");
  return (l[2] - l[0]) / den;
}

cplx solve_sigma(const TorusCovering& cov, cplx target, cplx guess) {
  cplx s = guess;
  const double scale = std::abs(cov.w()) + std::abs(cov.wp());
  bool polish = false;
  for (int it = 0; it < 60; ++it) {
    cplx f = lambda_of(s, cov) - target;
    cplx df = weierstrass_p(s, cov, 1);
    cplx step = f / df;
    s -= step;
    if (polish) return s;
    // One extra step once quadratic convergence has set in.
    if (std::abs(step) < 1e-10 * scale) polish = true;
  }
  fail(ErrorKind::evaluation_domain, "solve_sigma: Newton iteration did not converge");
}

LambdaGradient lambda_gradient(const CoveringFn& f, const TorusCovering& cov, bool holomorphic,
                               const DiffConfig& cfg) {
  return lambda_gradient(f, cov, holomorphic, canonical_jacobian(cov, cfg), cfg);
}

LambdaGradient lambda_gradient(const CoveringFn& f, const TorusCovering& cov, bool holomorphic,
                               const JacobianResult& jac, const DiffConfig& cfg) {
  cfg.validate();
  const Vec3 p0 = cov.params();
  std::array<cplx, 3> dp{}, dpbar{};
  for (int k = 0; k < 3; ++k) {
    double h = cfg.base_step * (cfg.relative_step ? std::abs(p0(k)) + 1.0 : 1.0);
    auto along = [&](cplx dir) {
      auto g = [&](double t) {
        Vec3 p = p0;
        p(k) += dir * t;
        cplx v = f(cov.with_params(p));
        if (!finite(v)) fail(ErrorKind::evaluation_domain, "lambda_gradient: non-finite value");
        return v;
      };
      return detail::richardson<cplx>(g, 1, h, cfg, nullptr);
    };
    cplx dx = along(1.0);
    if (holomorphic) {
      dp[k] = dx;
    } else {
      cplx dy = along(I);
      dp[k] = (dx - I * dy) / 2.0;
      dpbar[k] = (dx + I * dy) / 2.0;
    }
  }
  LambdaGradient g;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      g.d[j] += dp[k] * jac.inverse(k, j);
      g.dbar[j] += dpbar[k] * std::conj(jac.inverse(k, j));
    }
  return g;
}

QuadratureSpec a_segment(const TorusCovering& cov, cplx base, int nodes) {
  QuadratureSpec q;
  q.a = base;
  q.b = base + 2.0 * cov.w();
  q.node_count = nodes;
  return q;
}

QuadratureSpec b_segment(const TorusCovering& cov, cplx base, int nodes) {
  QuadratureSpec q;
  q.a = base;
  q.b = base + 2.0 * cov.wp();
  q.node_count = nodes;
  return q;
}

}  // namespace hfm
