#include "hfm/suites.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <utility>

#include "hfm/frobenius3.hpp"
#include "hfm/isomono.hpp"
#include "hfm/realdouble.hpp"
#include "hfm/tau.hpp"

namespace hfm {

namespace {

using Params = std::map<std::string, cplx>;
using Task = std::function<std::vector<CheckReport>()>;

const cplx kInfQ(1e300, 0);  // sentinel for q = infinity in parameter maps

DeformationParam make_q(cplx q, bool imaginary = false) {
  return q == kInfQ ? DeformationParam::infinity(imaginary) : DeformationParam::from_q(q, imaginary);
}

// Purely imaginary q of the same size, for the real-double constructions.
cplx imaginary_version(cplx q) {
  if (q == kInfQ || q.real() == 0.0) return q;
  return cplx(0, std::abs(q));
}

class Ctx {
 public:
  Ctx(std::string suite, const SuiteConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

  double tol(double t) const { return (cfg_.tol ? *cfg_.tol : t) * (cfg_.tol ? 1.0 : cfg_.tol_scale); }

  CheckReport check(const std::string& name, const Params& p, double residual, double tolerance) const {
    return CheckReport::make(suite_, name, p, residual, tol(tolerance), cfg_.seed);
  }
  CheckReport control(const std::string& name, const Params& p, double residual, double threshold) const {
    return CheckReport::make_control(suite_, name, p, residual, threshold, cfg_.seed);
  }
  CheckReport failed(const std::string& name, const Params& p, double tolerance, const Error& e) const {
    CheckReport r = CheckReport::make(suite_, name, p, std::numeric_limits<double>::infinity(), tol(tolerance),
                                      cfg_.seed);
    r.note = std::string(to_string(e.kind())) + ": " + e.what();
    return r;
  }

  // Runs body; a library error becomes a failed entry.
  template <class F>
  std::vector<CheckReport> guard(const std::string& name, const Params& p, double tolerance, F body) const {
    try {
      return body();
    } catch (const Error& e) {
      return {failed(name, p, tolerance, e)};
    }
  }

  const SuiteConfig& cfg() const { return cfg_; }
  const std::string& suite() const { return suite_; }

 private:
  std::string suite_;
  const SuiteConfig& cfg_;
};

Params cov_params(const TorusCovering& c) { return {{"w", c.w()}, {"wp", c.wp()}, {"c", c.c()}}; }

Params with(Params p, const std::string& k, cplx v) {
  p[k] = v;
  return p;
}

cplx sample_mu(Sampler& s) { return s.box(-0.45, 0.45, 0.6, 2.0); }

std::vector<TorusCovering> coverings(const SuiteConfig& cfg, int n, std::uint64_t salt) {
  if (!cfg.coverings.empty()) return cfg.coverings;
  std::vector<TorusCovering> out{
      {0.5, {0, 0.7}, 0}, {0.5, {0.1, 0.9}, 0.2}, {0.5, {0, 0.8}, 0.3}, {0.7, {0.3, 1.1}, 0.1},
      {{0.4, 0.1}, {-0.1, 0.6}, 0}};
  out.resize(std::min<std::size_t>(out.size(), n), out[0]);
  Sampler s(cfg.seed ^ salt);
  while (int(out.size()) < n) {
    const double w = s.uniform(0.4, 0.7);
    out.emplace_back(w, w * sample_mu(s), s.box(-0.3, 0.3, -0.3, 0.3));
  }
  return out;
}

std::vector<cplx> qs(const SuiteConfig& cfg, std::vector<cplx> defaults) {
  return cfg.q_values.empty() ? defaults : cfg.q_values;
}

int samples(const SuiteConfig& cfg, int def) { return cfg.samples > 0 ? cfg.samples : def; }

std::vector<CheckReport> run_tasks(const std::vector<Task>& tasks, Exec exec) {
  std::vector<std::vector<CheckReport>> parts(tasks.size());
  const long n = long(tasks.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) parts[i] = tasks[i]();
  } else {
    for (long i = 0; i < n; ++i) parts[i] = tasks[i]();
  }
  std::vector<CheckReport> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Variance of G differences after reducing Im into (-pi/24, pi/24] around the first one.
double g_difference_variance(const std::vector<cplx>& d) {
  std::vector<cplx> r;
  for (auto z : d) {
    cplx x = z - d.front();
    r.emplace_back(x.real(), wrap_symmetric(x.imag(), 2 * pi / 24));
  }
  return variance(r);
}

// ---------------------------------------------------------------- theta

std::vector<Task> theta_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  Sampler s(ctx.cfg().seed);
  const int n = samples(ctx.cfg(), 20);
  for (int k = 0; k < n; ++k) {
    const cplx mu = sample_mu(s);
    const cplx z = s.box(-0.5, 0.5, -0.4, 0.4);
    tasks.push_back([&ctx, mu, z] {
      Params p{{"mu", mu}, {"z", z}};
      return ctx.guard("theta", p, 1e-11, [&] {
        const Modulus m(mu);
        const cplx t = theta1(z, m);
        std::vector<CheckReport> r;
        r.push_back(ctx.check("quasi-period z+1", p, rel_residual(theta1(z + 1.0, m), -t), 1e-11));
        r.push_back(ctx.check("quasi-period z+mu", p,
                              rel_residual(theta1(z + mu, m), -std::exp(-I * pi * mu - two_pi_i * z) * t), 1e-11));
        r.push_back(ctx.check("odd", p, rel_residual(theta1(-z, m), -t), 1e-11));
        const cplx t2 = theta_const(2, m), t3 = theta_const(3, m), t4 = theta_const(4, m);
        r.push_back(ctx.check("Jacobi quartic", p, rel_residual(std::pow(t2, 4) + std::pow(t4, 4), std::pow(t3, 4)),
                              1e-11));
        r.push_back(ctx.check("derivative identity", p, rel_residual(theta1(0.0, m, 1), pi * t2 * t3 * t4), 1e-11));
        static const std::pair<ThetaChar, const char*> chars[] = {
            {ThetaChar::half_half(), "heat equation [1/2,1/2]"},
            {ThetaChar::half_zero(), "heat equation [1/2,0]"},
            {ThetaChar::zero_zero(), "heat equation [0,0]"},
            {ThetaChar::zero_half(), "heat equation [0,1/2]"}};
        for (const auto& [ch, name] : chars) {
          auto f = [&](cplx m2) { return theta_eval(ch, z, Modulus(m2)); };
          DiffConfig dc;
          dc.base_step = 1e-3;
          const cplx fd = nth_derivative(f, mu, 1, dc).value;
          r.push_back(ctx.check(name, p,
                                rel_residual(fd, theta_mu_derivative(ch, z, m)), 1e-8));
        }
        return r;
      });
    });
  }
  return tasks;
}

// ---------------------------------------------------------------- chazy

std::vector<Task> chazy_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  Sampler s(ctx.cfg().seed ^ 0x2);
  const int n = samples(ctx.cfg(), 10);
  struct M {
    const char* name;
    cplx a, b, c, d;
  };
  static const M mats[] = {{"T", 1, 1, 0, 1}, {"S", 0, -1, 1, 0}, {"ST2", 1, 0, 2, 1}};
  for (int k = 0; k < n; ++k) {
    const cplx mu = sample_mu(s);
    tasks.push_back([&ctx, mu] {
      Params p{{"mu", mu}};
      return ctx.guard("chazy", p, 1e-7, [&] {
        std::vector<CheckReport> r;
        const Modulus m(mu);
        r.push_back(ctx.check("chazy gamma", p, chazy_residual(ChazyFunction::gamma(), m), 1e-7));
        for (const auto& t : mats) {
          auto f = sl2_transform_chazy(ChazyFunction::gamma(), t.a, t.b, t.c, t.d);
          r.push_back(ctx.check(std::string("chazy sl2 ") + t.name, p, chazy_residual(f, m), 1e-7));
        }
        auto lin = ChazyFunction::custom("mu", [](cplx x) { return ChazyJet{x, 1.0, 0.0, 0.0}; });
        r.push_back(ctx.check("chazy control f=mu gives 9", p, std::abs(chazy_residual(lin, m) - 9.0), 1e-9));
        r.push_back(ctx.check("gamma period 1", p, rel_residual(gamma_chazy(Modulus(mu + 1.0)), gamma_chazy(m)),
                              1e-11));
        return r;
      });
    });
  }
  return tasks;
}

// ---------------------------------------------------------------- torus

std::vector<Task> torus_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  for (const auto& cov : coverings(ctx.cfg(), samples(ctx.cfg(), 10), 0x3)) {
    tasks.push_back([&ctx, cov] {
      Params p = cov_params(cov);
      return ctx.guard("torus", p, 1e-10, [&] {
        std::vector<CheckReport> r;
        auto l = branch_points(cov);
        const double scale = std::abs(l[0]) + std::abs(l[1]) + std::abs(l[2]);
        r.push_back(ctx.check("lambda sum 3c", p, std::abs(l[0] + l[1] + l[2] - 3.0 * cov.c()) / std::max(1.0, scale),
                              1e-10));
        r.push_back(ctx.check("Thomae", p, thomae_residual(cov), 1e-10));
        const cplx base = 0.37 * cov.w() + 0.29 * cov.wp();
        const cplx Ia = contour_integral([&](cplx s) { return weierstrass_p(s, cov); }, a_segment(cov, base));
        r.push_back(ctx.check("a-period of p", p,
                              rel_residual(Ia, I * pi * gamma_chazy(cov.modulus()) / (2.0 * cov.w())), 1e-9));
        const cplx s = 0.21 * cov.w() + 0.17 * cov.wp();
        const cplx P = weierstrass_p(s, cov) + cov.c(), P1 = weierstrass_p(s, cov, 1);
        r.push_back(ctx.check("cubic relation", p,
                              rel_residual(P1 * P1, 4.0 * (P - l[0]) * (P - l[1]) * (P - l[2])), 1e-10));
        const cplx dz = weierstrass_zeta(s + 2.0 * cov.wp(), cov) - weierstrass_zeta(s, cov);
        r.push_back(ctx.check("zeta quasi-period", p, rel_residual(dz, 2.0 * cov.eta2()), 1e-10));
        r.push_back(ctx.check("Riemann-Hurwitz", p, std::abs(TorusCovering::riemann_hurwitz_defect()), 0.0));
        return r;
      });
    });
  }
  return tasks;
}

// ---------------------------------------------------------------- kernels

std::vector<Task> kernel_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  const auto qv = qs(ctx.cfg(), {{2, 1}, {0, 3}});
  for (const auto& cov : coverings(ctx.cfg(), samples(ctx.cfg(), 3), 0x4)) {
    for (cplx qq : qv) {
      tasks.push_back([&ctx, cov, qq] {
        Params p = with(cov_params(cov), "q", qq);
        return ctx.guard("kernels", p, 1e-5, [&] {
          std::vector<CheckReport> r;
          const auto q = make_q(qq);
          const auto qi = make_q(imaginary_version(qq), true);
          const cplx P = 0.26 * cov.w() + 0.3 * cov.wp(), Q = 0.62 * cov.w() - 0.1 * cov.wp();
          for (int j = 0; j < 3; ++j) {
            Params pj = with(p, "j", double(j + 1));
            r.push_back(ctx.check("Rauch W", pj, rauch_residual(KernelKind::W, P, Q, j, cov, q).residual, 1e-5));
            r.push_back(ctx.check("Rauch Wq", pj, rauch_residual(KernelKind::Wq, P, Q, j, cov, q).residual, 1e-5));
            r.push_back(ctx.check("holomorphy Wq", pj, holomorphy_residual(KernelKind::Wq, P, Q, j, cov, q), 1e-5));
            auto d = rauch_residual_deformed(P, Q, j, cov, qi);
            const char* names[4] = {"variation d Omega_q", "variation dbar Omega_q", "variation d B_q",
                                    "variation dbar B_q"};
            for (int k = 0; k < 4; ++k) r.push_back(ctx.check(names[k], with(pj, "qi", imaginary_version(qq)),
                                                              d.parts[k], 1e-5));
          }
          const auto pw = kernel_periods(KernelKind::W, Q, cov, q);
          r.push_back(ctx.check("W a-period", p, std::abs(pw.a), 1e-9));
          r.push_back(ctx.check("W b-period", p, rel_residual(pw.b / two_pi_i, omega_coeff(cov)), 1e-9));
          const auto pq = kernel_periods(KernelKind::Wq, Q, cov, q);
          r.push_back(ctx.check("Wq normalization", p, std::abs(pq.a + q.inv() * pq.b) / std::abs(pq.b), 1e-8));
          const auto pO = kernel_periods(KernelKind::OmegaQ, Q, cov, qi);
          const auto pB = kernel_periods(KernelKind::BQ, Q, cov, qi);
          const double sc = std::abs(pO.b) + std::abs(pB.b);
          r.push_back(ctx.check("Omega_q + B_q a-periods", p, std::abs(pO.a + pB.a + qi.inv() * pO.b) / sc, 1e-8));
          r.push_back(ctx.check("Omega_q + B_q b-periods", p, std::abs(pO.b + pB.b) / sc, 1e-8));
          const VData v = v_and_muOmega(cov);
          const cplx expect = -v.mu_omega * qi.inv_shift(v.mu_omega, ErrorKind::submanifold) * v.v;
          r.push_back(ctx.check("Omega_q projector", p,
                                std::abs(projector_action(Q, cov, qi, 64, Exec::serial) - expect) / std::abs(v.v),
                                1e-8));
          // |Wq - W| ~ 1/|q|: tenfold q gives a ratio near 10
          if (qq != kInfQ) {
            auto diff = [&](cplx x) { return std::abs(Wq_eval(P, Q, cov, make_q(x)) - W_eval(P, Q, cov)); };
            const double ratio = diff(1e3 * qq / std::abs(qq)) / diff(1e4 * qq / std::abs(qq));
            r.push_back(ctx.check("q decay ratio", p, std::abs(ratio - 10.0), 2.0));
          }
          return r;
        });
      });
    }
  }
  return tasks;
}

// ---------------------------------------------------------------- frobenius3

FlatChart3 random_chart3(Sampler& s, const DeformationParam& q) {
  const cplx mu = sample_mu(s);
  FlatChart3 t;
  t.t1 = s.box(-1, 1, -1, 1);
  t.t2 = s.box(0.5, 1.5, -0.5, 0.5);
  t.t3 = mu * (1.0 - mu * q.inv_shift(mu, ErrorKind::divisor)) / two_pi_i;  // q mu/(2 pi i (mu+q))
  return t;
}

Params chart3_params(const FlatChart3& t) { return {{"t1", t.t1}, {"t2", t.t2}, {"t3", t.t3}}; }

std::vector<Task> frobenius3_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  const auto qv = qs(ctx.cfg(), {1.0, {2, 1}, {0, 5}, 1e3});
  const int n = samples(ctx.cfg(), 20);
  for (std::size_t iq = 0; iq < qv.size(); ++iq) {
    const cplx qq = qv[iq];
    for (int k = 0; k < n; ++k) {
      tasks.push_back([&ctx, qq, k, iq] {
        Params p{{"q", qq}, {"sample", double(k)}};
        return ctx.guard("WDVV", p, 1e-7, [&] {
          const auto q = make_q(qq);
          Sampler s(ctx.cfg().seed ^ (0x5000 + 97 * iq + k));
          const FlatChart3 t = random_chart3(s, q);
          Params pt = chart3_params(t);
          pt["q"] = qq;
          const auto fam = PrepotentialFamily3::deformed(q);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("WDVV deformed", pt, wdvv_residual3(fam, t), 1e-7));
          auto T = third_derivatives3(fam, t);
          const double target[3][3] = {{0, 0, 1}, {0, -0.5, 0}, {1, 0, 0}};
          double f1 = 0;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) f1 = std::max(f1, std::abs(T[0][a][b] - target[a][b]));
          r.push_back(ctx.check("F1 constant", pt, f1, 1e-12));
          for (cplx kappa : {cplx(2), I, cplx(-3)})
            r.push_back(ctx.check("quasihomogeneity", with(pt, "kappa", kappa),
                                  quasihomogeneity_residual3(fam, t, kappa), 1e-9));
          return r;
        });
      });
    }
  }
  // Coincidence of deformed and undeformed structures for 1/q in {1, 2}.
  for (double invq : {1.0, 2.0}) {
    tasks.push_back([&ctx, invq, n] {
      Params p{{"1/q", invq}};
      return ctx.guard("deformed equals undeformed", p, 1e-7, [&] {
        const auto q = DeformationParam::from_q(1.0 / invq);
        Sampler s(ctx.cfg().seed ^ 0x5100);
        double d = 0;
        for (int k = 0; k < std::min(n, 5); ++k) {
          FlatChart3 t = random_chart3(s, DeformationParam::infinity());
          // chart where both gamma arguments are in the upper half-plane
          const cplx mu = chart3_mu(t, q);
          if (mu.imag() <= 0.05) continue;
          auto a = third_derivatives3(PrepotentialFamily3::deformed(q), t);
          auto b = third_derivatives3(PrepotentialFamily3::undeformed(), t);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int l = 0; l < 3; ++l) d = std::max(d, std::abs(a[i][j][l] - b[i][j][l]));
        }
        return std::vector<CheckReport>{ctx.check("deformed equals undeformed", p, d, 1e-7)};
      });
    });
  }
  // Charts from the coverings, including the divisor guard.
  for (const auto& cov : coverings(ctx.cfg(), 2, 0x5)) {
    for (cplx qq : qv) {
      tasks.push_back([&ctx, cov, qq] {
        Params p = with(cov_params(cov), "q", qq);
        return ctx.guard("chart from covering", p, 1e-12, [&] {
          const auto q = make_q(qq);
          const FlatChart3 t = flat_coords3(cov, q);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("chart mu round trip", p, rel_residual(chart3_mu(t, q), cov.mu()), 1e-12));
          r.push_back(ctx.check("WDVV chart", p, wdvv_residual3(PrepotentialFamily3::deformed(q), t), 1e-7));
          return r;
        });
      });
    }
  }
  tasks.push_back([&ctx] {
    Params p;
    return ctx.guard("chazy family control", p, 1e-3, [&] {
      Sampler s(ctx.cfg().seed ^ 0x5200);
      const FlatChart3 t = random_chart3(s, DeformationParam::infinity());
      auto lin = ChazyFunction::custom("mu", [](cplx x) { return ChazyJet{x, 1.0, 0.0, 0.0}; });
      std::vector<CheckReport> r;
      r.push_back(ctx.control("WDVV control f=mu", chart3_params(t),
                              wdvv_residual3(PrepotentialFamily3::chazy_family(lin), t), 1e-3));
      r.push_back(ctx.check("WDVV constant f=1", chart3_params(t),
                            wdvv_residual3(PrepotentialFamily3::chazy_family(ChazyFunction::constant(1.0)), t), 1e-9));
      r.push_back(ctx.check("WDVV sl2 family", chart3_params(t),
                            wdvv_residual3(PrepotentialFamily3::sl2_family(1.0, 0.0, 0.3, 1.0), t), 1e-7));
      return r;
    });
  });
  return tasks;
}

// ---------------------------------------------------------------- isomono

std::vector<Task> isomono_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  const auto qv = qs(ctx.cfg(), {{2, 1}, {0, 3}, 1e8});
  for (const auto& cov : coverings(ctx.cfg(), samples(ctx.cfg(), 5), 0x6)) {
    for (cplx qq : qv) {
      tasks.push_back([&ctx, cov, qq] {
        Params p = with(cov_params(cov), "q", qq);
        return ctx.guard("isomonodromy", p, 1e-5, [&] {
          const auto q = make_q(qq);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("Omega constraint", p, omega_triplet(cov.modulus(), q).constraint_residual(), 1e-9));
          r.push_back(ctx.check("system top", p, top_system_residual(cov, q), 1e-5));
          auto pc = proposition_crosscheck(cov, q);
          r.push_back(ctx.check("rotation squares", p, pc[0], 1e-7));
          r.push_back(ctx.check("rotation triple product", p, pc[1], 1e-7));
          auto de = darboux_egoroff_residual(cov, q);
          r.push_back(ctx.check("Darboux-Egoroff flat1", p, de[0], 1e-5));
          r.push_back(ctx.check("Darboux-Egoroff flat2", p, de[1], 1e-5));
          r.push_back(ctx.check("rotation Euler relation", p, rot_euler_residual(cov, q), 1e-5));
          return r;
        });
      });
    }
  }
  tasks.push_back([&ctx] {
    const TorusCovering cov(0.5, {0, 0.8}, 0.3);
    const auto q = DeformationParam::from_q({2, 1});
    Params p = with(cov_params(cov), "q", cplx(2, 1));
    return ctx.guard("isomonodromy controls", p, 1e-3, [&] {
      std::vector<CheckReport> r;
      r.push_back(ctx.control("system top control 2/(mu+q)", p,
                              top_system_residual(cov, q, OmegaVariant::doubled_shift_O1), 1e-3));
      r.push_back(ctx.control("Darboux-Egoroff control shifted b12", p, darboux_egoroff_residual(cov, q, 1e-3)[0],
                              1e-4));
      double flagged = 0;
      try {
        proposition_crosscheck(cov.relabeled(Labeling::text), q);
      } catch (const Error& e) {
        flagged = e.kind() == ErrorKind::convention ? 1 : 0;
      }
      r.push_back(ctx.control("permuted labeling flagged", p, flagged, 0.5));
      return r;
    });
  });
  return tasks;
}

// ---------------------------------------------------------------- tau

std::vector<Task> tau_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  const auto qv = qs(ctx.cfg(), {{2, 1}, 1e8});
  const auto covs = coverings(ctx.cfg(), samples(ctx.cfg(), 5), 0x7);
  for (const auto& cov : covs) {
    tasks.push_back([&ctx, cov] {
      Params p = cov_params(cov);
      return ctx.guard("tau_W ODE", p, 1e-5, [&] {
        return std::vector<CheckReport>{ctx.check("tau_W ODE", p, tau_w_ode(cov).max(), 1e-5)};
      });
    });
    for (cplx qq : qv) {
      tasks.push_back([&ctx, cov, qq] {
        Params p = with(cov_params(cov), "q", qq);
        return ctx.guard("tau_Wq", p, 1e-5, [&] {
          const auto q = make_q(qq);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("tau_Wq ODE", p, tau_wq_ode(cov, q).max(), 1e-5));
          r.push_back(ctx.check("tau_I relation", p, tau_i_relation(cov, q).max(), 1e-5));
          auto sa = s_wq_actions(cov, q);
          r.push_back(ctx.check("e action on S_Wq", p, *std::max_element(sa.e.begin(), sa.e.end()), 1e-5));
          r.push_back(ctx.check("E action on S_Wq", p, *std::max_element(sa.E.begin(), sa.E.end()), 1e-4));
          return r;
        });
      });
    }
  }
  for (cplx qq : qv) {
    tasks.push_back([&ctx, covs, qq] {
      Params p{{"q", qq}};
      return ctx.guard("G assembly", p, 1e-7, [&] {
        const auto q = make_q(qq);
        std::vector<cplx> d, dl;
        for (const auto& cov : covs) {
          d.push_back(g_function3(flat_coords3(cov, q), q) - g_assembly(cov, q));
          const auto inf = DeformationParam::infinity();
          dl.push_back(g_function3(flat_coords3(cov, q), q) - g_function3(flat_coords3(cov, inf), inf));
        }
        std::vector<CheckReport> r;
        r.push_back(ctx.check("G assembly vs closed form", p, g_difference_variance(d), 1e-7));
        if (qq == kInfQ || std::abs(qq) > 1e6)
          r.push_back(ctx.check("G large-q limit", p, g_difference_variance(dl), 1e-7));
        const TorusCovering& c0 = covs.front();
        r.push_back(ctx.check("G Jacobian factor", p,
                              std::abs(g_assembly(c0, q, 2.0) - g_assembly(c0, q) + 3.0 / 24.0 * std::log(2.0)),
                              1e-12));
        return r;
      });
    });
  }
  return tasks;
}

// ---------------------------------------------------------------- realdouble

FlatChart6 random_chart6(Sampler& s, const DeformationParam& q) {
  const double w = s.uniform(0.4, 0.7);
  const TorusCovering cov(w, w * sample_mu(s), 0.0);
  FlatChart6 t = flat_coords6(cov, q);
  t[0] = s.box(-1, 1, -1, 1);
  t[3] = s.box(-1, 1, -1, 1);
  return t;
}

Params chart6_params(const FlatChart6& t) {
  Params p;
  for (int i = 0; i < 6; ++i) p["t" + std::to_string(i + 1)] = t[i];
  return p;
}

std::vector<Task> realdouble_tasks(const Ctx& ctx) {
  std::vector<Task> tasks;
  std::vector<cplx> qv = qs(ctx.cfg(), {{0, 1}, {0, 3}, {0, 1e3}});
  for (auto& q : qv) q = imaginary_version(q);
  const int n = samples(ctx.cfg(), 20);
  for (std::size_t iq = 0; iq < qv.size(); ++iq) {
    const cplx qq = qv[iq];
    for (int k = 0; k < n; ++k) {
      tasks.push_back([&ctx, qq, k, iq] {
        Params p{{"q", qq}, {"sample", double(k)}};
        return ctx.guard("WDVV6", p, 1e-5, [&] {
          const auto q = make_q(qq, true);
          Sampler s(ctx.cfg().seed ^ (0x8000 + 97 * iq + k));
          const FlatChart6 t = random_chart6(s, q);
          Params pt = with(chart6_params(t), "q", qq);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("WDVV6", pt, wdvv_residual6(t, q), 1e-5));
          auto T = third_derivatives6(t, q);
          double f1 = 0;
          for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
              double target = 0;
              if ((a == 0 && b == 2) || (a == 2 && b == 0)) target = 1;
              if ((a == 1 && b == 1) || (a == 4 && b == 4)) target = -0.5;
              if ((a == 3 && b == 5) || (a == 5 && b == 3)) target = -1;
              f1 = std::max(f1, std::abs(T[0][a][b] - target));
            }
          r.push_back(ctx.check("F1 constant 6", pt, f1, 1e-12));
          for (cplx kappa : {cplx(2), I})
            r.push_back(ctx.check("quasihomogeneity 6", with(pt, "kappa", kappa),
                                  quasihomogeneity_residual6(t, q, kappa), 1e-8));
          r.push_back(ctx.check("t5 = conj t2", pt, std::abs(t[4] - std::conj(t[1])), 0.0));
          // large imaginary q against the undeformed double on the same chart
          const auto big = make_q(cplx(0, 1e8), true);
          const auto inf = DeformationParam::infinity(true);
          auto A = third_derivatives6(t, big), B = third_derivatives6(t, inf);
          // relative to the largest entry: the O(1/q) shift scales with the entries
          double d = 0, scale = 1;
          for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
              for (int c = 0; c < 6; ++c) {
                d = std::max(d, std::abs(A[a][b][c] - B[a][b][c]));
                scale = std::max(scale, std::abs(B[a][b][c]));
              }
          r.push_back(ctx.check("large q equals undeformed double", pt, d / scale, 1e-6));
          return r;
        });
      });
    }
  }
  const auto covs = coverings(ctx.cfg(), 5, 0x9);
  for (cplx qq : qv) {
    tasks.push_back([&ctx, covs, qq] {
      Params p{{"q", qq}};
      return ctx.guard("G6", p, 1e-6, [&] {
        const auto q = make_q(qq, true);
        std::vector<cplx> d, dp, dl;
        const auto inf = DeformationParam::infinity(true);
        double eta_conj = 0;
        // The printed t6 differs from the consistent one by t3/q; the control
        // is only informative where that shift is not negligible.
        const bool control = std::abs(qq) < 100;
        for (const auto& cov : covs) {
          const FlatChart6 t = flat_coords6(cov, q);
          d.push_back(g_function6(t, q) - g_assembly6(cov, q));
          if (control) {
            const FlatChart6 tp = flat_coords6(cov, q, Chart6Variant::as_printed);
            if (tp.valid) dp.push_back(g_function6(tp, q) - g_assembly6(cov, q));
          }
          const auto big = make_q(cplx(0, 1e8), true);
          dl.push_back(g_function6(flat_coords6(cov, big), big) - g_function6(flat_coords6(cov, inf), inf));
          const cplx a2 = gamma_arguments6(t, q)[1];
          eta_conj = std::max(eta_conj, std::abs(dedekind_eta(Modulus(a2)) -
                                                 std::conj(dedekind_eta(Modulus(-std::conj(a2))))));
        }
        std::vector<CheckReport> r;
        r.push_back(ctx.check("G6 assembly vs closed form", p, g_difference_variance(d), 1e-6));
        // coverings whose printed chart leaves the modulus domain are skipped
        if (dp.size() >= 3) r.push_back(ctx.control("G6 printed t6 control", p, g_difference_variance(dp), 1e-6));
        r.push_back(ctx.check("G6 large-q limit", p, g_difference_variance(dl), 1e-7));
        r.push_back(ctx.check("eta conjugation", p, eta_conj, 1e-12));
        return r;
      });
    });
  }
  for (const auto& cov : coverings(ctx.cfg(), 2, 0xa)) {
    for (cplx qq : qv) {
      tasks.push_back([&ctx, cov, qq] {
        Params p = with(cov_params(cov), "q", qq);
        return ctx.guard("tau_Omega_q ODE", p, 1e-4, [&] {
          const auto q = make_q(qq, true);
          auto o = tau_omega_q_ode(cov, q);
          std::vector<CheckReport> r;
          r.push_back(ctx.check("tau_Omega_q ODE d", p, o.d.max(), 1e-4));
          r.push_back(ctx.check("tau_Omega_q ODE dbar", p, o.dbar.max(), 1e-4));
          auto M = inverse_metric6(cov, q);
          // rows t2..t6 of the flat metric: (dt2)^2/2 + (dt5)^2/2 - 2 dt1 dt3 + 2 dt4 dt6
          double m = 0;
          for (int a = 1; a < 6; ++a)
            for (int b = a; b < 6; ++b) {
              double target = 0;
              if (a == b && (a == 1 || a == 4)) target = 2;
              if (a == 3 && b == 5) target = 1;
              m = std::max(m, std::abs(M(a, b) - target));
            }
          r.push_back(ctx.check("flat metric t2..t6", p, m, 1e-5));
          return r;
        });
      });
    }
  }
  tasks.push_back([&ctx] {
    Sampler s(ctx.cfg().seed ^ 0x8100);
    const auto q = make_q({0, 3}, true);
    const FlatChart6 t = random_chart6(s, q);
    return ctx.guard("WDVV6 control", chart6_params(t), 1e-4, [&] {
      return std::vector<CheckReport>{
          ctx.control("WDVV6 control quartic block", chart6_params(t), wdvv_residual6(t, q, 1e-3), 1e-4)};
    });
  });
  return tasks;
}

using Builder = std::vector<Task> (*)(const Ctx&);

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> b{
      {"theta", theta_tasks},     {"chazy", chazy_tasks},     {"torus", torus_tasks},
      {"kernels", kernel_tasks},  {"frobenius3", frobenius3_tasks}, {"isomono", isomono_tasks},
      {"tau", tau_tasks},         {"realdouble", realdouble_tasks}};
  return b;
}

}  // namespace

cplx q_infinity_sentinel() { return kInfQ; }

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "infinity") return kInfQ;
  if (s.empty()) fail(ErrorKind::usage, "empty complex number");
  auto bad = [&] { fail(ErrorKind::usage, "cannot parse complex number '" + text + "'"); };
  // real number with an optional "/denominator"
  auto real_at = [&](std::size_t& pos) {
    const char* begin = s.c_str() + pos;
    // strtod alone would accept a second sign, "nan" or hex input
    auto numeric = [](const char* c) { return std::isdigit(static_cast<unsigned char>(*c)) || *c == '.'; };
    if (!numeric(begin)) return std::optional<double>{};
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) return std::optional<double>{};
    pos += std::size_t(end - begin);
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      const char* b2 = s.c_str() + pos;
      if (!numeric(b2)) bad();
      double d = std::strtod(b2, &end);
      if (end == b2 || d == 0.0) bad();
      pos += std::size_t(end - b2);
      v /= d;
    }
    return std::optional<double>{v};
  };
  cplx z = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    double sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      bad();
    }
    if (pos < s.size() && s[pos] == 'i') {
      z += cplx(0, sign);
      ++pos;
      continue;
    }
    auto v = real_at(pos);
    if (!v) bad();
    if (pos < s.size() && s[pos] == 'i') {
      z += cplx(0, sign * *v);
      ++pos;
    } else {
      z += sign * *v;
    }
  }
  if (!finite(z)) bad();
  return z;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& b : builders()) v.push_back(b.first);
    return v;
  }();
  return n;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return name == "all" || std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckReport> run_suite(const std::string& suite, const SuiteConfig& cfg) {
  if (!is_suite(suite)) fail(ErrorKind::usage, "unknown suite: " + suite);
  if (cfg.tol && !(*cfg.tol > 0)) fail(ErrorKind::usage, "tolerance must be positive");
  if (!(cfg.tol_scale > 0)) fail(ErrorKind::usage, "tolerance profile must be positive");
  std::vector<std::unique_ptr<Ctx>> ctxs;
  std::vector<Task> tasks;
  for (const auto& [name, build] : builders()) {
    if (suite != "all" && suite != name) continue;
    ctxs.push_back(std::make_unique<Ctx>(name, cfg));
    auto t = build(*ctxs.back());
    tasks.insert(tasks.end(), t.begin(), t.end());
  }
  return run_tasks(tasks, cfg.exec);
}

void stable_sort_reports(std::vector<CheckReport>& reports) {
  auto key = [](const CheckReport& r) {
    std::vector<double> v;
    for (const auto& [k, z] : r.params) {
      v.push_back(z.real());
      v.push_back(z.imag());
    }
    return std::tuple(r.suite, r.name, v);
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const CheckReport& a, const CheckReport& b) { return key(a) < key(b); });
}

double tolerance_profile_from_env() {
  const char* p = std::getenv("HFM_TOL_PROFILE");
  if (!p || std::string(p).empty() || std::string(p) == "default") return 1.0;
  const std::string s(p);
  if (s == "strict") return 0.1;
  if (s == "loose") return 10.0;
  fail(ErrorKind::usage, "HFM_TOL_PROFILE must be strict, default or loose");
}

std::vector<SweepRow> sweep(const std::string& suite, SweepParam param, const std::vector<double>& values,
                            const SuiteConfig& cfg) {
  const TorusCovering cov = cfg.coverings.empty() ? TorusCovering(0.5, {0.1, 0.9}, 0.2) : cfg.coverings.front();
  const cplx qdir = cfg.q_values.empty() ? cplx(2, 1) : cfg.q_values.front();
  std::vector<SweepRow> rows;
  auto add = [&](double x, const std::string& name, auto f) {
    double r;
    try {
      r = f();
    } catch (const Error&) {
      r = std::numeric_limits<double>::infinity();
    }
    rows.push_back({x, name, r});
  };
  for (double x : values) {
    if (suite == "kernels" && param == SweepParam::q_abs) {
      const cplx P = 0.26 * cov.w() + 0.3 * cov.wp(), Q = 0.62 * cov.w() - 0.1 * cov.wp();
      add(x, "|Wq-W|", [&] {
        return std::abs(Wq_eval(P, Q, cov, make_q(x * qdir / std::abs(qdir))) - W_eval(P, Q, cov));
      });
    } else if ((suite == "chazy" || suite == "theta") && param == SweepParam::mu_im) {
      add(x, "chazy gamma", [&] { return chazy_residual(ChazyFunction::gamma(), Modulus(cplx(0, x))); });
    } else if (suite == "frobenius3" && param == SweepParam::kappa) {
      const auto q = make_q(qdir);
      add(x, "quasihomogeneity", [&] {
        return quasihomogeneity_residual3(PrepotentialFamily3::deformed(q), flat_coords3(cov, q), x);
      });
    } else if (suite == "frobenius3" && param == SweepParam::q_abs) {
      add(x, "WDVV deformed", [&] {
        const auto q = make_q(x * qdir / std::abs(qdir));
        return wdvv_residual3(PrepotentialFamily3::deformed(q), flat_coords3(cov, q));
      });
    } else if (suite == "realdouble" && param == SweepParam::kappa) {
      const auto q = make_q(imaginary_version(qdir), true);
      add(x, "quasihomogeneity 6", [&] { return quasihomogeneity_residual6(flat_coords6(cov, q), q, x); });
    } else if (suite == "isomono" && param == SweepParam::q_abs) {
      add(x, "rotation squares", [&] {
        return proposition_crosscheck(cov, make_q(x * qdir / std::abs(qdir)))[0];
      });
    } else {
      fail(ErrorKind::usage, "unsupported sweep for suite " + suite);
    }
  }
  return rows;
}

}  // namespace hfm
