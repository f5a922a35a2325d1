#include "hfm/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace hfm {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::evaluation_domain: return "evaluation-domain";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::modulus_domain: return "modulus-domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::divisor: return "divisor";
    case ErrorKind::submanifold: return "submanifold";
    case ErrorKind::pole_of_transform: return "pole-of-transform";
    case ErrorKind::structure: return "structure";
    case ErrorKind::convention: return "convention";
    case ErrorKind::extraction: return "extraction";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

void DiffConfig::validate() const {
  if (!(base_step > 1e-6 && base_step < 1e-1))
    fail(ErrorKind::usage, "DiffConfig: base_step outside (1e-6, 1e-1)");
  if (richardson_levels < 2 || richardson_levels > 6)
    fail(ErrorKind::usage, "DiffConfig: richardson_levels outside [2, 6]");
  if (scheme_order != 2 && scheme_order != 4)
    fail(ErrorKind::usage, "DiffConfig: scheme_order must be 2 or 4");
}

namespace detail {

const Stencil& stencil(int n, int scheme_order) {
  static const Stencil s2[3] = {
      {1, {-1, 0, 1}, 2},
      {1, {1, -2, 1}, 1},
      {2, {-1, 2, 0, -2, 1}, 2},
  };
  static const Stencil s4[3] = {
      {2, {1, -8, 0, 8, -1}, 12},
      {2, {-1, 16, -30, 16, -1}, 12},
      {3, {1, -8, 13, 0, -13, 8, -1}, 8},
  };
  if (n < 1 || n > 3) fail(ErrorKind::usage, "nth_derivative: order must be 1..3");
  return scheme_order == 2 ? s2[n - 1] : s4[n - 1];
}

}  // namespace detail

DerivativeEstimate nth_derivative(const CFun& f, cplx z0, int n, const DiffConfig& cfg) {
  cfg.validate();
  double h = cfg.base_step * (cfg.relative_step ? std::abs(z0) + 1.0 : 1.0);
  auto g = [&](double t) {
    cplx v = f(z0 + t);
    if (!finite(v)) {
      std::ostringstream os;
      os << "non-finite value at stencil node " << z0 + t;
      fail(ErrorKind::evaluation_domain, os.str());
    }
    return v;
  };
  DerivativeEstimate out{};
  out.value = detail::richardson<cplx>(g, n, h, cfg, &out.error);
  return out;
}

std::array<cplx, 2> wirtinger(const CFun& f, cplx z0, const DiffConfig& cfg) {
  cplx dx = nth_derivative(f, z0, 1, cfg).value;
  cplx dy = nth_derivative([&](cplx t) { return f(z0 + I * (t - z0)); }, z0, 1, cfg).value;
  return {(dx - I * dy) / 2.0, (dx + I * dy) / 2.0};
}

void QuadratureSpec::validate() const {
  if (node_count < 16 || node_count % 2 != 0)
    fail(ErrorKind::usage, "QuadratureSpec: node_count must be even and >= 16");
  if (a == b) fail(ErrorKind::usage, "QuadratureSpec: endpoints coincide");
}

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;

// Composite rule on the parameter interval [0,1]; nodes are mapped onto the
// segment a -> b.
// `mass` receives the same rule applied to |f| |ds|, the scale for the
// relative convergence test (the integral itself may vanish).
cplx composite(const CFun& f, cplx a, cplx b, int nodes, QuadRule rule, double& mass) {
  cplx d = b - a;
  cplx sum{};
  mass = 0;
  if (rule == QuadRule::trapezoid) {
    double h = 1.0 / nodes;
    for (int k = 0; k <= nodes; ++k) {
      double wk = (k == 0 || k == nodes) ? 0.5 * h : h;
      cplx v = f(a + d * (k * h));
      sum += wk * v;
      mass += wk * std::abs(v);
    }
    mass *= std::abs(d);
    return sum * d;
  }
  const auto& x = GL8::abscissa();
  const auto& w = GL8::weights();
  int panels = std::max(2, nodes / 8);
  double ph = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = (p + 0.5) * ph;
    for (std::size_t k = 0; k < x.size(); ++k) {
      double wk = w[k] * 0.5 * ph;
      if (x[k] == 0.0) {
        cplx v = f(a + d * mid);
        sum += wk * v;
        mass += wk * std::abs(v);
      } else {
        cplx v1 = f(a + d * (mid + 0.5 * ph * x[k]));
        cplx v2 = f(a + d * (mid - 0.5 * ph * x[k]));
        sum += wk * (v1 + v2);
        mass += wk * (std::abs(v1) + std::abs(v2));
      }
    }
  }
  mass *= std::abs(d);
  return sum * d;
}

}  // namespace

cplx contour_integral(const CFun& f, const QuadratureSpec& spec) {
  spec.validate();
  int n = spec.node_count;
  double mass;
  cplx prev = composite(f, spec.a, spec.b, n, spec.rule, mass);
  for (int k = 0; k < spec.doubling_cap; ++k) {
    n *= 2;
    cplx next = composite(f, spec.a, spec.b, n, spec.rule, mass);
    if (!finite(next)) fail(ErrorKind::quadrature, "contour_integral: non-finite integrand");
    if (std::abs(next - prev) <= 1e-10 * std::max(std::abs(next), mass)) return next;
    prev = next;
  }
  fail(ErrorKind::quadrature, "contour_integral: no convergence within doubling cap");
}

cplx contour_integral_conj(const CFun& f, const QuadratureSpec& spec) {
  cplx d = spec.b - spec.a;
  return contour_integral(f, spec) * (std::conj(d) / d);
}

cplx surface_integral(const CFun& f, cplx origin, cplx e1, cplx e2, int n, Exec exec) {
  const auto& x = GL8::abscissa();
  const auto& w = GL8::weights();
  int panels = std::max(1, n / 8);
  double ph = 1.0 / panels;
  // Full node list on [0,1].
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    double mid = (p + 0.5) * ph;
    for (std::size_t k = 0; k < x.size(); ++k) {
      nodes.push_back(mid + 0.5 * ph * x[k]);
      weights.push_back(0.5 * ph * w[k]);
      if (x[k] != 0.0) {
        nodes.push_back(mid - 0.5 * ph * x[k]);
        weights.push_back(0.5 * ph * w[k]);
      }
    }
  }
  const int m = static_cast<int>(nodes.size());
  std::vector<cplx> rows(m);
  auto row = [&](int i) {
    cplx s{};
    for (int j = 0; j < m; ++j) s += weights[j] * f(origin + e1 * nodes[i] + e2 * nodes[j]);
    rows[i] = weights[i] * s;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) row(i);
  } else {
    for (int i = 0; i < m; ++i) row(i);
  }
  cplx total{};
  for (const cplx& r : rows) total += r;
  double area = std::abs((std::conj(e1) * e2).imag());
  return total * area;
}

double condition_number(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m);
  const auto& s = svd.singularValues();
  if (s(2) == 0.0) return INFINITY;
  return s(0) / s(2);
}

JacobianResult jacobian_fd(const Map3& F, const Vec3& x0, const DiffConfig& cfg,
                           double max_condition) {
  cfg.validate();
  JacobianResult r;
  for (int k = 0; k < 3; ++k) {
    double h = cfg.base_step * (cfg.relative_step ? std::abs(x0(k)) + 1.0 : 1.0);
    auto g = [&](double t) {
      Vec3 x = x0;
      x(k) += t;
      Vec3 v = F(x);
      for (int i = 0; i < 3; ++i)
        if (!finite(v(i))) fail(ErrorKind::evaluation_domain, "jacobian_fd: non-finite value");
      return v;
    };
    r.J.col(k) = detail::richardson<Vec3>(g, 1, h, cfg, nullptr);
  }
  r.condition = condition_number(r.J);
  if (!(r.condition <= max_condition)) {
    std::ostringstream os;
    os << "jacobian_fd: condition number " << r.condition << " exceeds " << max_condition;
    fail(ErrorKind::degenerate, os.str());
  }
  r.inverse = r.J.inverse();
  return r;
}

double rel_residual(cplx lhs, cplx rhs, double floor) {
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), floor);
}

double wrap_symmetric(double x, double period) {
  double r = std::remainder(x, period);
  if (r == -period / 2) r = period / 2;
  return r;
}

double variance(const std::vector<cplx>& v) {
  if (v.empty()) return 0;
  cplx mean{};
  for (auto z : v) mean += z;
  mean /= double(v.size());
  double s = 0;
  for (auto z : v) s += std::norm(z - mean);
  return s / double(v.size());
}

CheckReport CheckReport::make(std::string suite, std::string name,
                              std::map<std::string, cplx> params, double residual,
                              double tolerance, std::uint64_t seed) {
  CheckReport r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = std::isfinite(residual) && residual <= tolerance;
  r.seed = seed;
  return r;
}

CheckReport CheckReport::make_control(std::string suite, std::string name,
                                      std::map<std::string, cplx> params, double residual,
                                      double threshold, std::uint64_t seed) {
  CheckReport r = make(std::move(suite), std::move(name), std::move(params), residual, threshold, seed);
  r.must_exceed = true;
  r.pass = std::isfinite(residual) && residual > threshold;
  return r;
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

cplx Sampler::box(double re_lo, double re_hi, double im_lo, double im_hi) {
  double re = uniform(re_lo, re_hi);
  double im = uniform(im_lo, im_hi);
  return {re, im};
}

}  // namespace hfm
