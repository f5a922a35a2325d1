#include "hfm/theta.hpp"

#include <cmath>
#include <sstream>

#include "hfm/taylor.hpp"

namespace hfm {

Modulus::Modulus(cplx mu) : mu_(mu) {
  if (!(mu.imag() > 0) || !finite(mu)) {
    std::ostringstream os;
    os << "modulus " << mu << " is not in the upper half-plane";
    fail(ErrorKind::modulus_domain, os.str());
  }
}

namespace {

constexpr int kTermCap = 200;
constexpr double kRelTrunc = 1e-16;

}  // namespace

std::vector<cplx> theta_derivs(const ThetaChar& ch, cplx z, const Modulus& m, int max_order) {
  if (max_order < 0 || max_order > 9) fail(ErrorKind::usage, "theta: derivative order must be 0..9");
  const cplx mu = m.mu();
  // Reduce Re z into [-1/2, 1/2]; theta[p,q](z+1) = exp(2 pi i p) theta[p,q](z).
  double k = std::round(z.real());
  z -= k;
  cplx phase = std::exp(two_pi_i * (ch.p * k));

  std::vector<cplx> sum(max_order + 1, cplx{});
  auto term = [&](long n, double& mag) {
    double np = n + ch.p;
    cplx e = std::exp(I * pi * mu * (np * np) + two_pi_i * np * (z + ch.q));
    cplx f = two_pi_i * np;
    cplx pw = 1.0;
    mag = 0;
    for (int d = 0; d <= max_order; ++d) {
      cplx t = pw * e;
      sum[d] += t;
      mag = std::max(mag, std::abs(t));
      pw *= f;
    }
  };
  // Start at the peak of |exp(...)| and walk outward.
  long n0 = std::lround(-z.imag() / mu.imag() - ch.p);
  double mag;
  term(n0, mag);
  auto small = [&](double mg) {
    double ref = 0;
    for (auto& s : sum) ref = std::max(ref, std::abs(s));
    return mg < kRelTrunc * ref || mg == 0.0;
  };
  int used = 1;
  for (int dir : {+1, -1}) {
    double prev = INFINITY;
    for (long n = n0 + dir; used < kTermCap; n += dir) {
      term(n, mag);
      ++used;
      if (small(mag) && mag <= prev) break;
      prev = mag;
    }
  }
  for (auto& s : sum) s *= phase;
  return sum;
}

cplx theta_eval(const ThetaChar& ch, cplx z, const Modulus& m, int dz_order) {
  return theta_derivs(ch, z, m, dz_order)[dz_order];
}

cplx theta1(cplx z, const Modulus& m, int dz_order) {
  return -theta_eval(ThetaChar::half_half(), z, m, dz_order);
}

namespace {

ThetaChar const_char(int k) {
  switch (k) {
    case 2: return ThetaChar::half_zero();
    case 3: return ThetaChar::zero_zero();
    case 4: return ThetaChar::zero_half();
  }
  fail(ErrorKind::usage, "theta constant index must be 2, 3 or 4");
}

}  // namespace

cplx theta_const(int k, const Modulus& m, int dz_order) {
  return theta_eval(const_char(k), 0.0, m, dz_order);
}

cplx theta_mu_derivative(const ThetaChar& ch, cplx z, const Modulus& m) {
  return theta_eval(ch, z, m, 2) / (4.0 * pi * I);
}

cplx dlog_theta_const(int k, const Modulus& m) {
  auto d = theta_derivs(const_char(k), 0.0, m, 2);
  return d[2] / (4.0 * pi * I * d[0]);
}

cplx dedekind_eta(const Modulus& m) { return std::pow(theta1(0.0, m, 1), 1.0 / 3.0); }

std::array<cplx, 4> gamma_jet(const Modulus& m) {
  // T_k = theta_1^{(k)}(0); d/dmu T_k = T_{k+2} / (4 pi i).
  auto d = theta_derivs(ThetaChar::half_half(), 0.0, m, 9);
  for (auto& x : d) x = -x;
  const cplx h = 1.0 / (4.0 * pi * I);
  auto series = [&](int k) {
    using T = Taylor3<1>;
    T s = T::variable(0, 0.0);
    T x = s * (d[k + 2] * h) + s * s * (d[k + 4] * h * h / 2.0) +
          s * s * s * (d[k + 6] * h * h * h / 6.0);
    return x + T(d[k]);
  };
  auto g = series(3) / (series(1) * (3.0 * pi * I));
  return {g.derivative({0}), g.derivative({1}), g.derivative({2}), g.derivative({3})};
}

cplx gamma_chazy(const Modulus& m, int order) {
  if (order < 0 || order > 3) fail(ErrorKind::usage, "gamma_chazy: order must be 0..3");
  if (order == 0) {
    auto d = theta_derivs(ThetaChar::half_half(), 0.0, m, 3);
    return d[3] / (3.0 * pi * I * d[1]);
  }
  return gamma_jet(m)[order];
}

ChazyFunction ChazyFunction::gamma() {
  ChazyFunction f;
  f.kind_ = Kind::gamma;
  f.name_ = "gamma";
  f.jet_ = [](cplx mu) { return gamma_jet(Modulus(mu)); };
  return f;
}

ChazyFunction ChazyFunction::constant(cplx v) {
  ChazyFunction f;
  f.kind_ = Kind::constant;
  std::ostringstream os;
  os << "constant" << v;
  f.name_ = os.str();
  f.jet_ = [v](cplx) { return ChazyJet{v, 0.0, 0.0, 0.0}; };
  return f;
}

ChazyFunction ChazyFunction::custom(std::string name, std::function<ChazyJet(cplx)> jet) {
  ChazyFunction f;
  f.kind_ = Kind::custom;
  f.name_ = std::move(name);
  f.jet_ = std::move(jet);
  return f;
}

ChazyFunction sl2_transform_chazy(const ChazyFunction& f, cplx a, cplx b, cplx c, cplx d) {
  if (std::abs(a * d - b * c - 1.0) > 1e-12)
    fail(ErrorKind::usage, "sl2_transform_chazy: ad - bc must equal 1");
  ChazyFunction g;
  const bool on_gamma = f.kind() == ChazyFunction::Kind::gamma ||
                        f.kind() == ChazyFunction::Kind::sl2_of_gamma;
  g.kind_ = on_gamma ? ChazyFunction::Kind::sl2_of_gamma : ChazyFunction::Kind::sl2;
  g.name_ = "sl2(" + f.name() + ")";
  // Composite matrix, for records: M_g = M_f * (a b; c d).
  auto fm = f.matrix();
  g.abcd_ = {fm[0] * a + fm[1] * c, fm[0] * b + fm[1] * d, fm[2] * a + fm[3] * c,
             fm[2] * b + fm[3] * d};
  g.jet_ = [f, a, b, c, d](cplx mu) {
    using T = Taylor3<1>;
    cplx den = c * mu + d;
    if (std::abs(den) < 1e-14 * (std::abs(c * mu) + std::abs(d) + 1e-300))
      fail(ErrorKind::pole_of_transform, "sl2 transform: c mu + d = 0");
    T s = T::variable(0, mu);
    T D = s * c + T(d);
    T arg = (s * a + T(b)) / D;
    T fv = arg.compose(f.jet(arg.value()));
    T r = fv / (D * D) - (2.0 * c) / D;
    return ChazyJet{r.derivative({0}), r.derivative({1}), r.derivative({2}), r.derivative({3})};
  };
  return g;
}

double chazy_residual(const ChazyFunction& f, const Modulus& m) {
  auto j = f.jet(m.mu());
  return std::abs(j[3] - 6.0 * j[0] * j[2] + 9.0 * j[1] * j[1]);
}

}  // namespace hfm
