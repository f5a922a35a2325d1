#include <doctest.h>

#include "hfm/frobenius3.hpp"

using namespace hfm;

namespace {

FlatChart3 chart_for(cplx mu, const DeformationParam& q, cplx t1 = cplx(0.3, 0.1), cplx t2 = cplx(1.1, -0.2)) {
  return {t1, t2, mu / (two_pi_i * (1.0 + mu * q.inv())), true};
}

double max_third_diff(const Third3& a, const Third3& b) {
  double d = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(a[i][j][k] - b[i][j][k]));
  return d;
}

}  // namespace

TEST_CASE("flat coordinates from a covering") {
  TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);
  const cplx qq(2, 1);
  auto q = DeformationParam::from_q(qq);
  auto t = flat_coords3(cov, q);
  CHECK(std::abs(t.t2 * cov.w() * (cov.mu() + qq) / qq - 1.0) < 1e-15);
  CHECK(std::abs(chart3_mu(t, q) - cov.mu()) < 1e-12);
  CHECK(t.valid);
  // large q: t3 -> mu/(2 pi i), t2 -> 1/w, t1 -> -pi i gamma/(4 w^2) - c, all O(1/q)
  auto lim = flat_coords3(cov, DeformationParam::infinity());
  CHECK(std::abs(lim.t3 - cov.mu() / two_pi_i) < 1e-15);
  double prev = 0;
  for (double a : {1e3, 1e4, 1e5}) {
    auto tq = flat_coords3(cov, DeformationParam::from_q(a * qq));
    const double d = std::abs(tq.t1 - lim.t1) + std::abs(tq.t2 - lim.t2) + std::abs(tq.t3 - lim.t3);
    if (prev > 0) CHECK(prev / d == doctest::Approx(10.0).epsilon(0.01));
    prev = d;
  }
  CHECK(std::abs(lim.t1 - (-I * pi * gamma_chazy(cov.modulus()) / (4.0 * cov.w() * cov.w()) - cov.c())) < 1e-14);
  // divisor
  TorusCovering d(0.5, cplx(0, 0.55));
  try {
    flat_coords3(d, DeformationParam::from_q(cplx(0, -1.1)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::divisor);
  }
}

TEST_CASE("the corrected t1 makes the metric constant; the printed one does not") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  Eigen::Matrix3cd target;
  target << 0, 0, -1, 0, 2, 0, -1, 0, 0;
  for (auto cov : {TorusCovering(0.5, cplx(0.1, 0.9), 0.2), TorusCovering(0.7, cplx(0.3, 1.1), 0.1)}) {
    CHECK((inverse_metric3(cov, q) - target).norm() < 1e-6);
    CHECK((inverse_metric3(cov, q, T1Variant::as_printed) - target).norm() > 1e-2);
  }
}

TEST_CASE("third derivatives are exact") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto fam = PrepotentialFamily3::deformed(q);
  auto t = chart_for(cplx(0.1, 1.0), q);
  auto T = third_derivatives3(fam, t);
  CHECK(std::abs(T[0][1][1] + 0.5) < 1e-15);
  CHECK(std::abs(T[0][0][2] - 1.0) < 1e-15);
  CHECK(std::abs(T[0][0][0]) < 1e-15);
  CHECK(std::abs(T[0][1][2]) < 1e-15);
  CHECK(std::abs(T[0][2][2]) < 1e-15);
  // finite-difference oracle for a gamma-dependent entry
  auto F22 = [&](cplx t3) {
    FlatChart3 s = t;
    s.t3 = t3;
    return prepotential3(fam, s, {0, 2, 0});
  };
  // steps below the default keep the oracle's truncation error under 1e-10 here
  DiffConfig dc;
  dc.base_step = 3e-3;
  auto fd = nth_derivative(F22, t.t3, 1, dc);
  CHECK(std::abs(fd.value - T[1][1][2]) < 1e-8 * std::max(1.0, std::abs(T[1][1][2])));
  auto F3 = [&](cplx t3) {
    FlatChart3 s = t;
    s.t3 = t3;
    return prepotential3(fam, s, {0, 0, 2});
  };
  CHECK(std::abs(nth_derivative(F3, t.t3, 1, dc).value - T[2][2][2]) < 1e-8 * std::max(1.0, std::abs(T[2][2][2])));
}

TEST_CASE("polynomial family") {
  auto fam = PrepotentialFamily3::chazy_family(ChazyFunction::constant(0.0));
  FlatChart3 t{cplx(0.3, 0.1), cplx(1.1, -0.2), cplx(0, 0.1), true};
  CHECK(std::abs(fam.value(t) - (-t.t1 * t.t2 * t.t2 / 4.0 + t.t1 * t.t1 * t.t3 / 2.0)) < 1e-15);
  CHECK(std::abs(prepotential3(fam, t, {0, 2, 1})) == 0.0);
  CHECK(std::abs(prepotential3(fam, t, {1, 2, 0}) + 0.5) < 1e-15);
}

TEST_CASE("WDVV residuals") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto t = chart_for(cplx(0.1, 1.0), q);
  CHECK(wdvv_residual3(PrepotentialFamily3::deformed(q), t) < 1e-7);
  CHECK(wdvv_residual3(PrepotentialFamily3::undeformed(), t) < 1e-7);
  CHECK(wdvv_residual3(PrepotentialFamily3::chazy_family(ChazyFunction::constant(1.0)), t) < 1e-9);
  auto lin = ChazyFunction::custom("mu", [](cplx x) { return ChazyJet{x, 1.0, 0.0, 0.0}; });
  CHECK(wdvv_residual3(PrepotentialFamily3::chazy_family(lin), t) > 1e-3);
  CHECK(wdvv_residual3(PrepotentialFamily3::deformed(q).with_quartic_scale(1.001), t) > 1e-6);
}

TEST_CASE("WDVV holds exactly when Chazy does, on a probe set") {
  const cplx mu0(0.1, 1.0);
  FlatChart3 t{cplx(0.3, 0.1), cplx(1.1, -0.2), mu0 / two_pi_i, true};
  auto sq = ChazyFunction::custom("mu^2", [](cplx x) { return ChazyJet{x * x, 2.0 * x, 2.0, 0.0}; });
  auto lin = ChazyFunction::custom("mu", [](cplx x) { return ChazyJet{x, 1.0, 0.0, 0.0}; });
  std::vector<ChazyFunction> probes{ChazyFunction::gamma(), ChazyFunction::constant(2.5),
                                    sl2_transform_chazy(ChazyFunction::gamma(), 1.0, 0.0, 0.4, 1.0),
                                    sl2_transform_chazy(ChazyFunction::gamma(), 0.0, -1.0, 1.0, 0.0), lin, sq};
  for (const auto& f : probes) {
    const bool chazy = chazy_residual(f, Modulus(mu0)) < 1e-7;
    const bool wdvv = wdvv_residual3(PrepotentialFamily3::chazy_family(f), t) < 1e-7;
    CHECK(chazy == wdvv);
  }
}

TEST_CASE("quasihomogeneity and Euler field") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto fam = PrepotentialFamily3::deformed(q);
  auto t = chart_for(cplx(0.1, 1.0), q);
  CHECK(quasihomogeneity_residual3(fam, t, 1.0) == 0.0);
  for (cplx k : {cplx(2), I, cplx(-3), cplx(-1)}) CHECK(quasihomogeneity_residual3(fam, t, k) < 1e-9);
  CHECK_THROWS_AS(quasihomogeneity_residual3(fam, t, 0.0), Error);
  auto e = euler_action3(t);
  CHECK(e[0] == t.t1);
  CHECK(e[1] == 0.5 * t.t2);
  CHECK(e[2] == 0.0);
  // E(F) = 2F: first-order scaling agrees with the Euler field
  auto F = fam.evaluate(t);
  const cplx EF = e[0] * F.derivative({1, 0, 0}) + e[1] * F.derivative({0, 1, 0});
  const double eps = 1e-4;
  FlatChart3 s{(1 + eps) * t.t1, std::sqrt(1 + eps) * t.t2, t.t3, true};
  const cplx scaled = (fam.value(s) - fam.value(t)) / eps;
  CHECK(std::abs(scaled - EF) < 1e-3 * std::abs(EF));
  CHECK(std::abs(EF - 2.0 * F.value()) < 1e-12 * std::abs(F.value()));
  // the unit field: d/dt1 of every third derivative vanishes (F is quadratic in t1)
  CHECK(std::abs(F.derivative({3, 0, 0})) == 0.0);
}

TEST_CASE("deformed and undeformed structures coincide for 1/q in {1, 2}") {
  for (double invq : {1.0, 2.0}) {
    auto q = DeformationParam::from_q(1.0 / invq);
    FlatChart3 t{cplx(0.3, 0.1), cplx(1.1, -0.2), cplx(0.05, 0.6) / two_pi_i, true};
    auto a = third_derivatives3(PrepotentialFamily3::deformed(q), t);
    auto b = third_derivatives3(PrepotentialFamily3::undeformed(), t);
    CHECK(max_third_diff(a, b) < 1e-7);
  }
  auto q3 = DeformationParam::from_q(cplx(2, 1));
  FlatChart3 t{cplx(0.3, 0.1), cplx(1.1, -0.2), cplx(0.05, 0.6) / two_pi_i, true};
  CHECK(max_third_diff(third_derivatives3(PrepotentialFamily3::deformed(q3), t),
                       third_derivatives3(PrepotentialFamily3::undeformed(), t)) > 1e-3);
}

TEST_CASE("G-function") {
  auto q = DeformationParam::from_q(cplx(2, 1));
  auto t = chart_for(cplx(0.1, 1.0), q);
  FlatChart3 s = t;
  s.t2 *= 4.0;
  CHECK(std::abs(g_function3(s, q) - g_function3(t, q) + std::log(4.0) / 8.0) < 1e-14);
  // large q: constant offset from -log(eta(2 pi i t3) t2^{1/8})
  std::vector<cplx> d;
  Sampler smp(9);
  auto big = DeformationParam::from_q(1e9);
  for (int k = 0; k < 5; ++k) {
    FlatChart3 c = chart_for(smp.box(-0.4, 0.4, 0.7, 1.5), big, 0.0, smp.box(0.5, 1.5, -0.3, 0.3));
    d.push_back(g_function3(c, big) + std::log(dedekind_eta(Modulus(two_pi_i * c.t3)) * std::pow(c.t2, 0.125)));
  }
  CHECK(variance(d) < 1e-8);
}
