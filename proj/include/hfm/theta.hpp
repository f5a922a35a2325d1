#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hfm/common.hpp"

namespace hfm {

class Modulus {
 public:
  explicit Modulus(cplx mu);
  cplx mu() const { return mu_; }

 private:
  cplx mu_;
};

// Characteristics are halves in practice; 0 and 1/2 are exact doubles.
struct ThetaChar {
  double p = 0;
  double q = 0;

  static constexpr ThetaChar half_half() { return {0.5, 0.5}; }
  static constexpr ThetaChar half_zero() { return {0.5, 0.0}; }
  static constexpr ThetaChar zero_zero() { return {0.0, 0.0}; }
  static constexpr ThetaChar zero_half() { return {0.0, 0.5}; }
};

// theta[p,q](z; mu) = sum_n exp(pi i mu (n+p)^2 + 2 pi i (n+p)(z+q)),
// differentiated dz_order times in z (0..9).
cplx theta_eval(const ThetaChar& ch, cplx z, const Modulus& m, int dz_order = 0);

// All z-derivatives 0..max_order from a single series pass.
std::vector<cplx> theta_derivs(const ThetaChar& ch, cplx z, const Modulus& m, int max_order);

// theta_1 = -theta[1/2,1/2], odd in z.
cplx theta1(cplx z, const Modulus& m, int dz_order = 0);

// Theta constants theta_2, theta_3, theta_4 at z = 0 (k = 2, 3, 4).
cplx theta_const(int k, const Modulus& m, int dz_order = 0);

// d/dmu theta via the heat equation: theta_zz / (4 pi i).
cplx theta_mu_derivative(const ThetaChar& ch, cplx z, const Modulus& m);

// d/dmu log theta_k(0) for k = 2, 3, 4.
cplx dlog_theta_const(int k, const Modulus& m);

// Principal cube root of theta_1'(0).
cplx dedekind_eta(const Modulus& m);

// gamma(mu) = theta_1'''(0) / (3 pi i theta_1'(0)) and its mu-derivatives.
cplx gamma_chazy(const Modulus& m, int order = 0);
std::array<cplx, 4> gamma_jet(const Modulus& m);

using ChazyJet = std::array<cplx, 4>;  // f, f', f'', f'''

class ChazyFunction {
 public:
  enum class Kind { gamma, sl2_of_gamma, sl2, constant, custom };

  static ChazyFunction gamma();
  static ChazyFunction constant(cplx v);
  static ChazyFunction custom(std::string name, std::function<ChazyJet(cplx)> jet);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  ChazyJet jet(cplx mu) const { return jet_(mu); }
  cplx operator()(cplx mu) const { return jet_(mu)[0]; }

  // Matrix of the SL(2) action for kinds sl2 and sl2_of_gamma.
  std::array<cplx, 4> matrix() const { return abcd_; }

 private:
  friend ChazyFunction sl2_transform_chazy(const ChazyFunction&, cplx, cplx, cplx, cplx);
  Kind kind_ = Kind::custom;
  std::string name_;
  std::function<ChazyJet(cplx)> jet_;
  std::array<cplx, 4> abcd_{1.0, 0.0, 0.0, 1.0};
};

// mu -> f((a mu + b)/(c mu + d)) / (c mu + d)^2 - 2c / (c mu + d).
ChazyFunction sl2_transform_chazy(const ChazyFunction& f, cplx a, cplx b, cplx c, cplx d);

// |f''' - 6 f f'' + 9 f'^2|
double chazy_residual(const ChazyFunction& f, const Modulus& m);

}  // namespace hfm
