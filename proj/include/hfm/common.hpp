#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hfm {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};
inline const cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

enum class ErrorKind {
  evaluation_domain,   // non-finite values inside a stencil
  quadrature,          // composite rule failed to converge
  degenerate,          // singular Jacobian, coincident branch points
  modulus_domain,      // Im(mu) <= 0
  pole,                // lattice point or diagonal of a kernel
  divisor,             // mu + q = 0
  submanifold,         // mu^Omega + q = 0
  pole_of_transform,   // c*mu + d = 0 in an SL(2) action
  structure,           // singular F_1
  convention,          // labeling mismatch
  extraction,          // Richardson limit did not settle
  usage,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace hfm
