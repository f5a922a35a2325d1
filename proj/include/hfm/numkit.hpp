#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hfm/common.hpp"

namespace hfm {

using CFun = std::function<cplx(cplx)>;

struct DiffConfig {
  double base_step = 1e-2;
  int richardson_levels = 3;
  int scheme_order = 4;
  // When true the step is base_step * (|z0| + 1).
  bool relative_step = true;

  void validate() const;
};

struct DerivativeEstimate {
  cplx value;
  double error;
};

namespace detail {

struct Stencil {
  int half_width;
  std::array<double, 7> weights;  // offsets -half_width..half_width
  double denom;
};

const Stencil& stencil(int n, int scheme_order);

inline double magnitude(cplx z) { return std::abs(z); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) { return v.norm(); }

// Richardson-extrapolated n-th derivative of g at t = 0, where g is sampled
// at real offsets t. T is cplx or an Eigen vector.
template <class T, class G>
T richardson(const G& g, int n, double h, const DiffConfig& cfg, double* error) {
  const Stencil& st = stencil(n, cfg.scheme_order);
  const int L = cfg.richardson_levels;
  std::vector<std::vector<T>> R(L);
  for (int i = 0; i < L; ++i) {
    double hi = h / double(1 << i);
    T acc{};
    bool first = true;
    for (int k = -st.half_width; k <= st.half_width; ++k) {
      double wgt = st.weights[k + st.half_width];
      if (wgt == 0.0) continue;
      T term = g(k * hi) * wgt;
      acc = first ? term : T(acc + term);
      first = false;
    }
    R[i].push_back(T(acc * (1.0 / (st.denom * std::pow(hi, n)))));
    for (int k = 1; k <= i; ++k) {
      double p = cfg.scheme_order + 2 * (k - 1);
      double f = std::pow(2.0, p) - 1.0;
      R[i].push_back(R[i][k - 1] + (R[i][k - 1] - R[i - 1][k - 1]) * (1.0 / f));
    }
  }
  // Pick the tableau entry with the smallest correction; finer levels lose
  // to roundoff once the truncation error is below it.
  int bi = L - 1, bk = L - 1;
  double best = -1;
  for (int i = 1; i < L; ++i)
    for (int k = 1; k <= i; ++k) {
      const double e = std::max(magnitude(T(R[i][k] - R[i][k - 1])), magnitude(T(R[i][k] - R[i - 1][k - 1])));
      if (best < 0 || e < best) {
        best = e;
        bi = i;
        bk = k;
      }
    }
  if (error) *error = best;
  return R[bi][bk];
}

}  // namespace detail

// Central differences along the real axis through z0, Richardson-extrapolated.
DerivativeEstimate nth_derivative(const CFun& f, cplx z0, int n, const DiffConfig& cfg = {});

// Wirtinger pair (df/dz, df/dzbar) of a possibly non-holomorphic f.
std::array<cplx, 2> wirtinger(const CFun& f, cplx z0, const DiffConfig& cfg = {});

enum class QuadRule { gauss_legendre, trapezoid };

struct QuadratureSpec {
  cplx a, b;
  int node_count = 64;
  QuadRule rule = QuadRule::gauss_legendre;
  int doubling_cap = 8;

  void validate() const;
};

// Integral of f(s) ds along the straight segment a -> b.
cplx contour_integral(const CFun& f, const QuadratureSpec& spec);
// Integral of f(s) d(conj s) along the same segment.
cplx contour_integral_conj(const CFun& f, const QuadratureSpec& spec);

enum class Exec { serial, parallel };

// Area integral of f over {origin + s e1 + t e2 : s,t in [0,1]} with respect
// to dx dy, tensor-product Gauss-Legendre with n x n nodes.
cplx surface_integral(const CFun& f, cplx origin, cplx e1, cplx e2, int n = 64,
                      Exec exec = Exec::parallel);

using Vec3 = Eigen::Matrix<cplx, 3, 1>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;
using Map3 = std::function<Vec3(const Vec3&)>;

struct JacobianResult {
  Mat3 J;
  Mat3 inverse;
  double condition;
};

JacobianResult jacobian_fd(const Map3& F, const Vec3& x0, const DiffConfig& cfg = {},
                           double max_condition = 1e12);

double condition_number(const Mat3& m);

// Residual helpers.
double rel_residual(cplx lhs, cplx rhs, double floor = 1e-300);

// Reduce x into (-period/2, period/2].
double wrap_symmetric(double x, double period);

// Mean squared deviation of a set of complex numbers from their mean.
double variance(const std::vector<cplx>& v);

struct CheckReport {
  std::string suite;
  std::string name;
  std::map<std::string, cplx> params;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string note;  // error kind when the check threw
  bool must_exceed = false;  // negative control: passes when residual > tolerance

  static CheckReport make(std::string suite, std::string name,
                          std::map<std::string, cplx> params, double residual,
                          double tolerance, std::uint64_t seed);
  static CheckReport make_control(std::string suite, std::string name,
                                  std::map<std::string, cplx> params, double residual,
                                  double threshold, std::uint64_t seed);
};

// Deterministic sample points.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed), seed_(seed) {}
  double uniform(double lo, double hi);
  cplx box(double re_lo, double re_hi, double im_lo, double im_hi);
  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

}  // namespace hfm
