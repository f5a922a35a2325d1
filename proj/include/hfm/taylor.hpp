#pragma once

// Truncated multivariate Taylor polynomials of total degree <= 3.
// Evaluating an explicit formula on these yields all partial derivatives up
// to third order with no step-size error; used for prepotential derivatives.

#include <array>
#include <vector>

#include "hfm/common.hpp"

namespace hfm {

template <int NV>
class Taylor3 {
 public:
  static constexpr int order = 3;

  struct Table {
    std::vector<std::array<int, NV>> exps;
    std::vector<int> degree;
    // products[i] lists (j, k) with mono_j * mono_k = mono_i.
    std::vector<std::vector<std::pair<int, int>>> products;
    int index(const std::array<int, NV>& e) const {
      for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] == e) return static_cast<int>(i);
      return -1;
    }
  };

  static const Table& table() {
    static const Table t = build();
    return t;
  }
  static int size() { return static_cast<int>(table().exps.size()); }

  Taylor3() : c_(size(), cplx{}) {}
  Taylor3(cplx v) : c_(size(), cplx{}) { c_[0] = v; }  // NOLINT: implicit by design

  static Taylor3 variable(int k, cplx v) {
    Taylor3 r(v);
    std::array<int, NV> e{};
    e[k] = 1;
    r.c_[table().index(e)] = 1.0;
    return r;
  }

  cplx value() const { return c_[0]; }
  cplx coeff(int i) const { return c_[i]; }

  // Partial derivative with the given exponent multi-index (total <= 3).
  cplx derivative(const std::array<int, NV>& e) const {
    int idx = table().index(e);
    if (idx < 0) return 0.0;
    double fact = 1;
    for (int x : e)
      for (int k = 2; k <= x; ++k) fact *= k;
    return c_[idx] * fact;
  }

  cplx derivative3(int a, int b, int c) const {
    std::array<int, NV> e{};
    ++e[a];
    ++e[b];
    ++e[c];
    return derivative(e);
  }

  Taylor3& operator+=(const Taylor3& o) {
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Taylor3& operator-=(const Taylor3& o) {
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Taylor3& operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Taylor3 operator-() const {
    Taylor3 r = *this;
    r *= -1.0;
    return r;
  }

  friend Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
  friend Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
  friend Taylor3 operator*(Taylor3 a, cplx s) { return a *= s; }
  friend Taylor3 operator*(cplx s, Taylor3 a) { return a *= s; }
  friend Taylor3 operator/(Taylor3 a, cplx s) { return a *= (1.0 / s); }

  friend Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
    Taylor3 r;
    const auto& t = table();
    for (int i = 0; i < size(); ++i) {
      cplx s{};
      for (auto [j, k] : t.products[i]) s += a.c_[j] * b.c_[k];
      r.c_[i] = s;
    }
    return r;
  }

  // f(x0 + d) = sum_k jet[k]/k! d^k, with jet = (f, f', f'', f''') at x0.
  Taylor3 compose(const std::array<cplx, 4>& jet) const {
    Taylor3 d = *this;
    d.c_[0] = 0;
    Taylor3 d2 = d * d;
    Taylor3 d3 = d2 * d;
    return Taylor3(jet[0]) + d * jet[1] + d2 * (jet[2] / 2.0) + d3 * (jet[3] / 6.0);
  }

  Taylor3 reciprocal() const {
    cplx x = c_[0];
    return compose({1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x)});
  }

  friend Taylor3 operator/(const Taylor3& a, const Taylor3& b) { return a * b.reciprocal(); }
  friend Taylor3 operator/(cplx s, const Taylor3& b) { return b.reciprocal() * s; }

  Taylor3 pow_int(int n) const {
    Taylor3 r(1.0);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
  }

 private:
  static Table build() {
    Table t;
    std::array<int, NV> e{};
    // Enumerate by degree so index 0 is the constant term.
    for (int deg = 0; deg <= order; ++deg) enumerate(t, e, 0, deg);
    t.products.resize(t.exps.size());
    for (std::size_t j = 0; j < t.exps.size(); ++j)
      for (std::size_t k = 0; k < t.exps.size(); ++k) {
        if (t.degree[j] + t.degree[k] > order) continue;
        std::array<int, NV> s{};
        for (int v = 0; v < NV; ++v) s[v] = t.exps[j][v] + t.exps[k][v];
        t.products[t.index(s)].emplace_back(static_cast<int>(j), static_cast<int>(k));
      }
    return t;
  }

  static void enumerate(Table& t, std::array<int, NV>& e, int var, int left) {
    if (var == NV - 1) {
      e[var] = left;
      t.exps.push_back(e);
      t.degree.push_back(sum(e));
      e[var] = 0;
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      enumerate(t, e, var + 1, left - k);
    }
    e[var] = 0;
  }

  static int sum(const std::array<int, NV>& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }

  std::vector<cplx> c_;
};

}  // namespace hfm
