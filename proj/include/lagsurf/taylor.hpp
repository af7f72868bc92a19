#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace lagsurf {

using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

inline double inv(double x) { return 1.0 / x; }

// Bivariate Taylor polynomial truncated at total degree 3.
//
// Coefficients are plain monomial coefficients in the local offsets:
//   f(u0+du, v0+dv) = sum_{i+j<=3} c(i,j) du^i dv^j + O(4).
// Evaluating a closed-form chart on Taylor3 arguments propagates all
// partial derivatives up to third order exactly (to rounding), so every
// analytic chart ships machine-exact jets without hand differentiation.
struct Taylor3 {
  static constexpr int kCoeffs = 10;
  std::array<double, kCoeffs> c{};

  // index of monomial du^i dv^j, i+j <= 3
  static constexpr int idx(int i, int j) {
    constexpr int table[4][4] = {{0, 2, 5, 9}, {1, 4, 8, -1}, {3, 7, -1, -1}, {6, -1, -1, -1}};
    return table[i][j];
  }

  Taylor3() = default;
  explicit Taylor3(double value) { c[0] = value; }

  static Taylor3 var(double value, int axis) {
    Taylor3 t;
    t.c[0] = value;
    t.c[axis == 0 ? idx(1, 0) : idx(0, 1)] = 1.0;
    return t;
  }

  double value() const { return c[0]; }

  // partial derivative d^{i+j} f / du^i dv^j
  double deriv(int i, int j) const {
    static constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
    return c[idx(i, j)] * fact[i] * fact[j];
  }

  Taylor3& operator+=(const Taylor3& o) {
    for (int k = 0; k < kCoeffs; ++k) c[k] += o.c[k];
    return *this;
  }
  Taylor3& operator-=(const Taylor3& o) {
    for (int k = 0; k < kCoeffs; ++k) c[k] -= o.c[k];
    return *this;
  }
  Taylor3& operator*=(double s) {
    for (int k = 0; k < kCoeffs; ++k) c[k] *= s;
    return *this;
  }
};

inline Taylor3 operator+(Taylor3 a, const Taylor3& b) { return a += b; }
inline Taylor3 operator-(Taylor3 a, const Taylor3& b) { return a -= b; }
inline Taylor3 operator-(const Taylor3& a) {
  Taylor3 r;
  for (int k = 0; k < Taylor3::kCoeffs; ++k) r.c[k] = -a.c[k];
  return r;
}
inline Taylor3 operator+(Taylor3 a, double b) {
  a.c[0] += b;
  return a;
}
inline Taylor3 operator+(double b, Taylor3 a) { return a + b; }
inline Taylor3 operator-(Taylor3 a, double b) {
  a.c[0] -= b;
  return a;
}
inline Taylor3 operator-(double b, const Taylor3& a) { return -a + b; }
inline Taylor3 operator*(Taylor3 a, double s) { return a *= s; }
inline Taylor3 operator*(double s, Taylor3 a) { return a *= s; }

inline Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
  Taylor3 r;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) {
      double s = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) s += a.c[Taylor3::idx(p, q)] * b.c[Taylor3::idx(i - p, j - q)];
      r.c[Taylor3::idx(i, j)] = s;
    }
  return r;
}

// f(a) for a univariate analytic f with derivatives f0..f3 at a.value():
// compose the series of f with the zero-constant part of a.
inline Taylor3 apply_series(const Taylor3& a, double f0, double f1, double f2, double f3) {
  Taylor3 d = a;
  d.c[0] = 0.0;
  Taylor3 d2 = d * d;
  Taylor3 d3 = d2 * d;
  Taylor3 r = d3 * (f3 / 6.0);
  r += d2 * (f2 / 2.0);
  r += d * f1;
  r.c[0] += f0;
  return r;
}

inline Taylor3 inv(const Taylor3& a) {
  double x = a.value();
  if (x == 0.0) throw std::domain_error("Taylor3: division by zero constant term");
  double x2 = x * x;
  return apply_series(a, 1.0 / x, -1.0 / x2, 2.0 / (x2 * x), -6.0 / (x2 * x2));
}

inline Taylor3 operator/(const Taylor3& a, const Taylor3& b) { return a * inv(b); }
inline Taylor3 operator/(const Taylor3& a, double s) { return a * (1.0 / s); }
inline Taylor3 operator/(double s, const Taylor3& b) { return inv(b) * s; }

inline Taylor3 sin(const Taylor3& a) {
  double s = std::sin(a.value()), c0 = std::cos(a.value());
  return apply_series(a, s, c0, -s, -c0);
}
inline Taylor3 cos(const Taylor3& a) {
  double s = std::sin(a.value()), c0 = std::cos(a.value());
  return apply_series(a, c0, -s, -c0, s);
}
inline Taylor3 exp(const Taylor3& a) {
  double e = std::exp(a.value());
  return apply_series(a, e, e, e, e);
}
inline Taylor3 log(const Taylor3& a) {
  double x = a.value();
  if (x <= 0.0) throw std::domain_error("Taylor3: log of non-positive constant term");
  return apply_series(a, std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}
inline Taylor3 sqrt(const Taylor3& a) {
  double x = a.value();
  if (x <= 0.0) throw std::domain_error("Taylor3: sqrt of non-positive constant term");
  double r = std::sqrt(x);
  return apply_series(a, r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x));
}

template <class T>
T pow_int(T base, int n) {
  if (n < 0) throw std::domain_error("pow_int: negative exponent");
  T result(1.0);
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

}  // namespace lagsurf
