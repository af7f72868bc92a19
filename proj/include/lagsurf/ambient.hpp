#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace lagsurf {

// Point / vector of C^2 = R^4 in coordinates (x1, x2, y1, y2),
// i.e. z_k = x_k + i y_k. Construction rejects non-finite entries.
struct Vec4 {
  std::array<double, 4> v{0.0, 0.0, 0.0, 0.0};

  Vec4() = default;
  Vec4(double x1, double x2, double y1, double y2);

  double operator[](int i) const { return v[i]; }
  double& operator[](int i) { return v[i]; }

  Vec4& operator+=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec4& operator-=(const Vec4& o) {
    for (int i = 0; i < 4; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec4& operator*=(double s) {
    for (int i = 0; i < 4; ++i) v[i] *= s;
    return *this;
  }
};

inline Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
inline Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
inline Vec4 operator*(Vec4 a, double s) { return a *= s; }
inline Vec4 operator*(double s, Vec4 a) { return a *= s; }
inline Vec4 operator/(Vec4 a, double s) { return a *= (1.0 / s); }
inline Vec4 operator-(const Vec4& a) {
  Vec4 r;
  for (int i = 0; i < 4; ++i) r.v[i] = -a.v[i];
  return r;
}

double dot(const Vec4& a, const Vec4& b);
double norm2(const Vec4& a);
double norm(const Vec4& a);
Vec4 normalized(const Vec4& a);  // throws on near-zero input

// complex structure J(x1,x2,y1,y2) = (-y1,-y2,x1,x2)
Vec4 j_apply(const Vec4& a);

// standard symplectic form, omega(u,v) = sum dx_i ^ dy_i (u,v) = <J u, v>
double omega(const Vec4& u, const Vec4& v);

// Residual of the Liouville condition L_V omega = omega for V = scale * position,
// measured in the max norm over the standard coordinate 2-planes.
// With omega = sum dx^dy the exact Liouville field is position/2, so the
// residual is |2*scale - 1|.
double liouville_residual(double scale, const Vec4& p);

// Contact form alpha = i_V omega of the unit sphere, V = position/2.
// v must be tangent to the sphere through p (|<v,p>| within tol, relative).
double contact_form_alpha(const Vec4& p, const Vec4& v, double tangency_tol = 1e-10);

// Reeb field of alpha on the unit sphere: xi(p) = J p. Rejects |p| != 1.
Vec4 reeb(const Vec4& p);

// Value of (d alpha) ^ alpha on an orthonormal basis of T_p S^3
// (a 3-form value; basis-independent up to sign). Rejects |p| != 1.
double contact_nondegeneracy(const Vec4& p);
double contact_nondegeneracy_on(const Vec4& p, const Vec4& e1, const Vec4& e2, const Vec4& e3);

// deterministic orthonormal basis of T_p S^3 used by contact_nondegeneracy
std::array<Vec4, 3> sphere_tangent_basis(const Vec4& p);

// inversion with respect to the unit sphere, p -> p/|p|^2; rejects p = 0
Vec4 sphere_inversion(const Vec4& p);

// differential of the inversion: dI_p(w) = (w - 2<w,p^>p^)/|p|^2
Vec4 sphere_inversion_differential(const Vec4& p, const Vec4& w);

// Real 4x4 matrix acting on (x1,x2,y1,y2).
struct Mat4 {
  std::array<double, 16> m{};
  double operator()(int r, int c) const { return m[4 * r + c]; }
  double& operator()(int r, int c) { return m[4 * r + c]; }
  Vec4 apply(const Vec4& x) const;
  static Mat4 identity();
};

// Real form of a U(2) matrix e^{i alpha} [[a, -conj(b)], [b, conj(a)]],
// a = cos(beta) e^{i gamma}, b = sin(beta) e^{i delta}. Commutes with J and
// preserves both the metric and the symplectic form.
Mat4 u2_rotation(double alpha, double beta, double gamma, double delta);

}  // namespace lagsurf
