#include "lagsurf/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace lagsurf {

Vec4::Vec4(double x1, double x2, double y1, double y2) : v{x1, x2, y1, y2} {
  for (double c : v)
    if (!std::isfinite(c)) throw std::invalid_argument("Vec4: non-finite component");
}

double dot(const Vec4& a, const Vec4& b) {
  return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2] + a.v[3] * b.v[3];
}

double norm2(const Vec4& a) { return dot(a, a); }

double norm(const Vec4& a) { return std::sqrt(norm2(a)); }

Vec4 normalized(const Vec4& a) {
  double n = norm(a);
  if (n < 1e-300) throw std::domain_error("normalized: zero vector");
  return a / n;
}

Vec4 j_apply(const Vec4& a) {
  Vec4 r;
  r.v[0] = -a.v[2];
  r.v[1] = -a.v[3];
  r.v[2] = a.v[0];
  r.v[3] = a.v[1];
  return r;
}

double omega(const Vec4& u, const Vec4& v) {
  // sum_i (u_{x_i} v_{y_i} - u_{y_i} v_{x_i}) = <J u, v>
  return u.v[0] * v.v[2] - u.v[2] * v.v[0] + u.v[1] * v.v[3] - u.v[3] * v.v[1];
}

double liouville_residual(double scale, const Vec4& p) {
  if (scale <= 0.0) throw std::invalid_argument("liouville_residual: scale must be positive");
  (void)p;  // V is linear, so d(i_V omega) = 2*scale*omega at every point
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Vec4 ei, ej;
      ei[i] = 1.0;
      ej[j] = 1.0;
      double w = omega(ei, ej);
      worst = std::max(worst, std::abs(2.0 * scale * w - w));
    }
  return worst;
}

double contact_form_alpha(const Vec4& p, const Vec4& v, double tangency_tol) {
  double np = norm(p);
  if (np < 1e-300) throw std::domain_error("contact_form_alpha: base point at origin");
  double t = std::abs(dot(v, p));
  if (t > tangency_tol * std::max(1.0, norm(v) * np))
    throw std::domain_error("contact_form_alpha: vector not tangent to the sphere");
  return 0.5 * omega(p, v);
}

static void require_unit(const Vec4& p, const char* who) {
  if (std::abs(norm(p) - 1.0) > 1e-10) throw std::domain_error(std::string(who) + ": point not on the unit sphere");
}

Vec4 reeb(const Vec4& p) {
  require_unit(p, "reeb");
  return j_apply(p);
}

std::array<Vec4, 3> sphere_tangent_basis(const Vec4& p) {
  require_unit(p, "sphere_tangent_basis");
  std::array<Vec4, 3> basis;
  basis[0] = j_apply(p);
  // Gram-Schmidt the two coordinate directions least aligned with p and Jp
  int filled = 1;
  for (int k = 0; k < 4 && filled < 3; ++k) {
    Vec4 c;
    c[k] = 1.0;
    Vec4 w = c - dot(c, p) * p;
    for (int i = 0; i < filled; ++i) w -= dot(w, basis[i]) * basis[i];
    if (norm(w) > 1e-6) basis[filled++] = normalized(w);
  }
  return basis;
}

double contact_nondegeneracy_on(const Vec4& p, const Vec4& e1, const Vec4& e2, const Vec4& e3) {
  require_unit(p, "contact_nondegeneracy");
  // alpha = i_V omega with V = p/2; d(alpha) = omega on the sphere
  auto alpha = [&p](const Vec4& w) { return 0.5 * omega(p, w); };
  return omega(e1, e2) * alpha(e3) - omega(e1, e3) * alpha(e2) + omega(e2, e3) * alpha(e1);
}

double contact_nondegeneracy(const Vec4& p) {
  auto b = sphere_tangent_basis(p);
  return contact_nondegeneracy_on(p, b[0], b[1], b[2]);
}

Vec4 sphere_inversion(const Vec4& p) {
  double n2 = norm2(p);
  if (n2 < 1e-300) throw std::domain_error("sphere_inversion: origin has no image");
  return p / n2;
}

Vec4 sphere_inversion_differential(const Vec4& p, const Vec4& w) {
  double n2 = norm2(p);
  if (n2 < 1e-300) throw std::domain_error("sphere_inversion_differential: origin");
  Vec4 ph = p / std::sqrt(n2);
  return (w - 2.0 * dot(w, ph) * ph) / n2;
}

Vec4 Mat4::apply(const Vec4& x) const {
  Vec4 r;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += (*this)(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

Mat4 Mat4::identity() {
  Mat4 I;
  for (int i = 0; i < 4; ++i) I(i, i) = 1.0;
  return I;
}

Mat4 u2_rotation(double alpha, double beta, double gamma, double delta) {
  using cd = std::complex<double>;
  cd ea = std::polar(1.0, alpha);
  cd a = std::cos(beta) * std::polar(1.0, gamma);
  cd b = std::sin(beta) * std::polar(1.0, delta);
  cd u[2][2] = {{ea * a, -ea * std::conj(b)}, {ea * b, ea * std::conj(a)}};
  // z'_r = sum_c u[r][c] z_c with z_c = x_c + i y_c; rows/cols in (x1,x2,y1,y2)
  Mat4 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c) = u[r][c].real();
      m(r, c + 2) = -u[r][c].imag();
      m(r + 2, c) = u[r][c].imag();
      m(r + 2, c + 2) = u[r][c].real();
    }
  return m;
}

}  // namespace lagsurf
