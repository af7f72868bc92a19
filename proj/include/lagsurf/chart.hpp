#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lagsurf/ambient.hpp"
#include "lagsurf/taylor.hpp"

namespace lagsurf {

enum class DomainKind { Rectangle, PolarDisk, PolarAnnulus, SphereBand };

// Parameter domain of a chart. Angular axes are periodic with period 2*pi:
// finite-difference stencils wrap across the seam instead of going one-sided.
struct ChartDomain {
  DomainKind kind = DomainKind::Rectangle;
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
  bool u_periodic = false;
  bool v_periodic = false;

  static ChartDomain rectangle(double u0, double u1, double v0, double v1);
  static ChartDomain polar_disk(double radius = 1.0);          // u = rho in (0, radius], v angular
  static ChartDomain polar_annulus(double u0, double u1);      // u radial-like, v angular
  static ChartDomain sphere_band(double phi0, double phi1);    // u latitude, v angular

  double u_extent() const { return u1 - u0; }
  double v_extent() const { return v1 - v0; }
  bool contains(double u, double v, double slack = 1e-9) const;
};

// Jet of an immersion at a parameter point. Mixed partials are stored once;
// index accessors (0 = u, 1 = v) symmetrize automatically.
struct Jet {
  Vec4 pos;
  Vec4 du, dv;
  Vec4 duu, duv, dvv;
  Vec4 duuu, duuv, duvv, dvvv;
  int order = 1;
  bool edge_degraded = false;  // one-sided stencils were needed near a domain edge

  const Vec4& first(int i) const { return i == 0 ? du : dv; }
  const Vec4& second(int i, int j) const {
    int s = i + j;
    return s == 0 ? duu : (s == 1 ? duv : dvv);
  }
  const Vec4& third(int i, int j, int k) const {
    int s = i + j + k;
    return s == 0 ? duuu : (s == 1 ? duuv : (s == 2 ? duvv : dvvv));
  }
};

// A parametrized piece of an immersed surface in R^4. Immutable after
// construction; all evaluation below is pure, so charts may be shared
// freely across threads.
struct Chart {
  std::string name;
  ChartDomain domain;
  std::function<Vec4(double, double)> eval;
  std::function<Jet(double, double)> analytic_jet;  // empty -> finite differences
  bool isothermal_claimed = false;

  bool has_exact_jets() const { return static_cast<bool>(analytic_jet); }
};

// Jet evaluation: exact jets when the chart provides them, otherwise central
// finite differences with one Richardson level (one-sided near non-periodic
// edges, flagged via Jet::edge_degraded). Throws std::domain_error outside
// the domain.
Jet jet(const Chart& chart, double u, double v, int order = 3);

// Force the finite-difference path (calibration oracle for exact jets).
Jet fd_jet(const Chart& chart, double u, double v, int order = 3);

// Finite-difference weights for d^m/dx^m at x0 on arbitrary nodes (Fornberg).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

struct TangentFrame {
  Vec4 e1, e2;  // orthonormal tangent
  Vec4 n1, n2;  // J e1, J e2 (normal exactly when the point is Lagrangian)
};

TangentFrame tangent_frame(const Jet& j);  // throws on dependent partials

// |omega(X_u, X_v)| / (|X_u| |X_v|): normalized pullback of the symplectic form
double lagrangian_residual(const Jet& j);

// max_{i,j} |<J e_i, e_j>| over the orthonormal tangent frame
double normal_bundle_residual(const Jet& j);

// Grid of parameter samples. Angular axes exclude the duplicate seam point;
// polar-disk radial axes exclude the degenerate center; sphere-band latitudes
// are clipped to |sin(phi)| <= 1 - 1e-3.
std::vector<std::pair<double, double>> chart_grid(const Chart& chart, int nu, int nv);

// min over the grid of det(g) / (|X_u|^2 |X_v|^2): immersion check metric
double min_immersion_gram(const Chart& chart, int nu = 20, int nv = 20);

namespace detail {
template <class F>
Jet jet_from_taylor(const F& f, double u, double v) {
  auto a = f(Taylor3::var(u, 0), Taylor3::var(v, 1));
  auto at = [&a](int i, int j) { return Vec4(a[0].deriv(i, j), a[1].deriv(i, j), a[2].deriv(i, j), a[3].deriv(i, j)); };
  Jet jt;
  jt.pos = at(0, 0);
  jt.du = at(1, 0);
  jt.dv = at(0, 1);
  jt.duu = at(2, 0);
  jt.duv = at(1, 1);
  jt.dvv = at(0, 2);
  jt.duuu = at(3, 0);
  jt.duuv = at(2, 1);
  jt.duvv = at(1, 2);
  jt.dvvv = at(0, 3);
  jt.order = 3;
  return jt;
}
}  // namespace detail

// Build a chart from a closed-form evaluator callable on both double and
// Taylor3 scalars; exact jets come from Taylor evaluation.
template <class F>
Chart make_analytic_chart(std::string name, ChartDomain domain, F f, bool isothermal = false) {
  Chart ch;
  ch.name = std::move(name);
  ch.domain = domain;
  ch.isothermal_claimed = isothermal;
  ch.eval = [f](double u, double v) {
    auto a = f(u, v);
    return Vec4(a[0], a[1], a[2], a[3]);
  };
  ch.analytic_jet = [f](double u, double v) { return detail::jet_from_taylor(f, u, v); };
  return ch;
}

// Chart whose evaluator is only available pointwise (jets by finite differences).
Chart make_numeric_chart(std::string name, ChartDomain domain, std::function<Vec4(double, double)> eval);

// Image of a chart under a fixed ambient linear map.
Chart transformed_chart(const Chart& base, const Mat4& map, std::string name);

// Image of a chart under the unit-sphere inversion (composed evaluator;
// jets by finite differences).
Chart inverted_chart(const Chart& base, std::string name);

}  // namespace lagsurf
