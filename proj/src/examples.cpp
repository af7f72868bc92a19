#include "lagsurf/examples.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace lagsurf {

namespace {

constexpr double kPoleClip = 1e-3;  // band charts exclude |sin(phi)| > 1 - kPoleClip

template <class T>
std::array<T, 4> catenoid_point(const T& t, const T& th, double scale) {
  T ct = cos(th), st = sin(th), it = inv(t);
  return {scale * (t * ct), scale * (t * st), scale * (it * ct), scale * (it * st)};
}

template <class T>
std::array<T, 4> whitney_band_point(const T& phi, const T& th, double r, const Vec4& c) {
  T cp = cos(phi), sp = sin(phi), ct = cos(th), st = sin(th);
  T w = r / (sp * sp + 1.0);
  T x1 = cp * ct, x2 = cp * st;
  return {w * x1 + c[0], w * x2 + c[1], w * x1 * sp + c[2], w * x2 * sp + c[3]};
}

// stereographic parametrization of S^2 covering the north pole at (u,v) = 0
template <class T>
std::array<T, 3> stereo_sphere(const T& u, const T& v) {
  T rho2 = u * u + v * v;
  T d = inv(rho2 + 1.0);
  return {2.0 * u * d, 2.0 * v * d, (1.0 - rho2) * d};
}

template <class T>
std::array<T, 4> whitney_stereo_point(const T& u, const T& v, double r, const Vec4& c) {
  auto x = stereo_sphere(u, v);
  T w = r / (x[2] * x[2] + 1.0);
  return {w * x[0] + c[0], w * x[1] + c[1], w * x[0] * x[2] + c[2], w * x[1] * x[2] + c[3]};
}

// real/imaginary parts of (u + i v)^m
template <class T>
std::pair<T, T> complex_power(const T& u, const T& v, int m) {
  T re(1.0), im(0.0);
  for (int k = 0; k < m; ++k) {
    T re2 = re * u - im * v;
    im = re * v + im * u;
    re = re2;
  }
  return {re, im};
}

}  // namespace

ExampleSurface plane_disk() {
  ExampleSurface ex;
  ex.name = "plane-disk";
  ex.abreve_vanishes = true;
  ex.charts.push_back(make_analytic_chart(
      "plane-disk", ChartDomain::rectangle(-1.0, 1.0, -1.0, 1.0),
      [](auto u, auto v) {
        using T = decltype(u);
        return std::array<T, 4>{u, v, T(0.0), T(0.0)};
      },
      /*isothermal=*/true));
  ex.charts.push_back(make_analytic_chart("plane-disk-polar", ChartDomain::polar_disk(), [](auto rho, auto psi) {
    using T = decltype(rho);
    return std::array<T, 4>{rho * cos(psi), rho * sin(psi), T(0.0), T(0.0)};
  }));
  ex.boundaries.push_back({0, BoundaryCurve::parameter_circle(1.0), "circle"});
  ex.analysis_chart = 0;
  ex.polar_chart = 1;
  ex.expected_mu_dot_n = 1.0;  // mu = N, free boundary
  return ex;
}

ExampleSurface lagrangian_catenoid(double t0, double t1) {
  if (!(t0 > 0.0 && t1 > t0)) throw std::invalid_argument("lagrangian_catenoid: need 0 < t0 < t1");
  ExampleSurface ex;
  ex.name = "catenoid";
  ex.params = {{"t0", t0}, {"t1", t1}};
  ex.charts.push_back(make_analytic_chart("catenoid", ChartDomain::polar_annulus(t0, t1), [](auto t, auto th) {
    return catenoid_point(t, th, 1.0);
  }));
  ex.charts.push_back(make_analytic_chart(
      "catenoid-iso", ChartDomain::polar_annulus(std::log(t0), std::log(t1)),
      [](auto s, auto th) { return catenoid_point(exp(s), th, 1.0); },
      /*isothermal=*/true));
  ex.analysis_chart = 1;
  return ex;
}

CatenoidBallBounds catenoid_ball_bounds(double r0) {
  double disc = r0 * r0 * r0 * r0 / 4.0 - 1.0;
  // r0 <= sqrt(2) has no annulus; allow for rounding in r0^4 at the boundary
  if (!(disc > 1e-12)) throw std::invalid_argument("catenoid_ball_bounds: requires r0 > sqrt(2), annulus degenerate");
  CatenoidBallBounds b;
  b.t_plus = std::sqrt(r0 * r0 / 2.0 + std::sqrt(disc));
  b.t_minus = std::sqrt(r0 * r0 / 2.0 - std::sqrt(disc));
  return b;
}

ExampleSurface catenoid_in_ball(double r0) {
  CatenoidBallBounds b = catenoid_ball_bounds(r0);
  ExampleSurface ex;
  ex.name = "catenoid-in-ball";
  ex.params = {{"r0", r0}, {"t_minus", b.t_minus}, {"t_plus", b.t_plus}};
  double inv_r0 = 1.0 / r0;
  ex.charts.push_back(make_analytic_chart("catenoid-ball-unit", ChartDomain::polar_annulus(b.t_minus, b.t_plus),
                                          [inv_r0](auto t, auto th) { return catenoid_point(t, th, inv_r0); }));
  ex.charts.push_back(make_analytic_chart("catenoid-ball-raw", ChartDomain::polar_annulus(b.t_minus, b.t_plus),
                                          [](auto t, auto th) { return catenoid_point(t, th, 1.0); }));
  ex.charts.push_back(make_analytic_chart(
      "catenoid-ball-unit-iso", ChartDomain::polar_annulus(std::log(b.t_minus), std::log(b.t_plus)),
      [inv_r0](auto s, auto th) { return catenoid_point(exp(s), th, inv_r0); },
      /*isothermal=*/true));
  ex.boundaries.push_back({0, BoundaryCurve::u_edge(b.t_plus, +1.0), "outer"});
  ex.boundaries.push_back({0, BoundaryCurve::u_edge(b.t_minus, -1.0), "inner"});
  ex.analysis_chart = 2;
  ex.expected_mu_dot_n = std::sqrt(r0 * r0 * r0 * r0 - 4.0) / (r0 * r0);
  return ex;
}

ExampleSurface whitney(double r, const Vec4& c) {
  if (!(r > 0.0)) throw std::invalid_argument("whitney: radius must be positive");
  double phi_max = std::asin(1.0 - kPoleClip);
  ExampleSurface ex;
  ex.name = "whitney";
  ex.params = {{"r", r}};
  ex.abreve_vanishes = true;
  ex.charts.push_back(make_analytic_chart("whitney-band", ChartDomain::sphere_band(-phi_max, phi_max),
                                          [r, c](auto phi, auto th) { return whitney_band_point(phi, th, r, c); }));
  ex.charts.push_back(make_analytic_chart(
      "whitney-stereo", ChartDomain::rectangle(-2.0, 2.0, -2.0, 2.0),
      [r, c](auto u, auto v) { return whitney_stereo_point(u, v, r, c); },
      /*isothermal=*/true));
  ex.analysis_chart = 1;
  return ex;
}

double whitney_radius2(double r, double sinphi) {
  double s2 = sinphi * sinphi;
  return r * r * (1.0 - s2) / (1.0 + s2);
}

bool whitney_cap_exists(double r) { return r > 1.0; }

double whitney_cap_phi_star(double r) {
  if (!whitney_cap_exists(r)) throw std::invalid_argument("whitney_cap_phi_star: requires r > 1");
  return std::acos(std::sqrt(2.0 / (r * r + 1.0)));
}

ExampleSurface whitney_cap(double r) {
  if (!whitney_cap_exists(r)) throw std::invalid_argument("whitney_cap: intersection is empty for r <= 1");
  double phi_star = whitney_cap_phi_star(r);
  double s_star = std::sin(phi_star);
  double phi_max = std::asin(1.0 - kPoleClip);
  if (phi_star >= phi_max) throw std::invalid_argument("whitney_cap: cap collapses into the polar clip");
  double rho_star = std::sqrt((1.0 - s_star) / (1.0 + s_star));  // stereographic radius of the cap
  Vec4 c{};

  ExampleSurface ex;
  ex.name = "whitney-cap";
  ex.params = {{"r", r}, {"phi_star", phi_star}, {"rho_star", rho_star}};
  ex.abreve_vanishes = true;
  ex.charts.push_back(make_analytic_chart("whitney-cap-north", ChartDomain::sphere_band(phi_star, phi_max),
                                          [r, c](auto phi, auto th) { return whitney_band_point(phi, th, r, c); }));
  ex.charts.push_back(make_analytic_chart("whitney-cap-south", ChartDomain::sphere_band(-phi_max, -phi_star),
                                          [r, c](auto phi, auto th) { return whitney_band_point(phi, th, r, c); }));
  ex.charts.push_back(make_analytic_chart(
      "whitney-cap-stereo", ChartDomain::rectangle(-1.0, 1.0, -1.0, 1.0),
      [r, c, rho_star](auto a, auto b) { return whitney_stereo_point(rho_star * a, rho_star * b, r, c); },
      /*isothermal=*/true));
  ex.charts.push_back(
      make_analytic_chart("whitney-cap-stereo-polar", ChartDomain::polar_disk(), [r, c, rho_star](auto rho, auto psi) {
        return whitney_stereo_point(rho_star * (rho * cos(psi)), rho_star * (rho * sin(psi)), r, c);
      }));
  ex.boundaries.push_back({0, BoundaryCurve::u_edge(phi_star, -1.0), "north"});
  ex.boundaries.push_back({1, BoundaryCurve::u_edge(-phi_star, +1.0), "south"});
  ex.analysis_chart = 2;
  ex.polar_chart = 3;
  return ex;
}

ExampleSurface gradient_graph(const std::string& w_id, double half_width) {
  ExampleSurface ex;
  ex.name = "gradient-graph";
  ex.params = {{"half_width", half_width}};
  ChartDomain dom = ChartDomain::rectangle(-half_width, half_width, -half_width, half_width);
  if (w_id == "zero") {
    ex.abreve_vanishes = true;
    ex.charts.push_back(make_analytic_chart("graph-zero", dom, [](auto u, auto v) {
      using T = decltype(u);
      return std::array<T, 4>{u, v, T(0.0), T(0.0)};
    }));
  } else if (w_id == "quadratic") {
    ex.abreve_vanishes = true;  // a Lagrangian plane
    ex.charts.push_back(make_analytic_chart("graph-quadratic", dom, [](auto u, auto v) {
      using T = decltype(u);
      return std::array<T, 4>{u, v, u, v};
    }));
  } else if (w_id == "cubic") {
    ex.charts.push_back(make_analytic_chart("graph-cubic", dom, [](auto u, auto v) {
      using T = decltype(u);
      return std::array<T, 4>{u, v, 3.0 * (u * u), 3.0 * (v * v)};
    }));
  } else {
    throw std::invalid_argument("gradient_graph: unregistered scalar function id '" + w_id + "'");
  }
  ex.analysis_chart = 0;
  return ex;
}

namespace {

ExampleSurface perturb_plane(const ExampleSurface& base, double amplitude, int mode) {
  ExampleSurface ex = base;
  ex.name = base.name + "+perturbed";
  ex.lagrangian = false;
  ex.abreve_vanishes = false;
  ex.params["amplitude"] = amplitude;
  ex.params["mode"] = mode;
  ex.charts.clear();
  ex.charts.push_back(make_analytic_chart(
      "plane-disk-perturbed", ChartDomain::rectangle(-1.0, 1.0, -1.0, 1.0), [amplitude, mode](auto u, auto v) {
        using T = decltype(u);
        T bump = 1.0 - u * u - v * v;  // vanishes on the boundary circle
        auto [re, im] = complex_power(u, v, mode);
        return std::array<T, 4>{u, v, amplitude * (bump * re), amplitude * (bump * im)};
      }));
  ex.boundaries = {{0, BoundaryCurve::parameter_circle(1.0), "circle"}};
  ex.analysis_chart = 0;
  ex.polar_chart = -1;
  ex.expected_mu_dot_n.reset();
  return ex;
}

ExampleSurface perturb_catenoid(const ExampleSurface& base, double amplitude, int mode) {
  double s0, s1, scale;
  if (base.name == "catenoid") {
    s0 = std::log(base.params.at("t0"));
    s1 = std::log(base.params.at("t1"));
    scale = 1.0;
  } else {
    s0 = std::log(base.params.at("t_minus"));
    s1 = std::log(base.params.at("t_plus"));
    scale = 1.0 / base.params.at("r0");
  }
  ExampleSurface ex;
  ex.name = base.name + "+perturbed";
  ex.params = base.params;
  ex.params["amplitude"] = amplitude;
  ex.params["mode"] = mode;
  ex.lagrangian = false;
  // normal bump along nu_1 = J X_t / |X_t|, vanishing at both annulus edges
  ex.charts.push_back(make_analytic_chart(
      "catenoid-perturbed", ChartDomain::polar_annulus(s0, s1), [amplitude, mode, s0, s1, scale](auto s, auto th) {
        using T = decltype(s);
        T t = exp(s);
        auto base_pt = catenoid_point(t, th, scale);
        T ct = cos(th), st = sin(th), t2 = t * t;
        T w = amplitude * sin((s - s0) * (M_PI / (s1 - s0))) * cos(double(mode) * th) / sqrt(t2 * t2 + 1.0);
        return std::array<T, 4>{base_pt[0] + w * ct, base_pt[1] + w * st, base_pt[2] + w * (t2 * ct),
                                base_pt[3] + w * (t2 * st)};
      }));
  ex.analysis_chart = 0;
  return ex;
}

ExampleSurface perturb_generic(const ExampleSurface& base, double amplitude, int mode) {
  const Chart& ch = base.primary();
  auto eval = ch.eval;
  const ChartDomain dom = ch.domain;
  auto perturbed = [eval, dom, amplitude, mode](double u, double v) {
    double h = 1e-6 * std::max(1.0, std::abs(u));
    Vec4 xu = (eval(u + h, v) - eval(u - h, v)) / (2.0 * h);
    Vec4 dir = j_apply(normalized(xu));
    double su = (u - dom.u0) / dom.u_extent();
    double bump = std::sin(M_PI * su) * std::cos(mode * v);
    return eval(u, v) + (amplitude * bump) * dir;
  };
  ExampleSurface ex;
  ex.name = base.name + "+perturbed";
  ex.params = base.params;
  ex.params["amplitude"] = amplitude;
  ex.params["mode"] = mode;
  ex.lagrangian = false;
  ex.charts.push_back(make_numeric_chart(ch.name + "-perturbed", dom, perturbed));
  // boundary curves on the primary chart survive: the bump vanishes on the
  // u-edges, so the boundary trace is unchanged
  for (const NamedBoundary& nb : base.boundaries)
    if (nb.chart == 0) ex.boundaries.push_back({0, nb.curve, nb.label});
  ex.analysis_chart = 0;
  return ex;
}

}  // namespace

ExampleSurface perturb(const ExampleSurface& base, double amplitude, int mode) {
  if (!base.lagrangian) throw std::invalid_argument("perturb: base example must be Lagrangian");
  if (amplitude == 0.0) return base;
  ExampleSurface ex;
  if (base.name == "plane-disk")
    ex = perturb_plane(base, amplitude, mode);
  else if (base.name == "catenoid" || base.name == "catenoid-in-ball")
    ex = perturb_catenoid(base, amplitude, mode);
  else
    ex = perturb_generic(base, amplitude, mode);
  // a uniform immersion margin, well above the 1e-12 validity floor for
  // charts: folded perturbations approach degeneracy without ever crossing it
  if (min_immersion_gram(ex.primary()) < 1e-3)
    throw std::invalid_argument("perturb: amplitude too large, immersion check fails");
  return ex;
}

InversionReport inversion_image_check(double r0, int samples) {
  CatenoidBallBounds b = catenoid_ball_bounds(r0);
  ExampleSurface ball = catenoid_in_ball(r0);
  const Chart& raw = ball.charts.at(1);  // boundary circles on the sphere of radius r0
  Chart image = inverted_chart(raw, "catenoid-ball-inverted");

  InversionReport rep;
  for (double t_edge : {b.t_plus, b.t_minus}) {
    double sign = (t_edge == b.t_plus) ? +1.0 : -1.0;
    for (int k = 0; k < samples; ++k) {
      double th = 2.0 * M_PI * k / samples;

      rep.max_radius_defect =
          std::max(rep.max_radius_defect, std::abs(norm(image.eval(t_edge, th)) - 1.0 / r0));

      // original intersection angle with the sphere of radius r0
      Jet j0 = jet(raw, t_edge, th, 1);
      Vec4 T0 = normalized(j0.dv);
      Vec4 o0 = sign * j0.du;
      Vec4 mu0 = normalized(o0 - dot(o0, T0) * T0);
      double ang0 = std::asin(std::clamp(std::abs(dot(mu0, normalized(j0.pos))), 0.0, 1.0));

      // image frame from FD jets of the composed map
      Jet j1 = fd_jet(image, t_edge, th, 1);
      Vec4 T1 = normalized(j1.dv);
      Vec4 o1 = j1.du;
      Vec4 mu1 = normalized(o1 - dot(o1, T1) * T1);
      Vec4 n1 = normalized(j1.pos);
      double ang1 = std::asin(std::clamp(std::abs(dot(mu1, n1)), 0.0, 1.0));
      rep.max_angle_defect = std::max(rep.max_angle_defect, std::abs(ang1 - ang0));
      rep.max_image_legendrian = std::max(rep.max_image_legendrian, std::abs(dot(j_apply(n1), T1)));
    }
  }

  // Lagrangian residual of the image surface at interior samples
  int n = std::max(8, samples / 10);
  for (int i = 1; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double t = b.t_minus + (b.t_plus - b.t_minus) * i / n;
      double th = 2.0 * M_PI * k / n;
      Jet j1 = fd_jet(image, t, th, 1);
      rep.max_lagrangian_residual = std::max(rep.max_lagrangian_residual, lagrangian_residual(j1));
    }
  return rep;
}

ExampleSurface make_example(const ExampleRequest& req) {
  ExampleSurface ex;
  if (req.name == "plane-disk")
    ex = plane_disk();
  else if (req.name == "catenoid")
    ex = lagrangian_catenoid();
  else if (req.name == "catenoid-in-ball")
    ex = catenoid_in_ball(req.r0);
  else if (req.name == "whitney")
    ex = whitney(req.r, req.c);
  else if (req.name == "whitney-cap")
    ex = whitney_cap(req.r);
  else if (req.name == "gradient-graph")
    ex = gradient_graph(req.w);
  else
    throw std::invalid_argument("unknown example '" + req.name + "'");
  if (req.amplitude != 0.0) ex = perturb(ex, req.amplitude, req.mode);
  return ex;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::invalid_argument("bisect: interval does not bracket a root");
  for (int i = 0; i < max_iter && hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lagsurf
