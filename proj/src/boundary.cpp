#include "lagsurf/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace lagsurf {

BoundaryCurve BoundaryCurve::u_edge(double value, double sign) {
  BoundaryCurve c;
  c.param = [value](double s) { return std::make_pair(value, s); };
  c.dparam = [](double) { return std::make_pair(0.0, 1.0); };
  c.outward = [sign](double) { return std::make_pair(sign, 0.0); };
  return c;
}

BoundaryCurve BoundaryCurve::parameter_circle(double radius) {
  BoundaryCurve c;
  c.param = [radius](double s) { return std::make_pair(radius * std::cos(s), radius * std::sin(s)); };
  c.dparam = [radius](double s) { return std::make_pair(-radius * std::sin(s), radius * std::cos(s)); };
  c.outward = [](double s) { return std::make_pair(std::cos(s), std::sin(s)); };
  return c;
}

BoundaryFrame boundary_frame(const Chart& chart, const BoundaryCurve& curve, double s, double sphere_tol) {
  auto [u, v] = curve.param(s);
  Jet j = jet(chart, u, v, 1);
  BoundaryFrame f;
  f.p = j.pos;
  if (std::abs(norm(f.p) - 1.0) > sphere_tol)
    throw std::domain_error("boundary_frame: boundary point off the unit sphere");

  auto [du, dv] = curve.dparam(s);
  Vec4 traw = du * j.du + dv * j.dv;
  if (norm(traw) < 1e-12) throw std::domain_error("boundary_frame: degenerate boundary tangent");
  f.T = normalized(traw);

  auto [ou, ov] = curve.outward(s);
  Vec4 o = ou * j.du + ov * j.dv;
  Vec4 w = o - dot(o, f.T) * f.T;
  if (norm(w) < 1e-12 * norm(o)) throw std::domain_error("boundary_frame: degenerate conormal");
  f.mu = normalized(w);

  f.N = normalized(f.p);
  f.xi = j_apply(f.N);
  f.mu_dot_n = dot(f.mu, f.N);
  f.mu_dot_jn = dot(f.mu, f.xi);
  f.mu_inward_flag = f.mu_dot_n < 0.0;
  f.theta = std::atan2(f.mu_dot_n, f.mu_dot_jn);
  f.legendrian_residual = std::abs(dot(f.xi, f.T));
  f.span_residual = norm(f.mu - f.mu_dot_n * f.N - f.mu_dot_jn * f.xi);
  return f;
}

LegendrianReport legendrian_check(const std::vector<BoundaryFrame>& frames, double tol) {
  if (frames.empty()) throw std::invalid_argument("legendrian_check: no frames");
  LegendrianReport r;
  for (const BoundaryFrame& f : frames) {
    r.max_legendrian = std::max(r.max_legendrian, f.legendrian_residual);
    r.max_span = std::max(r.max_span, f.span_residual);
    r.mean_legendrian += f.legendrian_residual;
    r.mean_span += f.span_residual;
  }
  r.mean_legendrian /= static_cast<double>(frames.size());
  r.mean_span /= static_cast<double>(frames.size());
  r.pass = r.max_legendrian < tol && r.max_span < tol;
  return r;
}

LegendrianReport legendrian_check(const Chart& chart, const BoundaryCurve& curve, int samples, double tol) {
  std::vector<BoundaryFrame> frames;
  frames.reserve(samples);
  for (int k = 0; k < samples; ++k) frames.push_back(boundary_frame(chart, curve, 2.0 * M_PI * k / samples));
  return legendrian_check(frames, tol);
}

AngleProfile contact_angle_profile(const Chart& chart, const BoundaryCurve& curve, int samples, double tol) {
  std::vector<BoundaryFrame> frames;
  frames.reserve(samples);
  for (int k = 0; k < samples; ++k) frames.push_back(boundary_frame(chart, curve, 2.0 * M_PI * k / samples));
  LegendrianReport leg = legendrian_check(frames, 10.0 * std::max(tol, 1e-10));
  if (!leg.pass) throw std::domain_error("contact_angle_profile: boundary is not Legendrian");

  AngleProfile prof;
  prof.samples.reserve(samples);
  prof.theta_min = frames.front().theta;
  prof.theta_max = frames.front().theta;
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    double s = 2.0 * M_PI * k / samples;
    double th = frames[k].theta;
    prof.samples.emplace_back(s, th);
    prof.theta_min = std::min(prof.theta_min, th);
    prof.theta_max = std::max(prof.theta_max, th);
    sum += th;
  }
  prof.theta_mean = sum / samples;
  double var = 0.0;
  for (auto& [s, th] : prof.samples) var += (th - prof.theta_mean) * (th - prof.theta_mean);
  prof.theta_std = std::sqrt(var / samples);
  prof.capillary = (prof.theta_max - prof.theta_min) < tol;
  prof.free_boundary = prof.capillary && std::abs(prof.theta_mean - 0.5 * M_PI) < tol;
  return prof;
}

JoachimsthalSample joachimsthal_residual(const Chart& chart, const BoundaryCurve& curve, double s) {
  BoundaryFrame f = boundary_frame(chart, curve, s);
  auto [u, v] = curve.param(s);
  Jet j = jet(chart, u, v, 2);
  MetricData md = metric(j);
  CubicTensor a = cubic_a(j, 1e-6, false);

  // chart-basis coefficients of an ambient tangent vector: g c = <w, X_i>
  auto coeffs = [&](const Vec4& w) {
    double b0 = dot(w, j.du), b1 = dot(w, j.dv);
    return std::array<double, 2>{md.ginv[0][0] * b0 + md.ginv[0][1] * b1, md.ginv[1][0] * b0 + md.ginv[1][1] * b1};
  };
  auto tc = coeffs(f.T);
  auto mc = coeffs(f.mu);

  JoachimsthalSample out;
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int k = 0; k < 2; ++k) out.lhs += a.a[i][jj][k] * tc[i] * mc[jj] * mc[k];

  // D_T theta by centered differences along the boundary, arc-length normalized
  const double ds = 1e-5 * 2.0 * M_PI;
  double th_p = boundary_frame(chart, curve, s + ds).theta;
  double th_m = boundary_frame(chart, curve, s - ds).theta;
  auto [du, dv] = curve.dparam(s);
  double speed = norm(du * j.du + dv * j.dv);
  out.rhs = -(th_p - th_m) / (2.0 * ds) / speed;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace lagsurf
