#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "lagsurf/chart.hpp"
#include "lagsurf/curvature.hpp"

namespace lagsurf {

// A boundary curve of a chart, parametrized by s in [0, 2*pi).
// `param` maps s to chart coordinates, `dparam` is its exact derivative and
// `outward` gives the parameter-space direction leaving the surface.
struct BoundaryCurve {
  std::function<std::pair<double, double>(double)> param;
  std::function<std::pair<double, double>(double)> dparam;
  std::function<std::pair<double, double>(double)> outward;

  // boundary along a domain edge u = value (sign = outward parameter direction)
  static BoundaryCurve u_edge(double value, double sign);
  // circle of given radius inside a Cartesian-parameter chart
  static BoundaryCurve parameter_circle(double radius = 1.0);
};

// Adapted frame at a boundary point on the unit sphere:
// T boundary tangent, mu outward conormal, N = p support normal, xi = Jp Reeb.
struct BoundaryFrame {
  Vec4 p, T, mu, N, xi;
  double theta = 0.0;  // contact angle, atan2(<mu,N>, <mu,JN>)
  double mu_dot_n = 0.0;
  double mu_dot_jn = 0.0;
  double legendrian_residual = 0.0;  // |<xi, T>|
  double span_residual = 0.0;        // |mu - <mu,N>N - <mu,JN>JN|
  bool mu_inward_flag = false;       // <mu, N> < 0: outside the [0,pi) branch
};

// Throws if the boundary point is off the unit sphere (within sphere_tol)
// or the frame is degenerate.
BoundaryFrame boundary_frame(const Chart& chart, const BoundaryCurve& curve, double s, double sphere_tol = 1e-8);

struct LegendrianReport {
  double max_legendrian = 0.0, mean_legendrian = 0.0;
  double max_span = 0.0, mean_span = 0.0;
  bool pass = false;
};

LegendrianReport legendrian_check(const std::vector<BoundaryFrame>& frames, double tol);
LegendrianReport legendrian_check(const Chart& chart, const BoundaryCurve& curve, int samples, double tol);

struct AngleProfile {
  std::vector<std::pair<double, double>> samples;  // (s, theta)
  double theta_min = 0.0, theta_max = 0.0, theta_mean = 0.0, theta_std = 0.0;
  bool capillary = false;      // theta constant within tol
  bool free_boundary = false;  // additionally theta = pi/2 within tol
};

// Requires a Legendrian boundary (legendrian_check at 10*tol must pass).
AngleProfile contact_angle_profile(const Chart& chart, const BoundaryCurve& curve, int samples, double tol = 1e-8);

struct JoachimsthalSample {
  double lhs = 0.0;       // A(T, mu, mu)
  double rhs = 0.0;       // -D_T theta
  double residual = 0.0;  // |lhs - rhs|
};

// Cubic form contracted with the adapted frame against the tangential
// derivative of the contact angle (centered differences in s, arc-length
// normalized).
JoachimsthalSample joachimsthal_residual(const Chart& chart, const BoundaryCurve& curve, double s);

}  // namespace lagsurf
