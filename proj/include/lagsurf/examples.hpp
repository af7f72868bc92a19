#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lagsurf/boundary.hpp"
#include "lagsurf/chart.hpp"

namespace lagsurf {

struct NamedBoundary {
  int chart = 0;
  BoundaryCurve curve;
  std::string label;
};

// A closed-form example family: one or more charts of the same surface,
// boundary descriptors on the unit sphere, and verification metadata.
struct ExampleSurface {
  std::string name;
  std::map<std::string, double> params;
  std::vector<Chart> charts;  // charts[0] is the default residual-sweep chart
  std::vector<NamedBoundary> boundaries;
  int analysis_chart = -1;  // isothermal chart for cubic-differential work
  int polar_chart = -1;     // polar-disk chart for boundary diagnostics
  bool lagrangian = true;
  bool abreve_vanishes = false;
  std::optional<double> expected_mu_dot_n;

  const Chart& primary() const { return charts.at(0); }
  const Chart& analysis() const { return charts.at(analysis_chart >= 0 ? analysis_chart : 0); }
};

// Equatorial plane disk {(x1, x2, 0, 0)}: Cartesian and polar charts,
// boundary the unit circle. Minimal, Lagrangian, free boundary.
ExampleSurface plane_disk();

// Lagrangian catenoid (t cos a, t sin a, cos a / t, sin a / t), t in [t0, t1],
// with the isothermal companion chart t = e^s. Minimal Lagrangian annulus.
ExampleSurface lagrangian_catenoid(double t0 = 0.5, double t1 = 2.0);

// closed-form annulus bounds: T_pm^2 = r0^2/2 pm sqrt(r0^4/4 - 1), T_+ T_- = 1
struct CatenoidBallBounds {
  double t_minus = 0.0, t_plus = 0.0;
};
CatenoidBallBounds catenoid_ball_bounds(double r0);  // rejects r0 <= sqrt(2)

// Catenoid piece inside the ball of radius r0, rescaled by 1/r0 so both
// boundary circles are great circles of the unit sphere. Also carries the
// unscaled chart ("raw") used by the inversion correspondence.
ExampleSurface catenoid_in_ball(double r0);

// Whitney sphere immersion of S^2 with radius r and center c:
// band chart plus an isothermal stereographic chart.
ExampleSurface whitney(double r, const Vec4& c = Vec4());

// |f_{r,0}|^2 at latitude with sin(phi) = s: r^2 (1 - s^2) / (1 + s^2)
double whitney_radius2(double r, double sinphi);
bool whitney_cap_exists(double r);      // true iff r > 1
double whitney_cap_phi_star(double r);  // boundary latitude, cos^2 = 2/(r^2+1)

// The two disk components of the Whitney sphere inside the closed unit ball:
// band charts for both caps plus isothermal stereographic disk charts
// (Cartesian and polar) of the northern cap. Rejects r <= 1.
ExampleSurface whitney_cap(double r);

// Lagrangian gradient graph (u, v, w_u, w_v) for a registered scalar w;
// ids: "zero", "quadratic" ((u^2+v^2)/2), "cubic" (u^3 + v^3).
ExampleSurface gradient_graph(const std::string& w_id, double half_width = 1.0);

// Adds amplitude * bump(mode) along a normal direction J e_1. Plane and
// catenoid examples keep closed-form jets and their pinned boundaries;
// other examples fall back to a pointwise evaluator with FD jets.
// Throws if the perturbed chart fails the immersion check.
ExampleSurface perturb(const ExampleSurface& base, double amplitude, int mode);

// Inversion correspondence for the catenoid piece in the ball of radius r0:
// image boundary radius, Lagrangian residual of the composed map (FD jets),
// intersection-angle preservation, and the image Legendrian residual.
struct InversionReport {
  double max_radius_defect = 0.0;
  double max_lagrangian_residual = 0.0;
  double max_angle_defect = 0.0;
  double max_image_legendrian = 0.0;
};

InversionReport inversion_image_check(double r0, int samples = 100);

// CLI-facing registry.
struct ExampleRequest {
  std::string name;
  double r0 = 2.0;
  double r = 1.7320508075688772;
  std::string w = "cubic";
  Vec4 c{};
  double amplitude = 0.0;  // > 0 applies perturb()
  int mode = 0;
};

ExampleSurface make_example(const ExampleRequest& req);  // throws on unknown names

// simple bisection root finder on a bracketing interval
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14, int max_iter = 200);

}  // namespace lagsurf
