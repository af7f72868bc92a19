#pragma once

#include <complex>
#include <vector>

#include "lagsurf/curvature.hpp"

namespace lagsurf {

// (|g11 - g22| + 2|g12|) / (g11 + g22); zero exactly on isothermal charts
double isothermal_residual_of(const MetricData& md);
double isothermal_residual(const Chart& chart, double u, double v);

// Cubic-differential coefficient phi = A(d_z, d_z, d_z) with d_z = (d_u - i d_v)/2,
// expanded multilinearly: phi = ((A111 - 3 A122) + i (A222 - 3 A112)) / 8.
struct PhiSample {
  std::complex<double> phi;
  double isothermal_residual = 0.0;
};

// With enforce set, a non-isothermal point (residual > gate) throws.
PhiSample phi_coefficient(const Chart& chart, double u, double v, double gate = 1e-6, bool enforce = true);

// max |phi| over a chart grid; used as the normalization scale for cr_residual
double phi_scale(const Chart& chart, int nu = 20, int nv = 20);

struct CrSample {
  double residual = 0.0;       // |d phi / d zbar| / (|phi| + floor)
  double gated_residual = 0.0; // max(residual, isothermal_residual): the CR
                               // statement presupposes an isothermal chart, so
                               // the check value is floored by that defect
  double dphi_dzbar = 0.0;
  double phi_abs = 0.0;
  double isothermal_residual = 0.0;
  bool zero_phi = false;  // |phi| and the scale floor both vanish; residual reported 0
};

// Cauchy-Riemann residual of phi by centered differences over the chart.
// scale = max grid |phi| (see phi_scale); the floor is 1e-3 * scale.
CrSample cr_residual(const Chart& chart, double u, double v, double scale);

// Coordinate-basis components of the cubic form with respect to polar
// parameters (r, theta) of a conformal disk coordinate z = r e^{i theta},
// and the real/imaginary parts of 8 z^3 A(d_z,d_z,d_z):
//   Re = r^3 A_rrr - 3 r A_rtt,   Im = A_ttt - 3 r^2 A_rrt.
// Charts with a PolarDisk domain are read directly; Cartesian disk charts
// are evaluated at (r cos theta, r sin theta) and tensor-transformed.
struct PolarCubicSample {
  double r = 0.0, theta = 0.0;
  double a_rrr = 0.0, a_rtt = 0.0, a_rrt = 0.0, a_ttt = 0.0;
  double re_8z3phi = 0.0, im_8z3phi = 0.0;
  double isothermal_residual = 0.0;
};

PolarCubicSample polar_cubic_components(const Chart& chart, double r, double theta);

// Samples along the boundary circle r = 1.
std::vector<PolarCubicSample> polar_boundary_diagnostic(const Chart& chart, int samples);

}  // namespace lagsurf
