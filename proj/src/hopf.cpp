#include "lagsurf/hopf.hpp"

#include <cmath>
#include <stdexcept>

namespace lagsurf {

double isothermal_residual_of(const MetricData& md) {
  return (std::abs(md.g[0][0] - md.g[1][1]) + 2.0 * std::abs(md.g[0][1])) / (md.g[0][0] + md.g[1][1]);
}

double isothermal_residual(const Chart& chart, double u, double v) {
  return isothermal_residual_of(metric(jet(chart, u, v, 2)));
}

namespace {

std::complex<double> phi_of_cubic(const CubicTensor& a) {
  double re = a.a[0][0][0] - 3.0 * a.a[0][1][1];
  double im = a.a[1][1][1] - 3.0 * a.a[0][0][1];
  return {re / 8.0, im / 8.0};
}

PhiSample phi_unchecked(const Chart& chart, double u, double v) {
  Jet j = jet(chart, u, v, 2);
  MetricData md = metric(j);
  PhiSample s;
  s.isothermal_residual = isothermal_residual_of(md);
  s.phi = phi_of_cubic(cubic_a(j, 1e-6, false));
  return s;
}

}  // namespace

PhiSample phi_coefficient(const Chart& chart, double u, double v, double gate, bool enforce) {
  PhiSample s = phi_unchecked(chart, u, v);
  if (enforce && s.isothermal_residual > gate)
    throw std::domain_error("phi_coefficient: chart not isothermal at the point");
  return s;
}

double phi_scale(const Chart& chart, int nu, int nv) {
  double m = 0.0;
  for (auto [u, v] : chart_grid(chart, nu, nv)) m = std::max(m, std::abs(phi_unchecked(chart, u, v).phi));
  return m;
}

CrSample cr_residual(const Chart& chart, double u, double v, double scale) {
  const double hu = 1e-4 * chart.domain.u_extent();
  const double hv = 1e-4 * chart.domain.v_extent();
  PhiSample at = phi_unchecked(chart, u, v);
  std::complex<double> dpu = (phi_unchecked(chart, u + hu, v).phi - phi_unchecked(chart, u - hu, v).phi) / (2.0 * hu);
  std::complex<double> dpv = (phi_unchecked(chart, u, v + hv).phi - phi_unchecked(chart, u, v - hv).phi) / (2.0 * hv);
  std::complex<double> dzbar = 0.5 * (dpu + std::complex<double>(0.0, 1.0) * dpv);

  CrSample s;
  s.isothermal_residual = at.isothermal_residual;
  s.phi_abs = std::abs(at.phi);
  s.dphi_dzbar = std::abs(dzbar);
  double floor = 1e-3 * scale;
  double den = s.phi_abs + floor;
  if (den < 1e-13) {
    s.zero_phi = true;
    s.residual = 0.0;
  } else {
    s.residual = s.dphi_dzbar / den;
  }
  s.gated_residual = std::max(s.residual, s.isothermal_residual);
  return s;
}

PolarCubicSample polar_cubic_components(const Chart& chart, double r, double theta) {
  PolarCubicSample out;
  out.r = r;
  out.theta = theta;
  if (chart.domain.kind == DomainKind::PolarDisk) {
    Jet j = jet(chart, r, theta, 2);
    CubicTensor a = cubic_a(j, 1e-6, false);
    out.a_rrr = a.a[0][0][0];
    out.a_rrt = a.a[0][0][1];
    out.a_rtt = a.a[0][1][1];
    out.a_ttt = a.a[1][1][1];
    // isothermal gate in the underlying Cartesian coordinate: g_rr vs g_tt/r^2
    MetricData md = metric(j);
    double grr = md.g[0][0], gtt = md.g[1][1] / (r * r), grt = md.g[0][1] / r;
    out.isothermal_residual = (std::abs(grr - gtt) + 2.0 * std::abs(grt)) / (grr + gtt);
  } else {
    double u = r * std::cos(theta), v = r * std::sin(theta);
    Jet j = jet(chart, u, v, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j, 1e-6, false);
    out.isothermal_residual = isothermal_residual_of(md);
    // d_r = cos t d_u + sin t d_v,  d_theta = -r sin t d_u + r cos t d_v
    double R[2] = {std::cos(theta), std::sin(theta)};
    double T[2] = {-r * std::sin(theta), r * std::cos(theta)};
    auto contract = [&a](const double* x, const double* y, const double* z) {
      double s = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          for (int k = 0; k < 2; ++k) s += a.a[i][jj][k] * x[i] * y[jj] * z[k];
      return s;
    };
    out.a_rrr = contract(R, R, R);
    out.a_rrt = contract(R, R, T);
    out.a_rtt = contract(R, T, T);
    out.a_ttt = contract(T, T, T);
  }
  out.re_8z3phi = r * r * r * out.a_rrr - 3.0 * r * out.a_rtt;
  out.im_8z3phi = out.a_ttt - 3.0 * r * r * out.a_rrt;
  return out;
}

std::vector<PolarCubicSample> polar_boundary_diagnostic(const Chart& chart, int samples) {
  if (samples < 1) throw std::invalid_argument("polar_boundary_diagnostic: need samples");
  std::vector<PolarCubicSample> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) out.push_back(polar_cubic_components(chart, 1.0, 2.0 * M_PI * k / samples));
  return out;
}

}  // namespace lagsurf
