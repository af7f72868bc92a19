#include "lagsurf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lagsurf/curvature.hpp"
#include "lagsurf/hopf.hpp"

namespace lagsurf {

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"lagrangian", "legendrian", "angle",        "capillary",
                                                 "minimal",    "abreve",     "maslov",       "codazzi",
                                                 "joachimsthal", "cr",       "inversion"};
  return names;
}

std::vector<std::pair<double, double>> interior_grid(const Chart& chart, int nu, int nv, double margin_frac) {
  const ChartDomain& d = chart.domain;
  auto pts = chart_grid(chart, nu, nv);
  double mu = margin_frac * d.u_extent();
  double mv = margin_frac * d.v_extent();
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (auto [u, v] : pts) {
    double uu = d.u_periodic ? u : std::clamp(u, d.u0 + mu, d.u1 - mu);
    double vv = d.v_periodic ? v : std::clamp(v, d.v0 + mv, d.v1 - mv);
    out.emplace_back(uu, vv);
  }
  return out;
}

namespace {

struct Accumulator {
  double max_v = 0.0;
  double sum = 0.0;
  long n = 0;
  void add(double x) {
    max_v = std::max(max_v, std::abs(x));
    sum += std::abs(x);
    ++n;
  }
  double mean() const { return n ? sum / n : 0.0; }
};

CheckResult make_result(const std::string& name, const Accumulator& acc, double tol) {
  CheckResult r;
  r.name = name;
  r.max_residual = acc.max_v;
  r.mean_residual = acc.mean();
  r.tolerance = tol;
  r.pass = acc.max_v < tol;
  return r;
}

using Sink = std::vector<CheckResult>;

void require_boundary(const ExampleSurface& ex, const std::string& check) {
  if (ex.boundaries.empty()) throw UsageError("check '" + check + "' requires an example with a boundary");
}

void check_lagrangian(const ExampleSurface& ex, int nu, int nv, double tol, Sink& out) {
  Accumulator acc;
  for (auto [u, v] : chart_grid(ex.primary(), nu, nv)) acc.add(lagrangian_residual(jet(ex.primary(), u, v, 1)));
  out.push_back(make_result("lagrangian", acc, tol));
}

void check_legendrian(const ExampleSurface& ex, int samples, double tol, Sink& out) {
  require_boundary(ex, "legendrian");
  Accumulator leg, span;
  for (const NamedBoundary& nb : ex.boundaries)
    for (int k = 0; k < samples; ++k) {
      BoundaryFrame f = boundary_frame(ex.charts[nb.chart], nb.curve, 2.0 * M_PI * k / samples);
      leg.add(f.legendrian_residual);
      span.add(f.span_residual);
    }
  out.push_back(make_result("legendrian", leg, tol));
  out.push_back(make_result("legendrian.span", span, tol));
}

void check_angle(const ExampleSurface& ex, int samples, double tol, Sink& out) {
  require_boundary(ex, "angle");
  Accumulator constancy, value;
  for (const NamedBoundary& nb : ex.boundaries) {
    AngleProfile prof = contact_angle_profile(ex.charts[nb.chart], nb.curve, samples, std::max(tol, 1e-10));
    constancy.add(prof.theta_max - prof.theta_min);
    if (ex.expected_mu_dot_n)
      for (int k = 0; k < samples; ++k) {
        BoundaryFrame f = boundary_frame(ex.charts[nb.chart], nb.curve, 2.0 * M_PI * k / samples);
        value.add(f.mu_dot_n - *ex.expected_mu_dot_n);
      }
  }
  out.push_back(make_result("angle.constancy", constancy, tol));
  if (ex.expected_mu_dot_n) out.push_back(make_result("angle.value", value, tol));
}

void check_capillary(const ExampleSurface& ex, int samples, double tol, Sink& out) {
  require_boundary(ex, "capillary");
  Accumulator acc;
  for (const NamedBoundary& nb : ex.boundaries) {
    AngleProfile prof = contact_angle_profile(ex.charts[nb.chart], nb.curve, samples, std::max(tol, 1e-10));
    acc.add(prof.theta_std);
  }
  out.push_back(make_result("capillary", acc, tol));
}

void check_minimal(const ExampleSurface& ex, int nu, int nv, double tol, Sink& out) {
  Accumulator acc;
  for (auto [u, v] : chart_grid(ex.primary(), nu, nv)) {
    Jet j = jet(ex.primary(), u, v, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j, 1e-6, false);
    acc.add(mean_curvature(a, md, j).minimality_residual);
  }
  out.push_back(make_result("minimal", acc, tol));
}

void check_abreve(const ExampleSurface& ex, int nu, int nv, std::optional<double> tol_override, Sink& out) {
  Accumulator trace_acc, norm_acc;
  for (auto [u, v] : chart_grid(ex.primary(), nu, nv)) {
    Jet j = jet(ex.primary(), u, v, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j, 1e-6, false);
    MeanCurvature mc = mean_curvature(a, md, j);
    CubicTensor ab = trace_free_cubic(a, md, mc);
    trace_acc.add(trace_defect(ab, md, mc.norm_a));
    if (ex.abreve_vanishes) norm_acc.add(cubic_norm(ab, md) / std::max(mc.norm_a, 1e-12));
  }
  out.push_back(make_result("abreve.trace", trace_acc, tol_override.value_or(1e-10)));
  if (ex.abreve_vanishes) out.push_back(make_result("abreve.norm", norm_acc, tol_override.value_or(1e-6)));
}

void check_maslov(const ExampleSurface& ex, int nu, int nv, double tol, Sink& out) {
  Accumulator ident, maslov;
  for (auto [u, v] : interior_grid(ex.primary(), nu, nv)) {
    MaslovReport r = conformal_maslov_residual(ex.primary(), u, v);
    ident.add(r.identity_residual);
    maslov.add(r.maslov_residual);
  }
  out.push_back(make_result("maslov", maslov, tol));
  out.push_back(make_result("maslov.identity", ident, tol));
}

void check_codazzi(const ExampleSurface& ex, int nu, int nv, double tol, Sink& out) {
  Accumulator sym, contr;
  for (auto [u, v] : interior_grid(ex.primary(), nu, nv)) {
    sym.add(codazzi_symmetry_residual(covariant_derivative_a(ex.primary(), u, v)));
    contr.add(codazzi_contraction_residual(ex.primary(), u, v));
  }
  out.push_back(make_result("codazzi.symmetry", sym, tol));
  out.push_back(make_result("codazzi.contraction", contr, tol));
}

void check_joachimsthal(const ExampleSurface& ex, int samples, std::optional<double> tol_override, Sink& out) {
  require_boundary(ex, "joachimsthal");
  Accumulator lhs_acc, resid_acc;
  for (const NamedBoundary& nb : ex.boundaries)
    for (int k = 0; k < samples; ++k) {
      JoachimsthalSample s = joachimsthal_residual(ex.charts[nb.chart], nb.curve, 2.0 * M_PI * k / samples);
      lhs_acc.add(s.lhs);
      resid_acc.add(s.residual);
    }
  out.push_back(make_result("joachimsthal.curvature-line", lhs_acc, tol_override.value_or(1e-6)));
  out.push_back(make_result("joachimsthal.identity", resid_acc, tol_override.value_or(1e-4)));
}

void check_cr(const ExampleSurface& ex, int nu, int nv, std::optional<double> tol_override, Sink& out) {
  const Chart& ch = ex.analysis();
  double scale = phi_scale(ch);
  Accumulator cr_acc, iso_acc;
  for (auto [u, v] : interior_grid(ch, nu, nv)) {
    CrSample s = cr_residual(ch, u, v, scale);
    cr_acc.add(s.gated_residual);
    iso_acc.add(s.isothermal_residual);
  }
  out.push_back(make_result("cr", cr_acc, tol_override.value_or(1e-4)));
  out.push_back(make_result("cr.isothermal", iso_acc, tol_override.value_or(1e-6)));
}

void check_inversion(const ExampleSurface& ex, int samples, std::optional<double> tol_override, Sink& out) {
  if (ex.name != "catenoid-in-ball") throw UsageError("check 'inversion' applies to catenoid-in-ball only");
  InversionReport rep = inversion_image_check(ex.params.at("r0"), samples);
  auto one = [&](const std::string& name, double v, double tol) {
    Accumulator acc;
    acc.add(v);
    out.push_back(make_result(name, acc, tol_override.value_or(tol)));
  };
  one("inversion.radius", rep.max_radius_defect, 1e-10);
  one("inversion.lagrangian", rep.max_lagrangian_residual, 1e-8);
  one("inversion.angle", rep.max_angle_defect, 1e-6);
  one("inversion.legendrian", rep.max_image_legendrian, 1e-8);
}

}  // namespace

VerificationReport run_checks(const ExampleSurface& ex, const std::vector<std::string>& checks, int n_u, int n_v,
                              std::optional<double> tol_override, int boundary_samples) {
  VerificationReport rep;
  rep.example = ex.name;
  rep.params = ex.params;
  rep.n_u = n_u;
  rep.n_v = n_v;
  for (const std::string& name : checks) {
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
      throw UsageError("unknown check '" + name + "'");
    auto tol = [&](double dflt) { return tol_override.value_or(dflt); };
    if (name == "lagrangian")
      check_lagrangian(ex, n_u, n_v, tol(1e-10), rep.checks);
    else if (name == "legendrian")
      check_legendrian(ex, boundary_samples, tol(1e-8), rep.checks);
    else if (name == "angle")
      check_angle(ex, boundary_samples, tol(1e-6), rep.checks);
    else if (name == "capillary")
      check_capillary(ex, boundary_samples, tol(1e-8), rep.checks);
    else if (name == "minimal")
      check_minimal(ex, n_u, n_v, tol(1e-6), rep.checks);
    else if (name == "abreve")
      check_abreve(ex, n_u, n_v, tol_override, rep.checks);
    else if (name == "maslov")
      check_maslov(ex, n_u, n_v, tol(1e-4), rep.checks);
    else if (name == "codazzi")
      check_codazzi(ex, n_u, n_v, tol(1e-4), rep.checks);
    else if (name == "joachimsthal")
      check_joachimsthal(ex, boundary_samples, tol_override, rep.checks);
    else if (name == "cr")
      check_cr(ex, n_u, n_v, tol_override, rep.checks);
    else if (name == "inversion")
      check_inversion(ex, boundary_samples, tol_override, rep.checks);
  }
  return rep;
}

}  // namespace lagsurf
