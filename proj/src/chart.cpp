#include "lagsurf/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lagsurf {

ChartDomain ChartDomain::rectangle(double u0, double u1, double v0, double v1) {
  ChartDomain d;
  d.kind = DomainKind::Rectangle;
  d.u0 = u0;
  d.u1 = u1;
  d.v0 = v0;
  d.v1 = v1;
  return d;
}

ChartDomain ChartDomain::polar_disk(double radius) {
  ChartDomain d;
  d.kind = DomainKind::PolarDisk;
  d.u0 = 0.0;
  d.u1 = radius;
  d.v0 = 0.0;
  d.v1 = 2.0 * M_PI;
  d.v_periodic = true;
  return d;
}

ChartDomain ChartDomain::polar_annulus(double u0, double u1) {
  ChartDomain d;
  d.kind = DomainKind::PolarAnnulus;
  d.u0 = u0;
  d.u1 = u1;
  d.v0 = 0.0;
  d.v1 = 2.0 * M_PI;
  d.v_periodic = true;
  return d;
}

ChartDomain ChartDomain::sphere_band(double phi0, double phi1) {
  ChartDomain d;
  d.kind = DomainKind::SphereBand;
  d.u0 = phi0;
  d.u1 = phi1;
  d.v0 = 0.0;
  d.v1 = 2.0 * M_PI;
  d.v_periodic = true;
  return d;
}

bool ChartDomain::contains(double u, double v, double slack) const {
  double su = slack * std::max(1.0, u_extent());
  double sv = slack * std::max(1.0, v_extent());
  bool u_ok = u_periodic || (u >= u0 - su && u <= u1 + su);
  bool v_ok = v_periodic || (v >= v0 - sv && v <= v1 + sv);
  return u_ok && v_ok;
}

namespace {

double wrap_periodic(double x, double lo, double period) {
  double d = std::fmod(x - lo, period);
  if (d < 0.0) d += period;
  return lo + d;
}

Vec4 eval_wrapped(const Chart& ch, double u, double v) {
  const ChartDomain& d = ch.domain;
  if (d.u_periodic) u = wrap_periodic(u, d.u0, d.u_extent());
  if (d.v_periodic) v = wrap_periodic(v, d.v0, d.v_extent());
  return ch.eval(u, v);
}

struct WeightedNodes {
  std::vector<double> x;
  std::vector<double> w;
  bool one_sided = false;
};

// central stencil for d^m at step s, as (offset, weight) pairs
void append_central(std::vector<double>& xs, std::vector<double>& ws, double x, int m, double s, double factor) {
  switch (m) {
    case 1:
      xs.insert(xs.end(), {x + s, x - s});
      ws.insert(ws.end(), {factor / (2.0 * s), -factor / (2.0 * s)});
      break;
    case 2:
      xs.insert(xs.end(), {x + s, x, x - s});
      ws.insert(ws.end(), {factor / (s * s), -2.0 * factor / (s * s), factor / (s * s)});
      break;
    case 3: {
      double c = factor / (2.0 * s * s * s);
      xs.insert(xs.end(), {x + 2.0 * s, x + s, x - s, x - 2.0 * s});
      ws.insert(ws.end(), {c, -2.0 * c, 2.0 * c, -c});
      break;
    }
    default:
      throw std::logic_error("append_central: unsupported derivative order");
  }
}

// Nodes and weights for d^m f/dx^m at x along one chart axis.
// Interior (or periodic axis): central stencil plus one Richardson level.
// Too close to a non-periodic edge: one-sided Fornberg stencil inside the domain.
WeightedNodes axis_weights(double x, int m, double lo, double hi, bool periodic) {
  WeightedNodes out;
  if (m == 0) {
    out.x = {x};
    out.w = {1.0};
    return out;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  static const double expo[4] = {0.0, 1.0 / 5.0, 1.0 / 6.0, 1.0 / 7.0};
  double h = std::pow(eps, expo[m]) * std::max(1.0, std::abs(x));
  double half_width = (m == 3 ? 2.0 * h : h);
  if (periodic || (x - half_width >= lo && x + half_width <= hi)) {
    // Richardson: (4 D(h/2) - D(h)) / 3
    append_central(out.x, out.w, x, m, 0.5 * h, 4.0 / 3.0);
    append_central(out.x, out.w, x, m, h, -1.0 / 3.0);
    return out;
  }
  int n = m + 4;
  if (hi - lo < (n - 1) * h) throw std::domain_error("fd_jet: domain too small for a stencil");
  double start = std::clamp(x - 0.5 * (n - 1) * h, lo, hi - (n - 1) * h);
  out.x.resize(n);
  for (int i = 0; i < n; ++i) out.x[i] = start + i * h;
  out.w = fd_weights(x, out.x, m);
  out.one_sided = true;
  return out;
}

Vec4 fd_partial(const Chart& ch, double u, double v, int mu, int mv, bool& degraded) {
  const ChartDomain& d = ch.domain;
  WeightedNodes wu = axis_weights(u, mu, d.u0, d.u1, d.u_periodic);
  WeightedNodes wv = axis_weights(v, mv, d.v0, d.v1, d.v_periodic);
  degraded = degraded || wu.one_sided || wv.one_sided;
  Vec4 acc;
  for (size_t i = 0; i < wu.x.size(); ++i)
    for (size_t j = 0; j < wv.x.size(); ++j) acc += (wu.w[i] * wv.w[j]) * eval_wrapped(ch, wu.x[i], wv.x[j]);
  return acc;
}

}  // namespace

std::vector<double> fd_weights(double x0, const std::vector<double>& x, int m) {
  // Fornberg's recursion, weights for derivative orders 0..m at x0; returns order m.
  int n = static_cast<int>(x.size());
  if (n <= m) throw std::invalid_argument("fd_weights: need more nodes than the derivative order");
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

Jet fd_jet(const Chart& chart, double u, double v, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("fd_jet: order must be 1..3");
  if (!chart.domain.contains(u, v)) throw std::domain_error("fd_jet: parameter outside chart domain");
  Jet jt;
  jt.order = order;
  jt.pos = chart.eval(u, v);
  bool degraded = false;
  jt.du = fd_partial(chart, u, v, 1, 0, degraded);
  jt.dv = fd_partial(chart, u, v, 0, 1, degraded);
  if (order >= 2) {
    jt.duu = fd_partial(chart, u, v, 2, 0, degraded);
    jt.duv = fd_partial(chart, u, v, 1, 1, degraded);
    jt.dvv = fd_partial(chart, u, v, 0, 2, degraded);
  }
  if (order >= 3) {
    jt.duuu = fd_partial(chart, u, v, 3, 0, degraded);
    jt.duuv = fd_partial(chart, u, v, 2, 1, degraded);
    jt.duvv = fd_partial(chart, u, v, 1, 2, degraded);
    jt.dvvv = fd_partial(chart, u, v, 0, 3, degraded);
  }
  jt.edge_degraded = degraded;
  return jt;
}

Jet jet(const Chart& chart, double u, double v, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("jet: order must be 1..3");
  if (!chart.domain.contains(u, v)) throw std::domain_error("jet: parameter outside chart domain");
  if (chart.analytic_jet) {
    Jet jt = chart.analytic_jet(u, v);
    jt.order = 3;
    return jt;
  }
  return fd_jet(chart, u, v, order);
}

TangentFrame tangent_frame(const Jet& j) {
  double nu = norm(j.du);
  if (nu < 1e-300) throw std::domain_error("tangent_frame: degenerate jet");
  TangentFrame f;
  f.e1 = j.du / nu;
  Vec4 w = j.dv - dot(j.dv, f.e1) * f.e1;
  double nw = norm(w);
  if (nw < 1e-12 * norm(j.dv)) throw std::domain_error("tangent_frame: dependent partials");
  f.e2 = w / nw;
  f.n1 = j_apply(f.e1);
  f.n2 = j_apply(f.e2);
  return f;
}

double lagrangian_residual(const Jet& j) {
  double den = norm(j.du) * norm(j.dv);
  if (den < 1e-300) throw std::domain_error("lagrangian_residual: degenerate jet");
  return std::abs(omega(j.du, j.dv)) / den;
}

double normal_bundle_residual(const Jet& j) {
  TangentFrame f = tangent_frame(j);
  double worst = 0.0;
  for (const Vec4* n : {&f.n1, &f.n2})
    for (const Vec4* e : {&f.e1, &f.e2}) worst = std::max(worst, std::abs(dot(*n, *e)));
  return worst;
}

std::vector<std::pair<double, double>> chart_grid(const Chart& chart, int nu, int nv) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("chart_grid: grid sizes must be positive");
  const ChartDomain& d = chart.domain;
  double ulo = d.u0, uhi = d.u1;
  if (d.kind == DomainKind::SphereBand) {
    double phi_max = std::asin(1.0 - 1e-3);
    ulo = std::max(ulo, -phi_max);
    uhi = std::min(uhi, phi_max);
  }
  std::vector<double> us, vs;
  us.reserve(nu);
  vs.reserve(nv);
  if (d.kind == DomainKind::PolarDisk) {
    for (int i = 0; i < nu; ++i) us.push_back(ulo + (uhi - ulo) * (i + 1) / nu);  // skip the center
  } else {
    for (int i = 0; i < nu; ++i) us.push_back(nu == 1 ? 0.5 * (ulo + uhi) : ulo + (uhi - ulo) * i / (nu - 1));
  }
  if (d.v_periodic) {
    for (int j = 0; j < nv; ++j) vs.push_back(d.v0 + d.v_extent() * j / nv);
  } else {
    for (int j = 0; j < nv; ++j) vs.push_back(nv == 1 ? 0.5 * (d.v0 + d.v1) : d.v0 + d.v_extent() * j / (nv - 1));
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<size_t>(nu) * nv);
  for (double u : us)
    for (double v : vs) pts.emplace_back(u, v);
  return pts;
}

double min_immersion_gram(const Chart& chart, int nu, int nv) {
  // Weyl (golden-ratio) sampling: uniform grids can alias against periodic
  // features of the chart and miss degeneracies entirely
  const double phi1 = 0.6180339887498949, phi2 = 0.7548776662466927;
  const ChartDomain& d = chart.domain;
  double ulo = d.u0, uhi = d.u1;
  if (d.kind == DomainKind::SphereBand) {
    double phi_max = std::asin(1.0 - 1e-3);
    ulo = std::max(ulo, -phi_max);
    uhi = std::min(uhi, phi_max);
  }
  if (d.kind == DomainKind::PolarDisk) ulo += (uhi - ulo) / nu;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nu; ++i)
    for (int jj = 0; jj < nv; ++jj) {
      double fu = std::fmod(0.5 + (i + jj * phi2) * phi1, 1.0);
      double fv = std::fmod(0.25 + (jj + i * phi1) * phi2, 1.0);
      double u = ulo + (uhi - ulo) * fu;
      double v = d.v0 + d.v_extent() * fv;
      Jet j = jet(chart, u, v, 1);
      double g11 = norm2(j.du), g22 = norm2(j.dv), g12 = dot(j.du, j.dv);
      double rel = (g11 * g22 - g12 * g12) / std::max(g11 * g22, 1e-300);
      worst = std::min(worst, rel);
    }
  return worst;
}

Chart make_numeric_chart(std::string name, ChartDomain domain, std::function<Vec4(double, double)> eval) {
  Chart ch;
  ch.name = std::move(name);
  ch.domain = domain;
  ch.eval = std::move(eval);
  return ch;
}

Chart transformed_chart(const Chart& base, const Mat4& map, std::string name) {
  Chart ch;
  ch.name = std::move(name);
  ch.domain = base.domain;
  ch.isothermal_claimed = base.isothermal_claimed;  // ambient isometry preserves the metric
  auto eval = base.eval;
  ch.eval = [eval, map](double u, double v) { return map.apply(eval(u, v)); };
  if (base.analytic_jet) {
    auto aj = base.analytic_jet;
    ch.analytic_jet = [aj, map](double u, double v) {
      Jet j = aj(u, v);
      for (Vec4* f : {&j.pos, &j.du, &j.dv, &j.duu, &j.duv, &j.dvv, &j.duuu, &j.duuv, &j.duvv, &j.dvvv})
        *f = map.apply(*f);
      return j;
    };
  }
  return ch;
}

Chart inverted_chart(const Chart& base, std::string name) {
  auto eval = base.eval;
  return make_numeric_chart(std::move(name), base.domain,
                            [eval](double u, double v) { return sphere_inversion(eval(u, v)); });
}

}  // namespace lagsurf
