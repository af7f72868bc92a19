#include <doctest.h>

#include <cmath>

#include "lagsurf/curvature.hpp"
#include "lagsurf/examples.hpp"
#include "test_util.hpp"

using namespace lagsurf;
using namespace lagsurf::testutil;

TEST_CASE("first fundamental form of the standard charts") {
  ExampleSurface plane = plane_disk();
  MetricData mp = metric(jet(plane.charts[0], 0.2, -0.4, 2));
  CHECK(mp.g[0][0] == 1.0);
  CHECK(mp.g[1][1] == 1.0);
  CHECK(mp.g[0][1] == 0.0);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(mp.gamma[k][i][j] == 0.0);

  ExampleSurface cat = lagrangian_catenoid();
  for (int k = 0; k < 10; ++k) {
    double t = uniform(0.6, 1.9), a = uniform(0, 6.28);
    MetricData mc = metric(jet(cat.charts[0], t, a, 2));
    CHECK(mc.g[0][0] == doctest::Approx(1.0 + std::pow(t, -4.0)).epsilon(1e-13));
    CHECK(mc.g[1][1] == doctest::Approx(t * t + 1.0 / (t * t)).epsilon(1e-13));
    CHECK(std::abs(mc.g[0][1]) < 1e-14);
    // isothermal companion: g_ss = g_aa, g_sa = 0 by the chain rule
    MetricData mi = metric(jet(cat.charts[1], std::log(t), a, 2));
    CHECK(mi.g[0][0] == doctest::Approx(mi.g[1][1]).epsilon(1e-13));
    CHECK(std::abs(mi.g[0][1]) < 1e-13);
  }

  Jet degenerate;
  degenerate.du = Vec4(1, 0, 0, 0);
  degenerate.dv = Vec4(1, 0, 0, 0);
  degenerate.order = 2;
  CHECK_THROWS_AS(metric(degenerate), std::domain_error);
}

TEST_CASE("metric is parallel: finite-difference nabla g vanishes") {
  ExampleSurface cat = lagrangian_catenoid();
  const Chart& ch = cat.charts[0];
  const double h = 1e-6;
  for (int k = 0; k < 5; ++k) {
    double t = uniform(0.7, 1.8), a = uniform(0, 6.28);
    MetricData md = metric(jet(ch, t, a, 2));
    for (int l = 0; l < 2; ++l) {
      double tp = t + (l == 0 ? h : 0), tm = t - (l == 0 ? h : 0);
      double ap = a + (l == 1 ? h : 0), am = a - (l == 1 ? h : 0);
      MetricData mp = metric(jet(ch, tp, ap, 2)), mm = metric(jet(ch, tm, am, 2));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double dg = (mp.g[i][j] - mm.g[i][j]) / (2 * h);
          for (int m = 0; m < 2; ++m) dg -= md.gamma[m][l][i] * md.g[m][j] + md.gamma[m][l][j] * md.g[i][m];
          CHECK(std::abs(dg) < 1e-6);
        }
    }
  }
}

TEST_CASE("second fundamental form: totally geodesic plane, normality elsewhere") {
  ExampleSurface plane = plane_disk();
  for (const Vec4& h : second_fundamental(jet(plane.charts[0], 0.3, 0.3, 2))) CHECK(norm(h) == 0.0);

  ExampleSurface cat = lagrangian_catenoid();
  for (int k = 0; k < 10; ++k) {
    double t = uniform(0.6, 1.9), a = uniform(0, 6.28);
    Jet j = jet(cat.charts[0], t, a, 2);
    auto h = second_fundamental(j);
    for (const Vec4& hv : h) {
      CHECK(std::abs(dot(hv, j.du)) < 1e-12);
      CHECK(std::abs(dot(hv, j.dv)) < 1e-12);
    }
  }

  ExampleSurface w = whitney(1.0);
  auto h = second_fundamental(jet(w.charts[0], 0.4, 1.0, 2));
  double hn = 0;
  for (const Vec4& hv : h) hn = std::max(hn, norm(hv));
  CHECK(hn > 1e-3);  // curved
}

TEST_CASE("cubic form is totally symmetric exactly on Lagrangian points") {
  ExampleSurface plane = plane_disk();
  CHECK(cubic_a(jet(plane.charts[0], 0.1, 0.1, 2)).max_abs() == 0.0);

  for (auto ex : {lagrangian_catenoid(), whitney(1.0), gradient_graph("cubic")}) {
    for (int k = 0; k < 15; ++k) {
      auto pts = chart_grid(ex.charts[0], 6, 6);
      auto [u, v] = pts[k % pts.size()];
      CHECK(cubic_a(jet(ex.charts[0], u, v, 2)).symmetry_defect() < 1e-8);
    }
  }

  // curved non-Lagrangian control: the flat shear (u,v,v,0) has h = 0, so a
  // quadratic term is added to make the asymmetry visible
  Chart control = make_analytic_chart("bent-shear-control", ChartDomain::rectangle(-1, 1, -1, 1), [](auto u, auto v) {
    using T = decltype(u);
    return std::array<T, 4>{u, v, v + u * u, T(0.0)};
  });
  Jet j = jet(control, 0.2, 0.1, 2);
  CHECK(cubic_a(j, 1e-6, false).symmetry_defect() > 1e-2);
  CHECK_THROWS_AS(cubic_a(j), std::domain_error);  // Lagrangian gate
}

TEST_CASE("mean curvature: plane exactly zero, catenoid minimal, Whitney not") {
  ExampleSurface plane = plane_disk();
  {
    Jet j = jet(plane.charts[0], 0.4, -0.3, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j);
    MeanCurvature mc = mean_curvature(a, md, j);
    CHECK(norm(mc.H) == 0.0);
    CHECK(mc.minimality_residual == 0.0);
  }
  ExampleSurface cat = lagrangian_catenoid();
  for (auto [u, v] : chart_grid(cat.charts[0], 8, 8)) {
    Jet j = jet(cat.charts[0], u, v, 2);
    MetricData md = metric(j);
    MeanCurvature mc = mean_curvature(cubic_a(j), md, j);
    CHECK(mc.minimality_residual < 1e-6);
  }
  ExampleSurface w = whitney(1.0);
  Jet j = jet(w.charts[0], 0.5, 2.0, 2);
  MetricData md = metric(j);
  MeanCurvature mc = mean_curvature(cubic_a(j), md, j);
  CHECK(norm(mc.H) > 1e-3);
}

TEST_CASE("trace-free part: trace vanishes, equals A on minimal charts, vanishes on Whitney") {
  ExampleSurface cat = lagrangian_catenoid();
  for (auto [u, v] : chart_grid(cat.charts[0], 5, 5)) {
    Jet j = jet(cat.charts[0], u, v, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j);
    MeanCurvature mc = mean_curvature(a, md, j);
    CubicTensor ab = trace_free_cubic(a, md, mc);
    CHECK(trace_defect(ab, md, mc.norm_a) < 1e-10);
    double diff = 0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj)
        for (int k = 0; k < 2; ++k) diff = std::max(diff, std::abs(ab.a[i][jj][k] - a.a[i][jj][k]));
    CHECK(diff < 1e-13);  // H = 0 so the subtracted trace part vanishes
  }
  ExampleSurface w = whitney(1.0);
  for (auto [u, v] : chart_grid(w.charts[0], 8, 8)) {
    Jet j = jet(w.charts[0], u, v, 2);
    MetricData md = metric(j);
    CubicTensor a = cubic_a(j);
    MeanCurvature mc = mean_curvature(a, md, j);
    CubicTensor ab = trace_free_cubic(a, md, mc);
    CHECK(trace_defect(ab, md, mc.norm_a) < 1e-10);
    CHECK(cubic_norm(ab, md) / std::max(mc.norm_a, 1e-12) < 1e-6);
  }
}

TEST_CASE("covariant derivative of A: Codazzi symmetry") {
  ExampleSurface plane = plane_disk();
  CHECK(covariant_derivative_a(plane.charts[0], 0.2, 0.3).max_abs() == 0.0);

  for (auto ex : {lagrangian_catenoid(), gradient_graph("cubic")}) {
    for (auto [u, v] : chart_grid(ex.charts[0], 5, 5)) {
      CovariantCubic ca = covariant_derivative_a(ex.charts[0], u, v);
      CHECK_FALSE(ca.fd_fallback);
      CHECK(codazzi_symmetry_residual(ca) < 1e-4);
    }
  }
}

TEST_CASE("charts without exact jets fall back to component stencils") {
  ExampleSurface cat = lagrangian_catenoid();
  auto eval = cat.charts[0].eval;
  Chart numeric = make_numeric_chart("catenoid-numeric", cat.charts[0].domain, eval);
  CovariantCubic ca = covariant_derivative_a(numeric, 1.1, 2.0);
  CHECK(ca.fd_fallback);
  CHECK(codazzi_symmetry_residual(ca) < 1e-4);
  CovariantCubic exact = covariant_derivative_a(cat.charts[0], 1.1, 2.0);
  double diff = 0;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) diff = std::max(diff, std::abs(ca.d[l][i][j][k] - exact.d[l][i][j][k]));
  CHECK(diff < 1e-5);  // component stencils run on finite-difference jets
}

TEST_CASE("contracted Codazzi residual") {
  ExampleSurface plane = plane_disk();
  CHECK(codazzi_contraction_residual(plane.charts[0], 0.1, 0.5) == 0.0);
  ExampleSurface cat = lagrangian_catenoid();
  for (auto [u, v] : chart_grid(cat.charts[0], 6, 6)) CHECK(codazzi_contraction_residual(cat.charts[0], u, v) < 1e-6);
  ExampleSurface w = whitney(1.0);
  for (auto [u, v] : chart_grid(w.charts[0], 6, 6)) CHECK(codazzi_contraction_residual(w.charts[0], u, v) < 1e-4);
}

TEST_CASE("divergence identity for the trace-free cubic and the Maslov residual") {
  // the identity residual is unconditional; the Maslov residual separates
  // conformal-Maslov immersions from the cubic-graph control
  ExampleSurface cat = lagrangian_catenoid();
  for (auto [u, v] : chart_grid(cat.charts[1], 6, 6)) {
    MaslovReport r = conformal_maslov_residual(cat.charts[1], u, v);
    CHECK(r.identity_residual < 1e-4);
    CHECK(r.maslov_residual < 1e-4);
  }
  ExampleSurface w = whitney(1.0);
  for (auto [u, v] : chart_grid(w.charts[1], 6, 6)) {
    MaslovReport r = conformal_maslov_residual(w.charts[1], u, v);
    CHECK(r.identity_residual < 1e-4);
    CHECK(r.maslov_residual < 1e-4);
  }
  ExampleSurface g = gradient_graph("cubic");
  double worst = 0;
  for (auto [u, v] : chart_grid(g.charts[0], 6, 6)) {
    MaslovReport r = conformal_maslov_residual(g.charts[0], u, v);
    CHECK(r.identity_residual < 1e-4);
    worst = std::max(worst, r.maslov_residual);
  }
  CHECK(worst > 0.1);
}

TEST_CASE("gradient of the mean-curvature form is symmetric on Lagrangian examples") {
  ExampleSurface w = whitney(1.0);
  for (auto [u, v] : chart_grid(w.charts[0], 5, 5)) {
    MaslovReport r = conformal_maslov_residual(w.charts[0], u, v);
    CHECK(r.grad_h_antisymmetric < 1e-8 * std::max(1.0, r.grad_h_symmetric));
  }
}

TEST_CASE("Weingarten symmetry of the cubic form") {
  ExampleSurface plane = plane_disk();
  CHECK(weingarten_residual(jet(plane.charts[0], 0.2, 0.2, 2)) == 0.0);
  ExampleSurface cat = lagrangian_catenoid();
  ExampleSurface w = whitney(1.0);
  for (int k = 0; k < 10; ++k) {
    CHECK(weingarten_residual(jet(cat.charts[0], uniform(0.6, 1.9), uniform(0, 6.28), 2)) < 1e-8);
    CHECK(weingarten_residual(jet(w.charts[0], uniform(-1.2, 1.2), uniform(0, 6.28), 2)) < 1e-8);
  }
}
