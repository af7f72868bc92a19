#include <doctest.h>

#include <cmath>
#include <complex>

#include "lagsurf/examples.hpp"
#include "lagsurf/hopf.hpp"
#include "test_util.hpp"

using namespace lagsurf;
using namespace lagsurf::testutil;

namespace {

// Lagrangian surface from a holomorphic function: (u, v, Re F, -Im F) with
// F = (u+iv)^4 / 12 is minimal Lagrangian with cubic coefficient (u+iv)^2 / 2
// (nonconstant holomorphic), good for contour tests.
Chart quartic_graph() {
  return make_analytic_chart(
      "quartic-graph", ChartDomain::rectangle(-1, 1, -1, 1),
      [](auto u, auto v) {
        using T = decltype(u);
        T u2 = u * u, v2 = v * v;
        T re4 = u2 * u2 - 6.0 * (u2 * v2) + v2 * v2;
        T im4 = 4.0 * (u * v) * (u2 - v2);
        return std::array<T, 4>{u, v, re4 / 12.0, -1.0 / 12.0 * im4};
      },
      /*isothermal=*/true);
}

}  // namespace

TEST_CASE("isothermal residuals of the example charts") {
  ExampleSurface plane = plane_disk();
  CHECK(isothermal_residual(plane.charts[0], 0.3, 0.2) == 0.0);

  ExampleSurface cat = lagrangian_catenoid();
  CHECK(isothermal_residual(cat.charts[0], 1.3, 0.5) > 1e-2);   // (t, a) chart is not isothermal
  CHECK(isothermal_residual(cat.charts[1], 0.25, 0.5) < 1e-12);  // s = log t chart is

  ExampleSurface w = whitney(1.0);
  for (int k = 0; k < 20; ++k)
    CHECK(isothermal_residual(w.charts[1], uniform(-1.8, 1.8), uniform(-1.8, 1.8)) < 1e-8);
  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  CHECK(isothermal_residual(cap.charts[2], 0.3, -0.5) < 1e-8);
}

TEST_CASE("phi vanishes on the plane and respects minimal-chart trace relations") {
  ExampleSurface plane = plane_disk();
  PhiSample p = phi_coefficient(plane.charts[0], 0.2, 0.4);
  CHECK(std::abs(p.phi) == 0.0);

  // at isothermal points of a minimal chart the traces give A122 = -A111 and
  // A222 = -A112, so phi = (A111 - i A112)/2
  ExampleSurface cat = lagrangian_catenoid();
  for (int k = 0; k < 10; ++k) {
    double s = uniform(-0.5, 0.5), a = uniform(0, 6.28);
    Jet j = jet(cat.charts[1], s, a, 2);
    CubicTensor t = cubic_a(j);
    CHECK(t.a[0][1][1] == doctest::Approx(-t.a[0][0][0]).epsilon(1e-10));
    CHECK(t.a[1][1][1] == doctest::Approx(-t.a[0][0][1]).epsilon(1e-10));
    PhiSample q = phi_coefficient(cat.charts[1], s, a);
    std::complex<double> half(0.5 * (t.a[0][0][0]), -0.5 * t.a[0][0][1]);
    CHECK(std::abs(q.phi - half) < 1e-12);
  }

  // the non-isothermal chart is rejected by the gate
  CHECK_THROWS_AS(phi_coefficient(cat.charts[0], 1.3, 0.5), std::domain_error);
}

TEST_CASE("catenoid cubic coefficient is identically one in the log chart") {
  // Writing the immersion through w1 = e^{s+ia}, w2 = 1/w1 and expanding
  // A(d_z, d_z, d_z) bilinearly gives X_z = (e^z, -ie^z, -e^{-z}, -ie^{-z})/2,
  // X_zz = (e^z, -ie^z, e^{-z}, ie^{-z})/2, J X_z = (e^{-z}, ie^{-z}, e^z, -ie^z)/2,
  // whose pairing is exactly 1 with vanishing tangential corrections.
  ExampleSurface cat = lagrangian_catenoid();
  for (int k = 0; k < 20; ++k) {
    PhiSample p = phi_coefficient(cat.charts[1], uniform(-0.6, 0.6), uniform(0, 6.28));
    CHECK(std::abs(p.phi - std::complex<double>(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("phi magnitude is constant along the angular direction of the catenoid") {
  ExampleSurface cat = lagrangian_catenoid();
  double ref = std::abs(phi_coefficient(cat.charts[1], 0.21, 0.0).phi);
  CHECK(ref > 0.5);
  for (int k = 1; k < 16; ++k)
    CHECK(std::abs(phi_coefficient(cat.charts[1], 0.21, 2.0 * M_PI * k / 16).phi) ==
          doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("Whitney sphere: pure-trace cubic form means phi is identically zero") {
  ExampleSurface w = whitney(1.0);
  for (int k = 0; k < 10; ++k) {
    PhiSample p = phi_coefficient(w.charts[1], uniform(-1.5, 1.5), uniform(-1.5, 1.5), 1e-6);
    CHECK(std::abs(p.phi) < 1e-12);
  }
}

TEST_CASE("Cauchy-Riemann residual: holomorphic on conformal-Maslov charts") {
  ExampleSurface cat = lagrangian_catenoid();
  double scale = phi_scale(cat.charts[1]);
  for (int k = 0; k < 15; ++k) {
    CrSample s = cr_residual(cat.charts[1], uniform(-0.5, 0.5), uniform(0, 6.28), scale);
    CHECK(s.residual < 1e-4);
    CHECK(s.gated_residual < 1e-4);
  }
  // plane: 0/0 guarded with the zero-phi flag
  ExampleSurface plane = plane_disk();
  CrSample zp = cr_residual(plane.charts[0], 0.2, 0.3, phi_scale(plane.charts[0]));
  CHECK(zp.zero_phi);
  CHECK(zp.residual == 0.0);

  Chart q = quartic_graph();
  double qs = phi_scale(q);
  for (int k = 0; k < 15; ++k) {
    double u = uniform(-0.8, 0.8), v = uniform(-0.8, 0.8);
    CrSample s = cr_residual(q, u, v, qs);
    CHECK(s.gated_residual < 1e-4);
    // phi = (u+iv)^2/2 for this construction
    std::complex<double> z(u, v);
    PhiSample p = phi_coefficient(q, u, v);
    CHECK(std::abs(p.phi - 0.5 * z * z) < 1e-10);
  }
}

TEST_CASE("perturbed catenoid breaks holomorphicity and the Maslov condition together") {
  ExampleSurface pc = perturb(lagrangian_catenoid(), 1e-2, 3);
  double scale = phi_scale(pc.charts[0]);
  double worst_cr = 0, worst_maslov = 0;
  for (int k = 0; k < 12; ++k) {
    double u = uniform(-0.4, 0.4), v = uniform(0, 6.28);
    CrSample s = cr_residual(pc.charts[0], u, v, scale);
    worst_cr = std::max(worst_cr, s.gated_residual);
    MaslovReport mr = conformal_maslov_residual(pc.charts[0], u, v);
    worst_maslov = std::max(worst_maslov, mr.maslov_residual);
    // pointwise equivalence: small Maslov residual forces small CR residual
    if (mr.maslov_residual < 1e-4) CHECK(s.residual < 1e-3);
    if (s.residual > 1e-2) CHECK(mr.maslov_residual > 1e-3);
  }
  CHECK(worst_cr > 1e-2);
  CHECK(worst_maslov > 1e-2);
}

TEST_CASE("holomorphic phi satisfies the contour mean-value property") {
  auto contour_check = [](const Chart& ch, double u0, double v0, double rho) {
    std::complex<double> center = phi_coefficient(ch, u0, v0).phi;
    std::complex<double> avg(0, 0);
    const int n = 64;
    for (int k = 0; k < n; ++k) {
      double t = 2.0 * M_PI * k / n;
      avg += phi_coefficient(ch, u0 + rho * std::cos(t), v0 + rho * std::sin(t)).phi;
    }
    avg /= double(n);
    return std::abs(avg - center);
  };
  ExampleSurface cat = lagrangian_catenoid();
  CHECK(contour_check(cat.charts[1], 0.05, 3.0, 0.2) < 1e-4);
  Chart q = quartic_graph();
  CHECK(contour_check(q, 0.1, -0.2, 0.3) < 1e-4);
  CHECK(contour_check(q, 0.1, -0.2, 0.5) < 1e-4);
}

TEST_CASE("polar components of the cubic form and the 8 z^3 phi identity") {
  // plane: everything zero
  ExampleSurface plane = plane_disk();
  for (const PolarCubicSample& s : polar_boundary_diagnostic(plane.charts[1], 8)) {
    CHECK(s.a_rrr == 0.0);
    CHECK(s.im_8z3phi == 0.0);
  }
  // Whitney cap (capillary, non-minimal): the curvature-line component A_rrt
  // vanishes on the boundary; the identity Re/Im parts match 8 z^3 phi
  // computed on the isothermal Cartesian chart
  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  const Chart& polar = cap.charts[3];
  const Chart& cart = cap.charts[2];
  for (int k = 0; k < 12; ++k) {
    double r = 0.85, th = 2.0 * M_PI * k / 12;
    PolarCubicSample s = polar_cubic_components(polar, r, th);
    std::complex<double> z = std::polar(r, th);
    std::complex<double> lhs = 8.0 * z * z * z * phi_coefficient(cart, r * std::cos(th), r * std::sin(th)).phi;
    CHECK(std::abs(lhs.real() - s.re_8z3phi) < 1e-8);
    CHECK(std::abs(lhs.imag() - s.im_8z3phi) < 1e-8);
  }
  for (const PolarCubicSample& s : polar_boundary_diagnostic(polar, 24)) {
    CHECK(std::abs(s.a_rrt) < 1e-6);  // capillary boundary is a curvature line
    CHECK(std::abs(s.im_8z3phi - (s.a_ttt - 3.0 * s.a_rrt)) < 1e-12);
  }
}
