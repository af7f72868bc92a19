#include <doctest.h>

#include <cmath>

#include "lagsurf/boundary.hpp"
#include "lagsurf/examples.hpp"
#include "test_util.hpp"

using namespace lagsurf;
using namespace lagsurf::testutil;

namespace {

// Lagrangian band inside S^3: (cos u e^{iv}, sin u e^{iv}) in complex
// coordinates. Its v-circles are nowhere Legendrian and the conormal is
// orthogonal to span{N, JN}, so both residuals are 1 together.
Chart clifford_band() {
  return make_analytic_chart("clifford-band", ChartDomain::rectangle(0.3, 1.2, 0.0, 2.0 * M_PI), [](auto u, auto v) {
    using T = decltype(u);
    T cu = cos(u), su = sin(u), cv = cos(v), sv = sin(v);
    return std::array<T, 4>{cu * cv, su * cv, cu * sv, su * sv};
  });
}

// complex-line disk (u, 0, v, 0): not Lagrangian; its boundary is the Hopf
// circle, whose tangent equals the Reeb field
Chart complex_line_disk() {
  return make_analytic_chart("complex-line-disk", ChartDomain::rectangle(-1, 1, -1, 1), [](auto u, auto v) {
    using T = decltype(u);
    return std::array<T, 4>{u, T(0.0), v, T(0.0)};
  });
}

}  // namespace

TEST_CASE("plane disk boundary: mu = N, free boundary angle") {
  ExampleSurface plane = plane_disk();
  const NamedBoundary& nb = plane.boundaries[0];
  for (int k = 0; k < 16; ++k) {
    BoundaryFrame f = boundary_frame(plane.charts[nb.chart], nb.curve, 2.0 * M_PI * k / 16);
    CHECK(norm(f.mu - f.N) < 1e-14);
    CHECK(f.theta == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK(f.legendrian_residual < 1e-15);
    CHECK(f.span_residual < 1e-15);
    CHECK_FALSE(f.mu_inward_flag);
  }
}

TEST_CASE("catenoid-in-ball boundary: pinned conormal angle, Legendrian circles") {
  ExampleSurface cb = catenoid_in_ball(2.0);
  double expected = std::sqrt(3.0) / 2.0;  // sqrt(r0^4 - 4)/r0^2 at r0 = 2
  CHECK(*cb.expected_mu_dot_n == doctest::Approx(expected).epsilon(1e-15));
  for (const NamedBoundary& nb : cb.boundaries) {
    double first = 0.0;
    for (int k = 0; k < 32; ++k) {
      BoundaryFrame f = boundary_frame(cb.charts[nb.chart], nb.curve, 2.0 * M_PI * k / 32);
      CHECK(std::abs(f.mu_dot_n - expected) < 1e-10);
      CHECK(f.legendrian_residual < 1e-10);
      if (k == 0)
        first = f.theta;
      else
        CHECK(f.theta == doctest::Approx(first).epsilon(1e-12));
    }
  }
}

TEST_CASE("frame invariants: unit, orthogonal, reconstruction from N and JN") {
  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  const NamedBoundary& nb = cap.boundaries[0];
  for (int k = 0; k < 25; ++k) {
    BoundaryFrame f = boundary_frame(cap.charts[nb.chart], nb.curve, uniform(0, 2 * M_PI));
    CHECK(std::abs(norm(f.T) - 1.0) < 1e-12);
    CHECK(std::abs(norm(f.mu) - 1.0) < 1e-12);
    CHECK(std::abs(dot(f.T, f.mu)) < 1e-12);
    Vec4 rec = std::sin(f.theta) * f.N + std::cos(f.theta) * f.xi;
    CHECK(norm(f.mu - rec) < 1e-8);
  }
}

TEST_CASE("a conormal pointing below the support normal is flagged, not folded") {
  // same plane disk, but with the outward parameter direction reversed, so
  // mu = -N and theta falls outside [0, pi)
  ExampleSurface plane = plane_disk();
  BoundaryCurve inward;
  inward.param = [](double s) { return std::make_pair(std::cos(s), std::sin(s)); };
  inward.dparam = [](double s) { return std::make_pair(-std::sin(s), std::cos(s)); };
  inward.outward = [](double s) { return std::make_pair(-std::cos(s), -std::sin(s)); };
  BoundaryFrame f = boundary_frame(plane.charts[0], inward, 0.7);
  CHECK(f.mu_inward_flag);
  CHECK(f.theta < 0.0);
}

TEST_CASE("boundary off the sphere is rejected") {
  ExampleSurface cat = lagrangian_catenoid();  // t-edges are not on a unit sphere
  BoundaryCurve edge = BoundaryCurve::u_edge(cat.charts[0].domain.u1, +1.0);
  CHECK_THROWS_AS(boundary_frame(cat.charts[0], edge, 0.3), std::domain_error);
}

TEST_CASE("legendrian_check passes on the Whitney cap and fails on the Hopf control") {
  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  const NamedBoundary& nb = cap.boundaries[0];
  LegendrianReport rep = legendrian_check(cap.charts[nb.chart], nb.curve, 64, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.max_legendrian < 1e-8);
  CHECK(rep.max_span < 1e-8);

  // the complex-line disk boundary has <xi, T> = 1 at every parameter
  Chart hopf = complex_line_disk();
  BoundaryCurve circle = BoundaryCurve::parameter_circle(1.0);
  LegendrianReport bad = legendrian_check(hopf, circle, 64, 1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_legendrian > 0.5);

  // single-frame degenerate case reduces to the pointwise test
  std::vector<BoundaryFrame> one{boundary_frame(cap.charts[nb.chart], nb.curve, 0.0)};
  LegendrianReport single = legendrian_check(one, 1e-8);
  CHECK(single.pass == (one[0].legendrian_residual < 1e-8 && one[0].span_residual < 1e-8));
  CHECK_THROWS_AS(legendrian_check(std::vector<BoundaryFrame>{}, 1e-8), std::invalid_argument);
}

TEST_CASE("span and Legendrian residuals pass or fail together on Lagrangian surfaces") {
  // both vanish on capillary examples
  ExampleSurface cb = catenoid_in_ball(2.0);
  for (const NamedBoundary& nb : cb.boundaries)
    for (int k = 0; k < 50; ++k) {
      BoundaryFrame f = boundary_frame(cb.charts[nb.chart], nb.curve, uniform(0, 2 * M_PI));
      CHECK(f.span_residual < 10.0 * f.legendrian_residual + 1e-12);
      CHECK(f.legendrian_residual < 10.0 * f.span_residual + 1e-12);
    }
  // and both are order one on the Clifford band control
  Chart band = clifford_band();
  BoundaryCurve edge = BoundaryCurve::u_edge(0.9, +1.0);
  for (int k = 0; k < 20; ++k) {
    BoundaryFrame f = boundary_frame(band, edge, uniform(0, 2 * M_PI));
    CHECK(f.legendrian_residual > 0.9);
    CHECK(f.span_residual > 0.9);
  }
}

TEST_CASE("contact angle profiles: free plane, capillary catenoid and cap") {
  ExampleSurface plane = plane_disk();
  AngleProfile pp = contact_angle_profile(plane.charts[0], plane.boundaries[0].curve, 40);
  CHECK(pp.capillary);
  CHECK(pp.free_boundary);

  ExampleSurface cb = catenoid_in_ball(2.0);
  AngleProfile pinner = contact_angle_profile(cb.charts[0], cb.boundaries[1].curve, 64);
  CHECK(pinner.capillary);
  CHECK_FALSE(pinner.free_boundary);
  CHECK(pinner.theta_std < 1e-8);
  CHECK(pinner.theta_mean == doctest::Approx(std::asin(std::sqrt(3.0) / 2.0)).epsilon(1e-10));
  AngleProfile pouter = contact_angle_profile(cb.charts[0], cb.boundaries[0].curve, 64);
  CHECK(pouter.theta_std < 1e-8);
  CHECK(pouter.theta_mean == doctest::Approx(M_PI - std::asin(std::sqrt(3.0) / 2.0)).epsilon(1e-10));

  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  AngleProfile pc = contact_angle_profile(cap.charts[0], cap.boundaries[0].curve, 64);
  CHECK(pc.capillary);
  CHECK(pc.theta_std < 1e-8);

  // non-Legendrian boundary is refused
  CHECK_THROWS_AS(contact_angle_profile(complex_line_disk(), BoundaryCurve::parameter_circle(1.0), 16),
                  std::domain_error);
}

TEST_CASE("Joachimsthal identity along capillary boundaries") {
  ExampleSurface plane = plane_disk();
  JoachimsthalSample zero = joachimsthal_residual(plane.charts[0], plane.boundaries[0].curve, 1.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.residual < 1e-12);

  ExampleSurface cb = catenoid_in_ball(2.0);
  for (const NamedBoundary& nb : cb.boundaries)
    for (int k = 0; k < 20; ++k) {
      JoachimsthalSample s = joachimsthal_residual(cb.charts[nb.chart], nb.curve, uniform(0, 2 * M_PI));
      CHECK(std::abs(s.lhs) < 1e-6);
      CHECK(std::abs(s.rhs) < 1e-6);
      CHECK(s.residual < 1e-6);
    }
  ExampleSurface cap = whitney_cap(std::sqrt(3.0));
  for (const NamedBoundary& nb : cap.boundaries)
    for (int k = 0; k < 20; ++k) {
      JoachimsthalSample s = joachimsthal_residual(cap.charts[nb.chart], nb.curve, uniform(0, 2 * M_PI));
      CHECK(std::abs(s.lhs) < 1e-6);
      CHECK(s.residual < 1e-6);
    }
}

TEST_CASE("boundary residuals are invariant under a fixed unitary rotation") {
  Mat4 U = u2_rotation(0.5, 0.9, -0.3, 0.7);
  ExampleSurface cb = catenoid_in_ball(2.0);
  Chart rot = transformed_chart(cb.charts[0], U, "rot");
  for (const NamedBoundary& nb : cb.boundaries)
    for (int k = 0; k < 20; ++k) {
      double s = uniform(0, 2 * M_PI);
      BoundaryFrame f0 = boundary_frame(cb.charts[nb.chart], nb.curve, s);
      BoundaryFrame f1 = boundary_frame(rot, nb.curve, s);
      CHECK(std::abs(f0.theta - f1.theta) < 1e-10);
      CHECK(std::abs(f0.legendrian_residual - f1.legendrian_residual) < 1e-10);
      CHECK(std::abs(f0.span_residual - f1.span_residual) < 1e-10);
    }
}
