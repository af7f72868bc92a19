#pragma once

#include <array>

#include "lagsurf/chart.hpp"

namespace lagsurf {

// First fundamental form and Levi-Civita data in the chart coordinate basis.
struct MetricData {
  double g[2][2];
  double ginv[2][2];
  double gamma[2][2][2];  // gamma[k][i][j] = Gamma^k_ij
  double det = 0.0;
  double sqrt_det = 0.0;
};

MetricData metric(const Jet& j);  // needs an order >= 2 jet

// Normal-valued second fundamental form h_ij = (X_ij)^perp via the Gauss formula.
std::array<Vec4, 3> second_fundamental(const Jet& j);  // {h_uu, h_uv, h_vv}

// Coordinate-basis components A_ijk = <h(X_i, X_j), J X_k> of the cubic form.
// Fully symmetric exactly when the immersion is Lagrangian at the point;
// with enforce set, a Lagrangian residual above lagrangian_tol throws.
struct CubicTensor {
  double a[2][2][2] = {};
  double u = 0.0, v = 0.0;

  double max_abs() const;
  // max over index permutations of |A_ijk - A_sigma(ijk)|, relative
  double symmetry_defect() const;
};

CubicTensor cubic_a(const Jet& j, double lagrangian_tol = 1e-6, bool enforce = true);

// Mean curvature data derived from A and g:
// covariant components H_k = g^{ij} A_ijk, H = H^k J X_k.
struct MeanCurvature {
  Vec4 H;
  double h_cov[2];
  double h_up[2];
  double norm_h = 0.0;
  double norm_a = 0.0;             // invariant norm of A
  double minimality_residual = 0;  // |H| (det g)^{1/4} / max(|A|, floor)
};

MeanCurvature mean_curvature(const CubicTensor& a, const MetricData& md, const Jet& j);

// Trace-free part: A_ijk - (H_k g_ij + H_i g_jk + H_j g_ik)/(n+2), n = 2.
CubicTensor trace_free_cubic(const CubicTensor& a, const MetricData& md, const MeanCurvature& mc);

// max_k |g^{ij} Abreve_ijk| relative to max(|A|, floor)
double trace_defect(const CubicTensor& abreve, const MetricData& md, double scale);

// invariant norm sqrt(A_ijk A_lmn g^il g^jm g^kn)
double cubic_norm(const CubicTensor& a, const MetricData& md);

// Covariant derivative A_ijk,l in the chart coordinate basis. Exact jets give
// an analytic evaluation; charts without exact jets fall back to a 5-point
// stencil on the component functions and set fd_fallback.
struct CovariantCubic {
  double d[2][2][2][2] = {};  // d[l][i][j][k] = A_ijk,l
  double h_d[2][2] = {};      // h_d[l][k] = H_k,l (covariant derivative of H_k)
  double max_abs() const;
  bool fd_fallback = false;
};

CovariantCubic covariant_derivative_a(const Chart& chart, double u, double v);

// max |A_ijk,l - A_ilk,j| relative to the scale of the derivative tensor
double codazzi_symmetry_residual(const CovariantCubic& ca);

// componentwise residual of H_k,l = g^{ij} A_ilk,j (contracted Codazzi)
double codazzi_contraction_residual(const Chart& chart, double u, double v);

// Residuals around the divergence identity for the trace-free cubic:
//   identity_residual: |(n+2)(div* Abreve)_ij - (div g_ij - n H_j,i)|, n = 2,
//     which vanishes for every Lagrangian immersion;
//   maslov_residual:   |div g_ij - n H_j,i|, which vanishes exactly on
//     immersions with conformal Maslov form.
// Both are normalized by the invariant norm of the full derivative tensor.
struct MaslovReport {
  double identity_residual = 0.0;
  double maslov_residual = 0.0;
  double grad_h_symmetric = 0.0;      // invariant norm of sym(H_j,i)
  double grad_h_antisymmetric = 0.0;  // invariant norm of antisym(H_j,i)
};

MaslovReport conformal_maslov_residual(const Chart& chart, double u, double v);

// max |<h(X_i,X_j), J X_k> - <J X_j, h(X_i,X_k)>| relative (Weingarten symmetry)
double weingarten_residual(const Jet& j);

}  // namespace lagsurf
