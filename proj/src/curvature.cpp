#include "lagsurf/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagsurf {

namespace {
constexpr double kScaleFloor = 1e-12;
}

MetricData metric(const Jet& j) {
  if (j.order < 2) throw std::invalid_argument("metric: order-2 jet required");
  MetricData md;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) md.g[a][b] = dot(j.first(a), j.first(b));
  md.det = md.g[0][0] * md.g[1][1] - md.g[0][1] * md.g[1][0];
  if (md.det <= 0.0 || md.det < 1e-300) throw std::domain_error("metric: degenerate first fundamental form");
  md.sqrt_det = std::sqrt(md.det);
  md.ginv[0][0] = md.g[1][1] / md.det;
  md.ginv[1][1] = md.g[0][0] / md.det;
  md.ginv[0][1] = md.ginv[1][0] = -md.g[0][1] / md.det;
  // Gamma^k_ij = g^{km} <X_ij, X_m> (Levi-Civita of an immersed surface)
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) {
        double s = 0.0;
        for (int m = 0; m < 2; ++m) s += md.ginv[k][m] * dot(j.second(i, jj), j.first(m));
        md.gamma[k][i][jj] = s;
      }
  return md;
}

std::array<Vec4, 3> second_fundamental(const Jet& j) {
  MetricData md = metric(j);
  std::array<Vec4, 3> h;
  int slot = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      Vec4 tang;
      for (int m = 0; m < 2; ++m) tang += md.gamma[m][a][b] * j.first(m);
      h[slot++] = j.second(a, b) - tang;
    }
  return h;  // {h_uu, h_uv, h_vv}
}

double CubicTensor::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(a[i][j][k]));
  return m;
}

double CubicTensor::symmetry_defect() const {
  double scale = std::max(max_abs(), kScaleFloor);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        worst = std::max(worst, std::abs(a[i][j][k] - a[j][i][k]));
        worst = std::max(worst, std::abs(a[i][j][k] - a[i][k][j]));
        worst = std::max(worst, std::abs(a[i][j][k] - a[k][j][i]));
      }
  return worst / scale;
}

CubicTensor cubic_a(const Jet& j, double lagrangian_tol, bool enforce) {
  if (enforce && lagrangian_residual(j) > lagrangian_tol)
    throw std::domain_error("cubic_a: point is not Lagrangian within tolerance");
  auto h = second_fundamental(j);
  auto h_at = [&h](int a, int b) -> const Vec4& { return h[a + b]; };  // (0,0)->0,(0,1)/(1,0)->1,(1,1)->2
  CubicTensor t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) t.a[a][b][c] = dot(h_at(a, b), j_apply(j.first(c)));
  return t;
}

double cubic_norm(const CubicTensor& a, const MetricData& md) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n)
              s += a.a[i][j][k] * a.a[l][m][n] * md.ginv[i][l] * md.ginv[j][m] * md.ginv[k][n];
  return std::sqrt(std::max(s, 0.0));
}

MeanCurvature mean_curvature(const CubicTensor& a, const MetricData& md, const Jet& j) {
  MeanCurvature mc;
  for (int k = 0; k < 2; ++k) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) s += md.ginv[i][jj] * a.a[i][jj][k];
    mc.h_cov[k] = s;
  }
  for (int k = 0; k < 2; ++k) mc.h_up[k] = md.ginv[k][0] * mc.h_cov[0] + md.ginv[k][1] * mc.h_cov[1];
  mc.H = mc.h_up[0] * j_apply(j.first(0)) + mc.h_up[1] * j_apply(j.first(1));
  mc.norm_h = norm(mc.H);
  mc.norm_a = cubic_norm(a, md);
  mc.minimality_residual = mc.norm_h * std::sqrt(md.sqrt_det) / std::max(mc.norm_a, kScaleFloor);
  return mc;
}

CubicTensor trace_free_cubic(const CubicTensor& a, const MetricData& md, const MeanCurvature& mc) {
  CubicTensor t;
  t.u = a.u;
  t.v = a.v;
  const double c = 1.0 / 4.0;  // 1/(n+2), n = 2
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        t.a[i][j][k] = a.a[i][j][k] - c * (mc.h_cov[k] * md.g[i][j] + mc.h_cov[i] * md.g[j][k] + mc.h_cov[j] * md.g[i][k]);
  return t;
}

double trace_defect(const CubicTensor& abreve, const MetricData& md, double scale) {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += md.ginv[i][j] * abreve.a[i][j][k];
    worst = std::max(worst, std::abs(s));
  }
  return worst / std::max(scale, kScaleFloor);
}

double CovariantCubic::max_abs() const {
  double m = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(d[l][i][j][k]));
  return m;
}

namespace {

// Analytic evaluation from an order-3 jet: differentiate the Gauss formula.
CovariantCubic covariant_exact(const Jet& j) {
  MetricData md = metric(j);

  double dg[2][2][2];  // dg[l][a][b] = d_l g_ab
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) dg[l][a][b] = dot(j.second(a, l), j.first(b)) + dot(j.first(a), j.second(b, l));

  double dginv[2][2][2];  // d_l g^{ab} = -g^{ac} (d_l g_cd) g^{db}
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double s = 0.0;
        for (int c = 0; c < 2; ++c)
          for (int dd = 0; dd < 2; ++dd) s += md.ginv[a][c] * dg[l][c][dd] * md.ginv[dd][b];
        dginv[l][a][b] = -s;
      }

  double gamma1[2][2][2];   // first kind: <X_ij, X_m>
  double dgamma1[2][2][2][2];
  for (int m = 0; m < 2; ++m)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        gamma1[m][a][b] = dot(j.second(a, b), j.first(m));
        for (int l = 0; l < 2; ++l)
          dgamma1[l][m][a][b] = dot(j.third(a, b, l), j.first(m)) + dot(j.second(a, b), j.second(m, l));
      }

  double dgamma[2][2][2][2];  // d_l Gamma^k_ab
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double s = 0.0;
          for (int m = 0; m < 2; ++m) s += dginv[l][k][m] * gamma1[m][a][b] + md.ginv[k][m] * dgamma1[l][m][a][b];
          dgamma[l][k][a][b] = s;
        }

  Vec4 h[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Vec4 tang;
      for (int m = 0; m < 2; ++m) tang += md.gamma[m][a][b] * j.first(m);
      h[a][b] = j.second(a, b) - tang;
    }

  Vec4 dh[2][2][2];  // d_l h_ab = X_abl - (d_l Gamma^m_ab) X_m - Gamma^m_ab X_ml
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Vec4 s = j.third(a, b, l);
        for (int m = 0; m < 2; ++m) s -= dgamma[l][m][a][b] * j.first(m) + md.gamma[m][a][b] * j.second(m, l);
        dh[l][a][b] = s;
      }

  double A[2][2][2], dA[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        A[a][b][c] = dot(h[a][b], j_apply(j.first(c)));
        for (int l = 0; l < 2; ++l)
          dA[l][a][b][c] = dot(dh[l][a][b], j_apply(j.first(c))) + dot(h[a][b], j_apply(j.second(c, l)));
      }

  CovariantCubic out;
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          double s = dA[l][a][b][c];
          for (int m = 0; m < 2; ++m)
            s -= md.gamma[m][l][a] * A[m][b][c] + md.gamma[m][l][b] * A[a][m][c] + md.gamma[m][l][c] * A[a][b][m];
          out.d[l][a][b][c] = s;
        }

  // H_k,l = d_l (g^{ij} A_ijk) - Gamma^m_lk H_m
  double hcov[2];
  for (int k = 0; k < 2; ++k) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) s += md.ginv[i][jj] * A[i][jj][k];
    hcov[k] = s;
  }
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) {
      double s = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj) s += dginv[l][i][jj] * A[i][jj][k] + md.ginv[i][jj] * dA[l][i][jj][k];
      for (int m = 0; m < 2; ++m) s -= md.gamma[m][l][k] * hcov[m];
      out.h_d[l][k] = s;
    }
  return out;
}

CovariantCubic covariant_fd(const Chart& chart, double u, double v) {
  Jet j0 = jet(chart, u, v, 2);
  MetricData md = metric(j0);
  CubicTensor a0 = cubic_a(j0, 1e-6, false);

  // 5-point stencil on the raw component functions, step 1e-4 * axis extent
  double dA[2][2][2][2];
  double hu = 1e-4 * chart.domain.u_extent();
  double hv = 1e-4 * chart.domain.v_extent();
  for (int l = 0; l < 2; ++l) {
    double h = l == 0 ? hu : hv;
    CubicTensor s[4];
    const double off[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int q = 0; q < 4; ++q) {
      double uu = u + (l == 0 ? off[q] * h : 0.0);
      double vv = v + (l == 1 ? off[q] * h : 0.0);
      s[q] = cubic_a(jet(chart, uu, vv, 2), 1e-6, false);
    }
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj)
        for (int k = 0; k < 2; ++k)
          dA[l][i][jj][k] =
              (s[0].a[i][jj][k] - 8.0 * s[1].a[i][jj][k] + 8.0 * s[2].a[i][jj][k] - s[3].a[i][jj][k]) / (12.0 * h);
  }

  CovariantCubic out;
  out.fd_fallback = true;
  for (int l = 0; l < 2; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          double s = dA[l][a][b][c];
          for (int m = 0; m < 2; ++m)
            s -= md.gamma[m][l][a] * a0.a[m][b][c] + md.gamma[m][l][b] * a0.a[a][m][c] + md.gamma[m][l][c] * a0.a[a][b][m];
          out.d[l][a][b][c] = s;
        }

  // derivative of the metric for H_k,l (same stencil on g^{ij})
  double hcov[2];
  for (int k = 0; k < 2; ++k) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int jj = 0; jj < 2; ++jj) s += md.ginv[i][jj] * a0.a[i][jj][k];
    hcov[k] = s;
  }
  for (int l = 0; l < 2; ++l) {
    double h = l == 0 ? hu : hv;
    double hk[4][2];
    const double off[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int q = 0; q < 4; ++q) {
      double uu = u + (l == 0 ? off[q] * h : 0.0);
      double vv = v + (l == 1 ? off[q] * h : 0.0);
      Jet jq = jet(chart, uu, vv, 2);
      MetricData mq = metric(jq);
      CubicTensor aq = cubic_a(jq, 1e-6, false);
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int jj = 0; jj < 2; ++jj) s += mq.ginv[i][jj] * aq.a[i][jj][k];
        hk[q][k] = s;
      }
    }
    for (int k = 0; k < 2; ++k) {
      double s = (hk[0][k] - 8.0 * hk[1][k] + 8.0 * hk[2][k] - hk[3][k]) / (12.0 * h);
      for (int m = 0; m < 2; ++m) s -= md.gamma[m][l][k] * hcov[m];
      out.h_d[l][k] = s;
    }
  }
  return out;
}

}  // namespace

CovariantCubic covariant_derivative_a(const Chart& chart, double u, double v) {
  if (chart.has_exact_jets()) return covariant_exact(jet(chart, u, v, 3));
  return covariant_fd(chart, u, v);
}

double codazzi_symmetry_residual(const CovariantCubic& ca) {
  double scale = std::max(ca.max_abs(), kScaleFloor);
  double worst = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(ca.d[l][i][j][k] - ca.d[j][i][l][k]));
  return worst / scale;
}

double codazzi_contraction_residual(const Chart& chart, double u, double v) {
  Jet j = jet(chart, u, v, chart.has_exact_jets() ? 3 : 2);
  MetricData md = metric(j);
  CovariantCubic ca = covariant_derivative_a(chart, u, v);
  double scale = kScaleFloor;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) scale = std::max(scale, std::abs(ca.h_d[l][k]));
  scale = std::max(scale, ca.max_abs());
  double worst = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      double rhs = 0.0;  // g^{ij} A_ilk,j
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj) rhs += md.ginv[i][jj] * ca.d[jj][i][l][k];
      worst = std::max(worst, std::abs(ca.h_d[l][k] - rhs));
    }
  return worst / scale;
}

namespace {

double inv_norm2_rank2(const double t[2][2], const MetricData& md) {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += md.ginv[i][a] * md.ginv[j][b] * t[i][j] * t[a][b];
  return std::max(s, 0.0);
}

double inv_norm_rank4(const CovariantCubic& ca, const MetricData& md) {
  double s = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int lp = 0; lp < 2; ++lp)
            for (int ip = 0; ip < 2; ++ip)
              for (int jp = 0; jp < 2; ++jp)
                for (int kp = 0; kp < 2; ++kp)
                  s += ca.d[l][i][j][k] * ca.d[lp][ip][jp][kp] * md.ginv[l][lp] * md.ginv[i][ip] * md.ginv[j][jp] *
                       md.ginv[k][kp];
  return std::sqrt(std::max(s, 0.0));
}

}  // namespace

MaslovReport conformal_maslov_residual(const Chart& chart, double u, double v) {
  MetricData md = metric(jet(chart, u, v, 2));
  CovariantCubic ca = covariant_derivative_a(chart, u, v);

  // covariant derivative of the trace-free part:
  // Abreve_kij,l = A_kij,l - (H_k,l g_ij + H_i,l g_jk + H_j,l g_ik)/4
  double dab[2][2][2][2];
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          dab[l][k][i][jj] = ca.d[l][k][i][jj] - 0.25 * (ca.h_d[l][k] * md.g[i][jj] + ca.h_d[l][i] * md.g[jj][k] +
                                                         ca.h_d[l][jj] * md.g[i][k]);

  double div_h = 0.0;  // g^{kl} H_k,l
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) div_h += md.ginv[k][l] * ca.h_d[l][k];

  double lhs[2][2], rhs[2][2], diff[2][2], maslov[2][2];
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) {
      double dstar = 0.0;  // (div* Abreve)_ij = -g^{kl} Abreve_kij,l
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) dstar -= md.ginv[k][l] * dab[l][k][i][jj];
      lhs[i][jj] = 4.0 * dstar;
      rhs[i][jj] = div_h * md.g[i][jj] - 2.0 * ca.h_d[i][jj];  // H_j,i with derivative index first
      diff[i][jj] = lhs[i][jj] - rhs[i][jj];
      maslov[i][jj] = rhs[i][jj];
    }

  double sym[2][2], antisym[2][2];
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj) {
      sym[i][jj] = 0.5 * (ca.h_d[i][jj] + ca.h_d[jj][i]);
      antisym[i][jj] = 0.5 * (ca.h_d[i][jj] - ca.h_d[jj][i]);
    }

  double scale = std::max(inv_norm_rank4(ca, md), kScaleFloor);
  MaslovReport rep;
  rep.identity_residual = std::sqrt(inv_norm2_rank2(diff, md)) / scale;
  rep.maslov_residual = std::sqrt(inv_norm2_rank2(maslov, md)) / scale;
  rep.grad_h_symmetric = std::sqrt(inv_norm2_rank2(sym, md));
  rep.grad_h_antisymmetric = std::sqrt(inv_norm2_rank2(antisym, md));
  return rep;
}

double weingarten_residual(const Jet& j) {
  auto h = second_fundamental(j);
  auto h_at = [&h](int a, int b) -> const Vec4& { return h[a + b]; };
  double scale = kScaleFloor;
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int k = 0; k < 2; ++k) {
        double lhs = dot(h_at(i, jj), j_apply(j.first(k)));
        double rhs = dot(j_apply(j.first(jj)), h_at(i, k));
        scale = std::max(scale, std::abs(lhs));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst / scale;
}

}  // namespace lagsurf
