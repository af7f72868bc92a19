#include "lagsurf/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lagsurf/hopf.hpp"

namespace lagsurf {

namespace {
constexpr double kAreaFloor = 1e-12;
}

int DiskMesh::vid(int ring, int sector) const {
  if (ring == 0) return 0;
  int s = sector % nphi;
  if (s < 0) s += nphi;
  return 1 + (ring - 1) * nphi + s;
}

namespace {

void triangulate(DiskMesh& m) {
  m.tris.clear();
  for (int j = 0; j < m.nphi; ++j) m.tris.push_back({0, m.vid(1, j), m.vid(1, j + 1)});
  for (int i = 1; i < m.nr; ++i)
    for (int j = 0; j < m.nphi; ++j) {
      int a = m.vid(i, j), b = m.vid(i, j + 1), c = m.vid(i + 1, j), d = m.vid(i + 1, j + 1);
      m.tris.push_back({a, c, d});
      m.tris.push_back({a, d, b});
    }
  m.boundary.clear();
  for (int j = 0; j < m.nphi; ++j) m.boundary.push_back(m.vid(m.nr, j));
}

double tri_area(const Vec4& a, const Vec4& b) {
  double g = norm2(a) * norm2(b) - dot(a, b) * dot(a, b);
  return 0.5 * std::sqrt(std::max(g, 0.0));
}

}  // namespace

DiskMesh build_mesh(int nr, int nphi, const Chart& chart) {
  if (nr < 2) throw std::invalid_argument("build_mesh: nr must be at least 2");
  if (nphi < 8) throw std::invalid_argument("build_mesh: nphi must be at least 8");
  bool polar = chart.domain.kind == DomainKind::PolarDisk;
  if (!polar && chart.domain.kind != DomainKind::Rectangle)
    throw std::invalid_argument("build_mesh: initial chart is not disk-type");

  DiskMesh m;
  m.nr = nr;
  m.nphi = nphi;
  m.pos.resize(1 + nr * nphi);
  auto sample = [&](double rho, double phi) {
    return polar ? chart.eval(std::max(rho, 1e-12) * chart.domain.u1, phi)
                 : chart.eval(rho * std::cos(phi), rho * std::sin(phi));
  };
  m.pos[0] = sample(0.0, 0.0);
  for (int i = 1; i <= nr; ++i)
    for (int j = 0; j < nphi; ++j) m.pos[m.vid(i, j)] = sample(double(i) / nr, 2.0 * M_PI * j / nphi);
  triangulate(m);
  for (int v : m.boundary) m.pos[v] = normalized(m.pos[v]);

  for (auto& t : m.tris)
    if (tri_area(m.pos[t[1]] - m.pos[t[0]], m.pos[t[2]] - m.pos[t[0]]) < kAreaFloor)
      throw std::invalid_argument("build_mesh: degenerate triangle in the initial mesh");
  return m;
}

namespace {

// discrete outward conormal at boundary vertex (nr, j): boundary tangent from
// the two ring neighbours, inward direction from the interior neighbours
Vec4 discrete_conormal(const DiskMesh& m, int j) {
  Vec4 p = m.pos[m.vid(m.nr, j)];
  Vec4 t = normalized(m.pos[m.vid(m.nr, j + 1)] - m.pos[m.vid(m.nr, j - 1)]);
  Vec4 in = 0.5 * (m.pos[m.vid(m.nr - 1, j)] + m.pos[m.vid(m.nr - 1, j - 1)]) - p;
  Vec4 w = in - dot(in, t) * t;
  return -normalized(w);
}

}  // namespace

EnergyBreakdown energy(const DiskMesh& mesh, double lambda_omega, double lambda_theta,
                       std::optional<double> target_theta, std::vector<Vec4>* grad, double lambda_uniform,
                       double lambda_center) {
  EnergyBreakdown e;
  if (grad) {
    grad->assign(mesh.pos.size(), Vec4());
  }
  for (const auto& t : mesh.tris) {
    const Vec4& q0 = mesh.pos[t[0]];
    Vec4 a = mesh.pos[t[1]] - q0;
    Vec4 b = mesh.pos[t[2]] - q0;
    double area = tri_area(a, b);
    e.area += area;
    if (area < kAreaFloor) {
      ++e.degenerate_triangles;  // subgradient skip
      continue;
    }
    double w = omega(a, b);
    e.omega_penalty += lambda_omega * w * w / (2.0 * area);
    if (grad) {
      Vec4 da = (norm2(b) * a - dot(a, b) * b) / (4.0 * area);
      Vec4 db = (norm2(a) * b - dot(a, b) * a) / (4.0 * area);
      // d/da [area + lw w^2/(2 area)]; grad_a omega = -J b, grad_b omega = J a
      double pref = lambda_omega * w / area;
      double apref = 1.0 - lambda_omega * w * w / (2.0 * area * area);
      Vec4 ga = apref * da - pref * j_apply(b);
      Vec4 gb = apref * db + pref * j_apply(a);
      (*grad)[t[1]] += ga;
      (*grad)[t[2]] += gb;
      (*grad)[t[0]] -= ga + gb;
    }
  }

  if (lambda_theta > 0.0) {
    double tt = target_theta.value_or(0.5 * M_PI);
    double st = std::sin(tt), ct = std::cos(tt);
    for (int j = 0; j < mesh.nphi; ++j) {
      // per boundary edge (b1,b2) with opposite vertex q of its unique triangle
      int i1 = mesh.vid(mesh.nr, j), i2 = mesh.vid(mesh.nr, j + 1), iq = mesh.vid(mesh.nr - 1, j);
      const Vec4 &b1 = mesh.pos[i1], &b2 = mesh.pos[i2], &q = mesh.pos[iq];
      Vec4 eb = b2 - b1, wq = q - b1, mvec = b1 + b2;
      double ee = norm2(eb);
      double beta = dot(wq, eb) / ee;
      Vec4 cvec = wq - beta * eb;
      double cn = norm(cvec);
      if (cn < 1e-12) {
        ++e.degenerate_triangles;
        continue;
      }
      Vec4 mu = -1.0 * (cvec / cn);
      Vec4 N = normalized(mvec);
      Vec4 JN = j_apply(N);
      double rn = dot(mu, N) - st, rj = dot(mu, JN) - ct;
      e.theta_penalty += lambda_theta * (rn * rn + rj * rj);
      if (grad) {
        Vec4 v1 = 2.0 * lambda_theta * (rn * N + rj * JN);              // coefficient of d mu
        Vec4 v2 = 2.0 * lambda_theta * (rn * mu - rj * j_apply(mu));    // coefficient of d N
        Vec4 ac = -1.0 / cn * (v1 - dot(v1, cvec / cn) * (cvec / cn));  // coefficient of d c
        Vec4 am = (v2 - dot(v2, N) * N) / norm(mvec);                   // coefficient of d m
        Vec4 gw = ac - (dot(ac, eb) / ee) * eb;
        Vec4 ge = -beta * ac - (dot(ac, eb) / ee) * (wq - 2.0 * beta * eb);
        (*grad)[iq] += gw;
        (*grad)[i1] += -1.0 * gw - ge + am;
        (*grad)[i2] += ge + am;
      }
    }
  }

  if (lambda_uniform > 0.0) {
    double chord0 = 2.0 * std::sin(M_PI / mesh.nphi);
    for (int j = 0; j < mesh.nphi; ++j) {
      int i1 = mesh.vid(mesh.nr, j), i2 = mesh.vid(mesh.nr, j + 1);
      Vec4 eb = mesh.pos[i2] - mesh.pos[i1];
      double len = norm(eb);
      double dev = len - chord0;
      e.uniform_penalty += lambda_uniform * dev * dev;
      if (grad && len > 1e-12) {
        Vec4 g = (2.0 * lambda_uniform * dev / len) * eb;
        (*grad)[i2] += g;
        (*grad)[i1] -= g;
      }
    }
  }

  if (lambda_center > 0.0) {
    Vec4 sum;
    for (const Vec4& p : mesh.pos) sum += p;
    double inv_n = 1.0 / static_cast<double>(mesh.pos.size());
    e.center_penalty = lambda_center * norm2(sum) * inv_n;
    if (grad) {
      Vec4 g = (2.0 * lambda_center * inv_n) * sum;
      for (Vec4& gv : *grad) gv += g;
    }
  }

  e.total = e.area + e.omega_penalty + e.theta_penalty + e.uniform_penalty + e.center_penalty;
  return e;
}

double mesh_max_omega_residual(const DiskMesh& mesh) {
  double worst = 0.0;
  for (const auto& t : mesh.tris) {
    Vec4 a = mesh.pos[t[1]] - mesh.pos[t[0]];
    Vec4 b = mesh.pos[t[2]] - mesh.pos[t[0]];
    worst = std::max(worst, std::abs(omega(a, b)) / std::max(norm(a) * norm(b), 1e-300));
  }
  return worst;
}

double boundary_conormal_deviation(const DiskMesh& mesh) {
  double worst = 0.0;
  for (int j = 0; j < mesh.nphi; ++j) {
    Vec4 mu = discrete_conormal(mesh, j);
    Vec4 N = normalized(mesh.pos[mesh.vid(mesh.nr, j)]);
    worst = std::max(worst, std::abs(1.0 - dot(mu, N)));
  }
  return worst;
}

double boundary_radius_deviation(const DiskMesh& mesh) {
  double worst = 0.0;
  for (int v : mesh.boundary) worst = std::max(worst, std::abs(norm(mesh.pos[v]) - 1.0));
  return worst;
}

FlatnessMetrics flatness_metrics(const DiskMesh& mesh) {
  FlatnessMetrics fm;
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  for (const Vec4& p : mesh.pos) {
    Eigen::Vector4d x(p[0], p[1], p[2], p[3]);
    M += x * x.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("flatness_metrics: eigen decomposition failed");
  Eigen::Vector4d ev = es.eigenvalues();  // ascending
  double top = ev(3) + ev(2), rest = std::max(ev(1) + ev(0), 0.0);
  if (top < 1e-300) throw std::domain_error("flatness_metrics: rank-deficient moment matrix");
  // eigenvalues below the solver's resolution read as exactly flat
  if (rest < 8.0 * std::numeric_limits<double>::epsilon() * top) rest = 0.0;
  fm.plane_fit_residual = std::sqrt(rest / top);
  Vec4 b1(es.eigenvectors()(0, 3), es.eigenvectors()(1, 3), es.eigenvectors()(2, 3), es.eigenvectors()(3, 3));
  Vec4 b2(es.eigenvectors()(0, 2), es.eigenvectors()(1, 2), es.eigenvectors()(2, 2), es.eigenvectors()(3, 2));
  fm.plane_lagrangian_defect = std::abs(omega(b1, b2));

  // local quadratic fits: second-fundamental-form magnitude at interior vertices
  double worst = 0.0;
  for (int ring = 0; ring < mesh.nr; ++ring) {
    int count = ring == 0 ? 1 : mesh.nphi;
    for (int j = 0; j < count; ++j) {
      int v = mesh.vid(ring, j);
      std::vector<int> nb;
      if (ring == 0) {
        for (int k = 0; k < mesh.nphi; ++k) nb.push_back(mesh.vid(1, k));
        if (mesh.nr >= 2)
          for (int k = 0; k < mesh.nphi; k += std::max(1, mesh.nphi / 8)) nb.push_back(mesh.vid(2, k));
      } else {
        nb = {mesh.vid(ring, j - 1), mesh.vid(ring, j + 1), mesh.vid(ring + 1, j), mesh.vid(ring + 1, j - 1),
              mesh.vid(ring + 1, j + 1)};
        if (ring >= 2) {
          nb.push_back(mesh.vid(ring - 1, j));
          nb.push_back(mesh.vid(ring - 1, j - 1));
          nb.push_back(mesh.vid(ring - 1, j + 1));
        } else {
          nb.push_back(0);
        }
      }
      // local tangent plane by PCA of the neighbour offsets
      Eigen::MatrixXd D(static_cast<int>(nb.size()), 4);
      for (size_t r = 0; r < nb.size(); ++r) {
        Vec4 d = mesh.pos[nb[r]] - mesh.pos[v];
        for (int c = 0; c < 4; ++c) D(static_cast<int>(r), c) = d[c];
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
      Eigen::Vector4d e1 = svd.matrixV().col(0), e2 = svd.matrixV().col(1);
      Eigen::Vector4d n1 = svd.matrixV().col(2), n2 = svd.matrixV().col(3);
      // fit q(x,y) = c0 + c1 x + c2 y + c3 x^2/2 + c4 xy + c5 y^2/2 per normal direction
      Eigen::MatrixXd B(static_cast<int>(nb.size()) + 1, 6);
      Eigen::MatrixXd rhs(static_cast<int>(nb.size()) + 1, 2);
      auto fill_row = [&](int row, const Vec4& d) {
        Eigen::Vector4d dv(d[0], d[1], d[2], d[3]);
        double x = dv.dot(e1), y = dv.dot(e2);
        B(row, 0) = 1.0;
        B(row, 1) = x;
        B(row, 2) = y;
        B(row, 3) = 0.5 * x * x;
        B(row, 4) = x * y;
        B(row, 5) = 0.5 * y * y;
        rhs(row, 0) = dv.dot(n1);
        rhs(row, 1) = dv.dot(n2);
      };
      fill_row(0, Vec4());
      for (size_t r = 0; r < nb.size(); ++r) fill_row(static_cast<int>(r) + 1, mesh.pos[nb[r]] - mesh.pos[v]);
      Eigen::MatrixXd coef = B.colPivHouseholderQr().solve(rhs);
      double s = 0.0;
      for (int c = 3; c < 6; ++c) {
        double mult = (c == 4) ? 2.0 : 1.0;  // off-diagonal appears twice
        s += mult * (coef(c, 0) * coef(c, 0) + coef(c, 1) * coef(c, 1));
      }
      worst = std::max(worst, std::sqrt(s));
    }
  }
  fm.discrete_a_norm = worst;
  return fm;
}

Chart fitted_chart(const DiskMesh& mesh, int degree) {
  int nmono = (degree + 1) * (degree + 2) / 2;
  int nv = static_cast<int>(mesh.pos.size());
  if (nv < nmono) throw std::invalid_argument("fitted_chart: not enough vertices for the requested degree");
  std::vector<std::pair<int, int>> mono;
  for (int d = 0; d <= degree; ++d)
    for (int i = d; i >= 0; --i) mono.emplace_back(i, d - i);

  Eigen::MatrixXd B(nv, nmono);
  Eigen::MatrixXd rhs(nv, 4);
  auto param_of = [&mesh](int ring, int j) {
    double rho = double(ring) / mesh.nr;
    double phi = 2.0 * M_PI * j / mesh.nphi;
    return std::make_pair(rho * std::cos(phi), rho * std::sin(phi));
  };
  int row = 0;
  auto add_row = [&](double u, double v, const Vec4& p) {
    for (int k = 0; k < nmono; ++k) B(row, k) = std::pow(u, mono[k].first) * std::pow(v, mono[k].second);
    for (int c = 0; c < 4; ++c) rhs(row, c) = p[c];
    ++row;
  };
  add_row(0.0, 0.0, mesh.pos[0]);
  for (int i = 1; i <= mesh.nr; ++i)
    for (int j = 0; j < mesh.nphi; ++j) {
      auto [u, v] = param_of(i, j);
      add_row(u, v, mesh.pos[mesh.vid(i, j)]);
    }
  Eigen::MatrixXd coef = B.colPivHouseholderQr().solve(rhs);  // nmono x 4

  std::vector<std::array<double, 4>> cs(nmono);
  for (int k = 0; k < nmono; ++k)
    for (int c = 0; c < 4; ++c) cs[k][c] = coef(k, c);

  auto evalf = [cs, mono](auto u, auto v) {
    using T = decltype(u);
    std::array<T, 4> out{T(0.0), T(0.0), T(0.0), T(0.0)};
    for (size_t k = 0; k < cs.size(); ++k) {
      T m = pow_int(u, mono[k].first) * pow_int(v, mono[k].second);
      for (int c = 0; c < 4; ++c) out[c] += cs[k][c] * m;
    }
    return out;
  };
  return make_analytic_chart("mesh-fit", ChartDomain::rectangle(-1.0, 1.0, -1.0, 1.0), evalf);
}

double boundary_im_diagnostic(const DiskMesh& mesh, int samples, int degree) {
  Chart fit = fitted_chart(mesh, degree);
  double worst = 0.0;
  for (const PolarCubicSample& s : polar_boundary_diagnostic(fit, samples))
    worst = std::max(worst, std::abs(s.im_8z3phi));
  return worst;
}

namespace {

void project_boundary(DiskMesh& m) {
  for (int v : m.boundary) m.pos[v] = normalized(m.pos[v]);
}

// gradient with the boundary components projected to the sphere tangent
double projected_grad_norm(const DiskMesh& m, std::vector<Vec4>& g) {
  for (int v : m.boundary) {
    Vec4 n = normalized(m.pos[v]);
    g[v] -= dot(g[v], n) * n;
  }
  double s = 0.0;
  for (const Vec4& gv : g) s = std::max(s, norm(gv));
  return s;
}

}  // namespace

SolveResult minimize(DiskMesh mesh, const SolverConfig& config) {
  if (config.max_iters < 0) throw std::invalid_argument("minimize: max_iters must be non-negative");
  for (size_t i = 1; i < config.lambda_schedule.size(); ++i)
    if (config.lambda_schedule[i] < config.lambda_schedule[i - 1])
      throw std::invalid_argument("minimize: lambda schedule must be non-decreasing");

  auto t_start = std::chrono::steady_clock::now();
  SolveResult res;
  project_boundary(mesh);

  const size_t n = mesh.pos.size();
  std::vector<Vec4> grad(n), dir(n), trial(n), prev_pos, prev_grad;
  int iter = 0;
  bool converged = false;
  double gnorm = 0.0;

  std::vector<double> schedule = config.lambda_schedule;
  if (schedule.empty()) schedule.push_back(0.0);

  auto eval_energy = [&](const DiskMesh& m, double lw, std::vector<Vec4>* g) {
    return energy(m, lw, config.lambda_theta, config.target_theta, g, config.lambda_uniform, config.lambda_center);
  };

  // projected L-BFGS with Armijo backtracking (two-loop recursion)
  const int kMem = 10;
  std::vector<std::vector<Vec4>> mem_s, mem_y;
  std::vector<double> mem_rho;

  auto vdot = [](const std::vector<Vec4>& a, const std::vector<Vec4>& b) {
    double r = 0.0;
    for (size_t i = 0; i < a.size(); ++i) r += dot(a[i], b[i]);
    return r;
  };

  for (size_t stage = 0; stage < schedule.size(); ++stage) {
    double lw = schedule[stage];
    bool final_stage = stage + 1 == schedule.size();
    double stage_tol = final_stage ? config.grad_tol : std::max(config.grad_tol, 1e-6);
    mem_s.clear();
    mem_y.clear();
    mem_rho.clear();
    prev_pos.clear();

    EnergyBreakdown eb = eval_energy(mesh, lw, &grad);
    gnorm = projected_grad_norm(mesh, grad);
    res.stage_offsets.push_back(static_cast<int>(res.energy_history.size()));
    res.energy_history.push_back(eb.total);

    while (iter < config.max_iters) {
      if (gnorm < stage_tol) {
        converged = true;
        break;
      }
      // two-loop recursion on the projected gradient
      dir = grad;
      std::vector<double> alpha_mem(mem_s.size());
      for (int k = static_cast<int>(mem_s.size()) - 1; k >= 0; --k) {
        alpha_mem[k] = mem_rho[k] * vdot(mem_s[k], dir);
        for (size_t i = 0; i < n; ++i) dir[i] -= alpha_mem[k] * mem_y[k][i];
      }
      if (!mem_s.empty()) {
        double gamma = 1.0 / (mem_rho.back() * vdot(mem_y.back(), mem_y.back()));
        for (auto& d : dir) d *= gamma;
      }
      for (size_t k = 0; k < mem_s.size(); ++k) {
        double beta = mem_rho[k] * vdot(mem_y[k], dir);
        for (size_t i = 0; i < n; ++i) dir[i] += (alpha_mem[k] - beta) * mem_s[k][i];
      }
      for (auto& d : dir) d = -1.0 * d;

      double slope = vdot(grad, dir);
      if (!(slope < 0.0)) {  // not a descent direction: reset to steepest descent
        mem_s.clear();
        mem_y.clear();
        mem_rho.clear();
        dir = grad;
        for (auto& d : dir) d = -1.0 * d;
        slope = -vdot(grad, grad);
      }

      double e0 = eval_energy(mesh, lw, nullptr).total;
      bool accepted = false;
      double dnorm = 0.0;
      for (const Vec4& d : dir) dnorm = std::max(dnorm, norm(d));
      double alpha = std::min(1.0, config.max_vertex_step / std::max(dnorm, 1e-12));
      for (int ls = 0; ls < 60; ++ls) {
        for (size_t i = 0; i < n; ++i) trial[i] = mesh.pos[i] + alpha * dir[i];
        for (int v : mesh.boundary) trial[v] = normalized(trial[v]);
        std::swap(mesh.pos, trial);
        double e1 = eval_energy(mesh, lw, nullptr).total;
        if (e1 <= e0 + config.ls_c1 * alpha * slope + 1e-15 * std::abs(e0)) {
          prev_pos = trial;  // previous accepted position (swapped out)
          prev_grad = grad;
          res.energy_history.push_back(e1);
          accepted = true;
          break;
        }
        std::swap(mesh.pos, trial);
        alpha *= config.ls_shrink;
      }
      ++iter;
      if (!accepted) break;  // line search exhausted: gradient at noise level

      eval_energy(mesh, lw, &grad);
      gnorm = projected_grad_norm(mesh, grad);

      std::vector<Vec4> sk(n), yk(n);
      for (size_t i = 0; i < n; ++i) {
        sk[i] = mesh.pos[i] - prev_pos[i];
        yk[i] = grad[i] - prev_grad[i];
      }
      double sy = vdot(sk, yk);
      if (sy > 1e-14 * std::sqrt(vdot(sk, sk) * vdot(yk, yk))) {
        mem_s.push_back(std::move(sk));
        mem_y.push_back(std::move(yk));
        mem_rho.push_back(1.0 / sy);
        if (static_cast<int>(mem_s.size()) > kMem) {
          mem_s.erase(mem_s.begin());
          mem_y.erase(mem_y.begin());
          mem_rho.erase(mem_rho.begin());
        }
      }
    }
    if (!final_stage) converged = false;
  }

  res.diag.iterations = iter;
  res.diag.converged = converged || gnorm < config.grad_tol;
  res.diag.grad_norm = gnorm;
  res.diag.energy = eval_energy(mesh, schedule.back(), nullptr).total;
  res.diag.max_omega_residual = mesh_max_omega_residual(mesh);
  FlatnessMetrics fm = flatness_metrics(mesh);
  res.diag.plane_fit_residual = fm.plane_fit_residual;
  res.diag.plane_lagrangian_defect = fm.plane_lagrangian_defect;
  res.diag.discrete_a_norm = fm.discrete_a_norm;
  res.diag.boundary_mu_dot_n_dev = boundary_conormal_deviation(mesh);
  res.diag.boundary_radius_dev = boundary_radius_deviation(mesh);
  res.diag.boundary_im_diag = boundary_im_diagnostic(mesh);
  res.diag.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  res.mesh = std::move(mesh);
  return res;
}

DiskMesh perturbed_disk_mesh(int nr, int nphi, double amplitude, int seed) {
  // deterministic low-mode bump coefficients from the seed (engine output used
  // directly so the stream is identical across standard library versions)
  std::mt19937 eng(static_cast<unsigned>(seed));
  auto unit = [&eng]() { return (static_cast<double>(eng()) / 4294967296.0) * 2.0 - 1.0; };
  std::array<double, 4> c1, c2, p1, p2;
  for (int m = 0; m < 4; ++m) {
    c1[m] = unit();
    c2[m] = unit();
    p1[m] = M_PI * unit();
    p2[m] = M_PI * unit();
  }
  auto eval = [=](double u, double v) {
    double rho2 = u * u + v * v;
    double phi = std::atan2(v, u);
    double bump = 1.0 - rho2;  // vanishes on the boundary circle
    double b1 = 0.0, b2 = 0.0;
    for (int m = 0; m < 4; ++m) {
      double radial = std::pow(std::sqrt(rho2), m);
      b1 += c1[m] * radial * std::cos(m * phi + p1[m]);
      b2 += c2[m] * radial * std::cos(m * phi + p2[m]);
    }
    return Vec4(u, v, amplitude * bump * b1, amplitude * bump * b2);
  };
  Chart ch = make_numeric_chart("perturbed-equatorial-disk", ChartDomain::rectangle(-1.0, 1.0, -1.0, 1.0), eval);
  return build_mesh(nr, nphi, ch);
}

}  // namespace lagsurf
