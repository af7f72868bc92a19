#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lagsurf/chart.hpp"

namespace lagsurf {

// Polar triangulated disk: a shared center vertex, nr rings of nphi sectors,
// fan triangles around the center and split quads in between. Vertex 0 is the
// center; vertex of ring i (1-based) and sector j is 1 + (i-1)*nphi + j.
struct DiskMesh {
  int nr = 0, nphi = 0;
  std::vector<Vec4> pos;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> boundary;  // ring nr, in sector order

  int vid(int ring, int sector) const;
  bool is_boundary(int v) const { return v >= 1 + (nr - 1) * nphi; }
};

// Samples the vertices from a disk-type chart (PolarDisk parameters, or a
// Cartesian chart evaluated at rho*(cos, sin)) and projects the boundary
// ring onto the unit sphere. Requires nr >= 2 and nphi >= 8.
DiskMesh build_mesh(int nr, int nphi, const Chart& disk_chart);

// The equatorial disk is a saddle of bare area under the sphere constraint
// (translating it along a normal produces smaller spherical caps), so the
// angle penalty is kept on by default: free boundary means target pi/2.
struct SolverConfig {
  int nr = 16, nphi = 48;
  // Non-decreasing continuation weights for the Lagrangian penalty. All
  // stages share the same exact minimizer (every penalty vanishes on the
  // flat disk), so the default stops at 100: the 1000 stage only degrades
  // the conditioning of the final polish.
  std::vector<double> lambda_schedule{10.0, 100.0};
  double lambda_theta = 1.0;
  std::optional<double> target_theta;  // nullopt = free boundary (angle target pi/2)
  // Boundary chord regularizer sum (|b_{j+1} - b_j| - 2 sin(pi/nphi))^2.
  // The discrete area functional rewards both clustering the boundary ring
  // and sliding it down the sphere towards a collapsing cone (whose angle
  // and omega penalties vanish); in the continuum that collapse is blocked
  // by the length bound on closed Legendrian curves. Pinning chords to
  // their great-circle value is the discrete stand-in for that barrier and
  // leaves the flat disk an exact critical point.
  double lambda_uniform = 1.0;
  // Centering term lambda_center * |sum_v p_v|^2 / #vertices. The normal
  // translations of the equatorial disk are negative modes of free-boundary
  // area (a translated disk spans a smaller cap), so descent alone cannot
  // stay at the critical point; penalizing the centroid removes exactly that
  // two-dimensional unstable subspace and vanishes, with zero gradient, on
  // every centered configuration.
  double lambda_center = 10.0;
  int max_iters = 5000;
  double grad_tol = 1e-10;
  double amplitude = 0.05;
  int seed = 7;
  // line search
  double ls_shrink = 0.5;
  double ls_c1 = 1e-4;
  double max_vertex_step = 0.05;  // per-iteration displacement cap (keeps the iteration local)
};

struct EnergyBreakdown {
  double total = 0.0;
  double area = 0.0;
  double omega_penalty = 0.0;
  double theta_penalty = 0.0;
  double uniform_penalty = 0.0;
  double center_penalty = 0.0;
  int degenerate_triangles = 0;
};

// E = sum_T area(T) + lambda_omega sum_T omega(a,b)^2 / (2 area(T))
//   + lambda_theta sum_boundary-edges [(<mu,N> - sin t*)^2 + (<mu,JN> - cos t*)^2]
//   + lambda_uniform sum_boundary-edges (|b_{j+1} - b_j| - 2 sin(pi/nphi))^2
//   + lambda_center |sum_v p_v|^2 / #vertices.
// Degenerate triangles (area < 1e-12) contribute their area only and are
// skipped by the gradient (counted in degenerate_triangles).
EnergyBreakdown energy(const DiskMesh& mesh, double lambda_omega, double lambda_theta,
                       std::optional<double> target_theta, std::vector<Vec4>* grad = nullptr,
                       double lambda_uniform = 0.0, double lambda_center = 0.0);

struct FlatnessMetrics {
  double plane_fit_residual = 0.0;     // sqrt((s3+s4)/(s1+s2)) of the second-moment matrix
  double plane_lagrangian_defect = 0;  // |omega(b1,b2)| for the fitted plane
  double discrete_a_norm = 0.0;        // max local quadratic-fit second-fundamental-form norm
};

FlatnessMetrics flatness_metrics(const DiskMesh& mesh);

// max over triangles of |omega(a,b)| / (|a||b|)
double mesh_max_omega_residual(const DiskMesh& mesh);

// max over boundary vertices of |1 - <mu_d, N>| for the discrete outward conormal
double boundary_conormal_deviation(const DiskMesh& mesh);

// max over boundary vertices of ||p| - 1|
double boundary_radius_deviation(const DiskMesh& mesh);

// Least-squares polynomial chart (total degree <= degree) through the mesh
// vertices over the parameter disk; exact jets from the polynomial.
Chart fitted_chart(const DiskMesh& mesh, int degree = 5);

// max |Im(8 z^3 phi)| over boundary samples of the fitted chart
double boundary_im_diagnostic(const DiskMesh& mesh, int samples = 64, int degree = 5);

struct SolveDiagnostics {
  double energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  double max_omega_residual = 0.0;
  double plane_fit_residual = 0.0;
  double plane_lagrangian_defect = 0.0;
  double discrete_a_norm = 0.0;
  double boundary_mu_dot_n_dev = 0.0;
  double boundary_radius_dev = 0.0;
  double boundary_im_diag = 0.0;
  double wall_seconds = 0.0;  // reported on the console, not serialized
};

struct SolveResult {
  DiskMesh mesh;
  // accepted-step energies; non-increasing within each continuation stage
  // (the objective changes across stages, see stage_offsets)
  std::vector<double> energy_history;
  std::vector<int> stage_offsets;  // first history index of each stage
  SolveDiagnostics diag;
};

// Projected descent with backtracking line search: Barzilai-Borwein trial
// steps, boundary vertices reprojected to the sphere after every accepted
// step, and lambda_omega continuation over the schedule. Deterministic.
SolveResult minimize(DiskMesh mesh, const SolverConfig& config);

// Initial data for the flat-disk reproduction runs: amplitude-perturbed equatorial
// disk, bump modes drawn from the seed, boundary ring exactly on the sphere.
DiskMesh perturbed_disk_mesh(int nr, int nphi, double amplitude, int seed);

}  // namespace lagsurf
