#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lagsurf/examples.hpp"
#include "lagsurf/report.hpp"
#include "lagsurf/solver.hpp"
#include "lagsurf/verify.hpp"

using namespace lagsurf;

namespace {

// exit codes: 0 pass, 1 checks failed, 2 usage error, 3 numerical failure
// (partial report written), 4 solver did not converge / thresholds missed
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitNoConvergence = 4;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct ExampleFlags {
  std::string name;
  double r0 = 2.0;
  double r = 1.7320508075688772;
  std::string w = "cubic";
  std::vector<double> c;
  double perturb_amplitude = 0.0;
  int perturb_mode = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--example", name, "example name: plane-disk | catenoid | catenoid-in-ball | whitney | whitney-cap | gradient-graph")
        ->required();
    cmd->add_option("--r0", r0, "ball radius for catenoid-in-ball (> sqrt(2))");
    cmd->add_option("--r", r, "Whitney sphere radius");
    cmd->add_option("--w", w, "gradient-graph scalar id: zero | quadratic | cubic");
    cmd->add_option("--c", c, "Whitney sphere center (4 reals)")->expected(4);
    cmd->add_option("--perturb-amplitude", perturb_amplitude, "normal perturbation amplitude");
    cmd->add_option("--perturb-mode", perturb_mode, "perturbation angular mode");
  }

  ExampleSurface build() const {
    ExampleRequest req;
    req.name = name;
    req.r0 = r0;
    req.r = r;
    req.w = w;
    if (c.size() == 4) req.c = Vec4(c[0], c[1], c[2], c[3]);
    req.amplitude = perturb_amplitude;
    req.mode = perturb_mode;
    return make_example(req);
  }
};

int run_verify(const ExampleFlags& exf, const std::string& checks_csv, int nu, int nv,
               std::optional<double> tol, int boundary_samples, const std::string& out_path) {
  std::vector<std::string> checks = split_list(checks_csv);
  if (checks.empty()) {
    std::cerr << "verify: no checks requested\n";
    return kExitUsage;
  }
  for (const std::string& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
      std::cerr << "verify: unknown check '" << c << "'\n";
      return kExitUsage;
    }

  ExampleSurface ex = exf.build();
  VerificationReport rep;
  rep.example = ex.name;
  rep.params = ex.params;
  rep.n_u = nu;
  rep.n_v = nv;

  auto write_report = [&rep, &out_path]() {
    if (out_path.empty()) return;
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("verify: cannot write '" + out_path + "'");
    f << rep.to_json().dump(2) << "\n";
  };

  for (const std::string& name : checks) {
    try {
      VerificationReport one = run_checks(ex, {name}, nu, nv, tol, boundary_samples);
      rep.checks.insert(rep.checks.end(), one.checks.begin(), one.checks.end());
    } catch (const UsageError& e) {
      std::cerr << "verify: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "verify: numerical failure in check '" << name << "': " << e.what() << "\n";
      write_report();
      return kExitNumerical;
    }
  }
  write_report();
  for (const CheckResult& c : rep.checks)
    std::printf("%-28s max %-12.3e mean %-12.3e tol %-9.1e %s\n", c.name.c_str(), c.max_residual, c.mean_residual,
                c.tolerance, c.pass ? "pass" : "FAIL");
  bool ok = rep.overall_pass();
  std::printf("overall: %s\n", ok ? "pass" : "FAIL");
  return ok ? 0 : kExitFail;
}

void write_mesh_csv(const DiskMesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << "# polar-mesh nr=" << m.nr << " nphi=" << m.nphi << "\n";
  f << "u,v,x1,x2,y1,y2\n";
  auto row = [&f](double u, double v, const Vec4& p) {
    f << fmt17(u) << ',' << fmt17(v) << ',' << fmt17(p[0]) << ',' << fmt17(p[1]) << ',' << fmt17(p[2]) << ','
      << fmt17(p[3]) << "\n";
  };
  row(0.0, 0.0, m.pos[0]);
  for (int i = 1; i <= m.nr; ++i)
    for (int j = 0; j < m.nphi; ++j) row(double(i) / m.nr, 2.0 * M_PI * j / m.nphi, m.pos[m.vid(i, j)]);
}

DiskMesh read_mesh_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read '" + path + "'");
  std::string line;
  int nr = -1, nphi = -1;
  std::vector<Vec4> pos;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::sscanf(line.c_str(), "# polar-mesh nr=%d nphi=%d", &nr, &nphi);
      continue;
    }
    if (line.rfind("u,v", 0) == 0) continue;
    double u, v, a, b, c, d;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &u, &v, &a, &b, &c, &d) != 6)
      throw std::runtime_error("bad mesh CSV row: " + line);
    pos.push_back(Vec4(a, b, c, d));
  }
  if (nr < 2 || nphi < 8) throw std::runtime_error("mesh CSV missing/invalid '# polar-mesh nr=.. nphi=..' header");
  if (static_cast<int>(pos.size()) != 1 + nr * nphi) throw std::runtime_error("mesh CSV has wrong vertex count");
  ExampleSurface plane = plane_disk();
  DiskMesh m = build_mesh(nr, nphi, plane.charts[0]);
  m.pos = std::move(pos);
  for (int v : m.boundary) m.pos[v] = normalized(m.pos[v]);
  return m;
}

void write_mesh_obj(const DiskMesh& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << "# disk mesh; fourth coordinate follows each vertex as '# w <y2>'\n";
  for (const Vec4& p : m.pos) {
    f << "v " << fmt17(p[0]) << ' ' << fmt17(p[1]) << ' ' << fmt17(p[2]) << "\n";
    f << "# w " << fmt17(p[3]) << "\n";
  }
  for (const auto& t : m.tris) f << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << "\n";
}

int run_solve(int nr, int nphi, const std::string& theta, const std::string& lambda_csv, double lambda_theta,
              double lambda_uniform, double lambda_center, int max_iters, double grad_tol, int seed, double amplitude,
              const std::string& init_file, const std::string& out_prefix) {
  SolverConfig cfg;
  cfg.nr = nr;
  cfg.nphi = nphi;
  cfg.lambda_theta = lambda_theta;
  cfg.lambda_uniform = lambda_uniform;
  cfg.lambda_center = lambda_center;
  cfg.max_iters = max_iters;
  cfg.grad_tol = grad_tol;
  cfg.seed = seed;
  cfg.amplitude = amplitude;
  if (theta != "free") {
    try {
      double t = std::stod(theta);
      if (!(t > 0.0 && t < M_PI)) throw std::invalid_argument("range");
      cfg.target_theta = t;
    } catch (const std::exception&) {
      std::cerr << "solve: --theta must be 'free' or an angle in (0, pi)\n";
      return kExitUsage;
    }
  }
  if (!lambda_csv.empty()) {
    cfg.lambda_schedule.clear();
    for (const std::string& s : split_list(lambda_csv)) cfg.lambda_schedule.push_back(std::stod(s));
  }

  DiskMesh mesh;
  try {
    mesh = init_file.empty() ? perturbed_disk_mesh(cfg.nr, cfg.nphi, cfg.amplitude, cfg.seed)
                             : read_mesh_csv(init_file);
  } catch (const std::invalid_argument& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kExitUsage;
  }

  SolveResult res;
  try {
    res = minimize(mesh, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kExitUsage;
  }

  // pinned flatness thresholds
  const bool thresholds_ok = res.diag.plane_fit_residual < 1e-2 && res.diag.max_omega_residual < 1e-3 &&
                             res.diag.boundary_mu_dot_n_dev < 5e-2 && res.diag.discrete_a_norm < 5e-2 &&
                             res.diag.boundary_im_diag < 1e-2 && res.diag.boundary_radius_dev < 1e-12;

  nlohmann::json j;
  j["artifact_version"] = kArtifactVersion;
  j["config"] = {{"nr", cfg.nr},
                 {"nphi", cfg.nphi},
                 {"theta", cfg.target_theta ? nlohmann::json(*cfg.target_theta) : nlohmann::json("free")},
                 {"lambda_omega", cfg.lambda_schedule},
                 {"lambda_theta", cfg.lambda_theta},
                 {"lambda_uniform", cfg.lambda_uniform},
                 {"lambda_center", cfg.lambda_center},
                 {"max_iters", cfg.max_iters},
                 {"grad_tol", cfg.grad_tol},
                 {"seed", cfg.seed},
                 {"amplitude", cfg.amplitude},
                 {"init_file", init_file}};
  j["energy_history"] = res.energy_history;
  j["diagnostics"] = {{"energy", res.diag.energy},
                      {"grad_norm", res.diag.grad_norm},
                      {"iterations", res.diag.iterations},
                      {"converged", res.diag.converged},
                      {"max_omega_residual", res.diag.max_omega_residual},
                      {"plane_fit_residual", res.diag.plane_fit_residual},
                      {"plane_lagrangian_defect", res.diag.plane_lagrangian_defect},
                      {"discrete_a_norm", res.diag.discrete_a_norm},
                      {"boundary_mu_dot_n_dev", res.diag.boundary_mu_dot_n_dev},
                      {"boundary_radius_dev", res.diag.boundary_radius_dev},
                      {"boundary_im_diag", res.diag.boundary_im_diag}};
  j["thresholds_pass"] = thresholds_ok;

  if (!out_prefix.empty()) {
    std::ofstream jf(out_prefix + ".json");
    if (!jf) {
      std::cerr << "solve: cannot write '" << out_prefix << ".json'\n";
      return kExitUsage;
    }
    jf << j.dump(2) << "\n";
    write_mesh_csv(res.mesh, out_prefix + "_mesh.csv");
    write_mesh_obj(res.mesh, out_prefix + ".obj");
  }

  std::printf("solve: iterations %d converged %d grad %.3e energy %.12f  (%.2f s)\n", res.diag.iterations,
              res.diag.converged ? 1 : 0, res.diag.grad_norm, res.diag.energy, res.diag.wall_seconds);
  std::printf("  plane_fit %.3e  omega %.3e  a_norm %.3e  mu.N dev %.3e  im(8z^3 phi) %.3e  -> %s\n",
              res.diag.plane_fit_residual, res.diag.max_omega_residual, res.diag.discrete_a_norm,
              res.diag.boundary_mu_dot_n_dev, res.diag.boundary_im_diag, thresholds_ok ? "pass" : "FAIL");
  if (!res.diag.converged || !thresholds_ok) return kExitNoConvergence;
  return 0;
}

int run_export(const ExampleFlags& exf, int nu, int nv, const std::string& out_path, const std::string& frames_path,
               const std::string& obj_path, const std::string& boundary_label, int boundary_samples) {
  ExampleSurface ex = exf.build();
  {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "export: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    f << "u,v,x1,x2,y1,y2\n";
    for (auto [u, v] : chart_grid(ex.primary(), nu, nv)) {
      Vec4 p = ex.primary().eval(u, v);
      f << fmt17(u) << ',' << fmt17(v) << ',' << fmt17(p[0]) << ',' << fmt17(p[1]) << ',' << fmt17(p[2]) << ','
        << fmt17(p[3]) << "\n";
    }
  }
  if (!frames_path.empty()) {
    if (ex.boundaries.empty()) {
      std::cerr << "export: example has no boundary for --frames\n";
      return kExitUsage;
    }
    const NamedBoundary* nb = &ex.boundaries.front();
    if (!boundary_label.empty()) {
      nb = nullptr;
      for (const NamedBoundary& b : ex.boundaries)
        if (b.label == boundary_label) nb = &b;
      if (!nb) {
        std::cerr << "export: unknown boundary label '" << boundary_label << "'\n";
        return kExitUsage;
      }
    }
    std::ofstream f(frames_path);
    if (!f) {
      std::cerr << "export: cannot write '" << frames_path << "'\n";
      return kExitUsage;
    }
    f << "s,t1,t2,t3,t4,mu1,mu2,mu3,mu4,n1,n2,n3,n4,xi1,xi2,xi3,xi4,theta\n";
    for (int k = 0; k < boundary_samples; ++k) {
      double s = 2.0 * M_PI * k / boundary_samples;
      BoundaryFrame fr = boundary_frame(ex.charts[nb->chart], nb->curve, s);
      f << fmt17(s);
      for (const Vec4* v : {&fr.T, &fr.mu, &fr.N, &fr.xi})
        for (int c = 0; c < 4; ++c) f << ',' << fmt17((*v)[c]);
      f << ',' << fmt17(fr.theta) << "\n";
    }
  }
  if (!obj_path.empty()) {
    std::ofstream f(obj_path);
    if (!f) {
      std::cerr << "export: cannot write '" << obj_path << "'\n";
      return kExitUsage;
    }
    f << "# chart samples; fourth coordinate follows each vertex as '# w <y2>'\n";
    auto pts = chart_grid(ex.primary(), nu, nv);
    for (auto [u, v] : pts) {
      Vec4 p = ex.primary().eval(u, v);
      f << "v " << fmt17(p[0]) << ' ' << fmt17(p[1]) << ' ' << fmt17(p[2]) << "\n# w " << fmt17(p[3]) << "\n";
    }
    for (int i = 0; i + 1 < nu; ++i)
      for (int j = 0; j + 1 < nv; ++j) {
        int a = i * nv + j + 1, b = i * nv + j + 2, c = (i + 1) * nv + j + 1, d = (i + 1) * nv + j + 2;
        f << "f " << a << ' ' << c << ' ' << d << "\nf " << a << ' ' << d << ' ' << b << "\n";
      }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks and a constrained solver for Lagrangian surfaces with Legendrian boundary"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run residual checks on a named example and write a JSON report");
  ExampleFlags vex;
  vex.attach(verify);
  std::string checks;
  std::vector<int> vgrid;
  int boundary_samples = 100;
  double tol_flag = -1.0;
  std::string out_path;
  verify->add_option("--checks", checks, "comma list: lagrangian,legendrian,angle,capillary,minimal,abreve,maslov,codazzi,joachimsthal,cr,inversion")
      ->required();
  verify->add_option("--grid", vgrid, "grid sizes n_u n_v")->expected(2);
  verify->add_option("--tol", tol_flag, "override every check tolerance");
  verify->add_option("--boundary-samples", boundary_samples, "samples per boundary curve");
  verify->add_option("--out", out_path, "report JSON path");

  // solve
  auto* solve = app.add_subcommand("solve", "minimize area + Lagrangian penalty over a disk mesh with boundary on S^3");
  int nr = 16, nphi = 48, max_iters = 5000, seed = 7;
  double grad_tol = 1e-10, lambda_theta = 1.0, lambda_uniform = 1.0, lambda_center = 10.0, amplitude = 0.05;
  std::string theta = "free", lambda_csv, init_file, out_prefix;
  solve->add_option("--nr", nr, "mesh rings (>= 2)");
  solve->add_option("--nphi", nphi, "mesh sectors (>= 8)");
  solve->add_option("--theta", theta, "'free' or target contact angle in radians");
  solve->add_option("--lambda-omega", lambda_csv, "comma-separated non-decreasing continuation schedule");
  solve->add_option("--lambda-theta", lambda_theta, "contact-angle penalty weight");
  solve->add_option("--lambda-uniform", lambda_uniform, "boundary chord regularizer weight");
  solve->add_option("--lambda-center", lambda_center, "centroid penalty weight");
  solve->add_option("--max-iters", max_iters, "iteration budget");
  solve->add_option("--grad-tol", grad_tol, "projected-gradient stopping tolerance");
  solve->add_option("--seed", seed, "seed for the initial perturbation modes");
  solve->add_option("--amplitude", amplitude, "initial perturbation amplitude");
  solve->add_option("--init-file", init_file, "mesh CSV to start from (overrides seed/amplitude)");
  solve->add_option("--out-prefix", out_prefix, "write <prefix>.json, <prefix>_mesh.csv, <prefix>.obj");

  // export
  auto* exp = app.add_subcommand("export", "sample an example chart to CSV/OBJ");
  ExampleFlags eex;
  eex.attach(exp);
  std::string exp_out, frames_path, obj_path, boundary_label;
  int enu = 50, env = 50, exp_bsamples = 100;
  exp->add_option("--out", exp_out, "surface sample CSV path")->required();
  exp->add_option("--frames", frames_path, "boundary frame CSV path");
  exp->add_option("--boundary", boundary_label, "boundary label for --frames");
  exp->add_option("--obj", obj_path, "OBJ output path");
  exp->add_option("--boundary-samples", exp_bsamples, "frame samples");

  std::vector<int> egrid;
  exp->add_option("--grid", egrid, "grid sizes n_u n_v")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(verify)) {
      int nu = vgrid.size() == 2 ? vgrid[0] : 50;
      int nv = vgrid.size() == 2 ? vgrid[1] : 50;
      std::optional<double> tol;
      if (tol_flag > 0.0) tol = tol_flag;
      return run_verify(vex, checks, nu, nv, tol, boundary_samples, out_path);
    }
    if (app.got_subcommand(solve))
      return run_solve(nr, nphi, theta, lambda_csv, lambda_theta, lambda_uniform, lambda_center, max_iters, grad_tol,
                       seed, amplitude, init_file, out_prefix);
    if (app.got_subcommand(exp)) {
      if (!egrid.empty()) {
        enu = egrid[0];
        env = egrid[1];
      }
      return run_export(eex, enu, env, exp_out, frames_path, obj_path, boundary_label, exp_bsamples);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
