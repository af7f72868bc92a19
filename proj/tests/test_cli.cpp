// End-to-end checks of the command-line tool: exit-code contract, report
// schema, file formats, determinism, and the mesh round trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = LAGSURF_BIN;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lagsurf_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = kBin + " " + args + " > " + (work_dir() / "stdout.txt").string() + " 2> " +
                    (work_dir() / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_lines(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  int n = 0;
  while (std::getline(f, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("verify: catenoid-in-ball reference run passes and pins the conormal angle") {
  fs::path out = work_dir() / "r.json";
  int rc = run("verify --example catenoid-in-ball --r0 2 --checks lagrangian,legendrian,angle,minimal --grid 50 50 "
               "--tol 1e-6 --out " +
               out.string());
  CHECK(rc == 0);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("overall_pass") == true);
  CHECK(j.at("artifact_version").is_string());
  CHECK(j.at("grid").at("n_u") == 50);
  bool found_angle_value = false;
  for (const auto& c : j.at("checks")) {
    // schema: exactly these keys per check row
    CHECK(c.size() == 5);
    for (const char* k : {"name", "max_residual", "mean_residual", "tolerance", "pass"}) CHECK(c.contains(k));
    if (c.at("name") == "angle.value") {
      found_angle_value = true;
      CHECK(c.at("max_residual").get<double>() < 1e-6);  // | <mu,N> - sqrt(r0^4-4)/r0^2 |
    }
  }
  CHECK(found_angle_value);
}

TEST_CASE("verify: whitney cap capillary run passes") {
  CHECK(run("verify --example whitney-cap --r 1.7320508 --checks capillary,abreve,maslov --grid 25 25") == 0);
}

TEST_CASE("verify: cubic gradient graph fails the Maslov check by design") {
  CHECK(run("verify --example gradient-graph --w cubic --checks maslov --grid 15 15") == 1);
}

TEST_CASE("verify: usage errors exit with code 2") {
  CHECK(run("verify --example no-such-example --checks lagrangian") == 2);
  CHECK(run("verify --example plane-disk --checks no-such-check") == 2);
  CHECK(run("verify --example catenoid --checks legendrian") == 2);  // no boundary on the full catenoid
  CHECK(run("verify --example plane-disk") == 2);                    // --checks is required
}

TEST_CASE("verify: holomorphicity and inversion checks run end to end") {
  CHECK(run("verify --example catenoid --checks cr,maslov,codazzi --grid 12 12") == 0);
  CHECK(run("verify --example catenoid-in-ball --r0 2 --checks inversion,joachimsthal --boundary-samples 40") == 0);
}

TEST_CASE("verify: perturbed caps keep a Legendrian boundary but lose the constant angle") {
  // the generic normal tilt stays inside span{mu, J mu} = span{N, JN}, so the
  // boundary remains Legendrian while theta varies: the capillary check fails
  CHECK(run("verify --example whitney-cap --r 1.7320508 --perturb-amplitude 0.05 --perturb-mode 2 "
            "--checks legendrian,capillary --grid 10 10") == 1);
}

TEST_CASE("verify: a mid-run numerical failure writes a partial report and exits 3") {
  // the perturbed plane's conormal leaves span{N, JN}, so the angle profiler
  // refuses the boundary after the legendrian rows were already recorded
  fs::path out = work_dir() / "partial.json";
  int rc = run("verify --example plane-disk --perturb-amplitude 0.05 --perturb-mode 2 "
               "--checks legendrian,capillary --grid 10 10 --out " +
               out.string());
  CHECK(rc == 3);
  nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("checks").size() == 2);  // partial report: rows recorded before the failure
  CHECK(j.at("checks")[1].at("name") == "legendrian.span");
  CHECK(j.at("checks")[1].at("pass") == false);
}

TEST_CASE("verify: reports are byte-identical across reruns") {
  fs::path a = work_dir() / "a.json", b = work_dir() / "b.json";
  std::string flags = "verify --example whitney --r 1 --checks lagrangian,abreve --grid 20 20 --out ";
  CHECK(run(flags + a.string()) == 0);
  CHECK(run(flags + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("solve: reference run converges, passes thresholds, emits deterministic artifacts") {
  fs::path p1 = work_dir() / "run1", p2 = work_dir() / "run2";
  std::string flags = " --nr 16 --nphi 48 --theta free --seed 7 --out-prefix ";
  CHECK(run("solve" + flags + p1.string()) == 0);
  CHECK(run("solve" + flags + p2.string()) == 0);
  CHECK(slurp(p1.string() + ".json") == slurp(p2.string() + ".json"));
  CHECK(slurp(p1.string() + "_mesh.csv") == slurp(p2.string() + "_mesh.csv"));

  nlohmann::json j = nlohmann::json::parse(slurp(p1.string() + ".json"));
  CHECK(j.at("diagnostics").at("converged") == true);
  CHECK(j.at("diagnostics").at("plane_fit_residual").get<double>() < 1e-2);
  CHECK(j.at("diagnostics").at("max_omega_residual").get<double>() < 1e-3);
  CHECK(j.at("thresholds_pass") == true);
  CHECK_FALSE(j.at("diagnostics").contains("wall_seconds"));  // timing never enters the artifact

  // OBJ view exists and carries the fourth coordinate as comments
  std::string obj = slurp(p1.string() + ".obj");
  CHECK(obj.find("v ") != std::string::npos);
  CHECK(obj.find("# w ") != std::string::npos);
}

TEST_CASE("solve: mesh round trip reproduces the energy") {
  fs::path p1 = work_dir() / "run1";  // produced above
  fs::path p3 = work_dir() / "rt";
  REQUIRE(fs::exists(p1.string() + "_mesh.csv"));
  CHECK(run("solve --init-file " + p1.string() + "_mesh.csv --max-iters 0 --out-prefix " + p3.string()) == 0);
  nlohmann::json a = nlohmann::json::parse(slurp(p1.string() + ".json"));
  nlohmann::json b = nlohmann::json::parse(slurp(p3.string() + ".json"));
  double ea = a.at("diagnostics").at("energy").get<double>();
  double eb = b.at("diagnostics").at("energy").get<double>();
  CHECK(std::abs(ea - eb) < 1e-12);
}

TEST_CASE("solve: preconditions exit with code 2, non-convergence with 4") {
  CHECK(run("solve --nr 2 --nphi 4") == 2);
  CHECK(run("solve --nr 1 --nphi 16") == 2);
  CHECK(run("solve --theta 7.0") == 2);  // angle outside (0, pi)
  fs::path p = work_dir() / "short";
  CHECK(run("solve --nr 8 --nphi 24 --max-iters 4 --out-prefix " + p.string()) == 4);
  nlohmann::json j = nlohmann::json::parse(slurp(p.string() + ".json"));
  CHECK(j.at("diagnostics").at("converged") == false);  // partial result still written
}

TEST_CASE("export: grids, frames, and line counts") {
  fs::path csv = work_dir() / "plane.csv";
  CHECK(run("export --example plane-disk --grid 10 10 --out " + csv.string()) == 0);
  CHECK(count_lines(csv) == 101);  // header plus 100 samples
  CHECK(slurp(csv).substr(0, 16) == "u,v,x1,x2,y1,y2\n");

  fs::path fcsv = work_dir() / "frames.csv";
  CHECK(run("export --example catenoid-in-ball --r0 2 --grid 10 10 --out " + (work_dir() / "cb.csv").string() +
            " --frames " + fcsv.string() + " --boundary outer") == 0);
  std::ifstream f(fcsv);
  std::string line;
  std::getline(f, line);
  CHECK(line == "s,t1,t2,t3,t4,mu1,mu2,mu3,mu4,n1,n2,n3,n4,xi1,xi2,xi3,xi4,theta");
  double theta0 = 0.0;
  bool first = true;
  while (std::getline(f, line)) {
    double theta = std::stod(line.substr(line.rfind(',') + 1));
    if (first) {
      theta0 = theta;
      first = false;
    } else {
      CHECK(std::abs(theta - theta0) < 1e-8);  // constant contact angle along the circle
    }
  }
  CHECK_FALSE(first);

  CHECK(run("export --example catenoid --grid 5 5 --out " + (work_dir() / "x.csv").string() + " --frames " +
            (work_dir() / "y.csv").string()) == 2);  // no boundary
}
