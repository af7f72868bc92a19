#include "lagsurf/report.hpp"

namespace lagsurf {

bool VerificationReport::overall_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["artifact_version"] = artifact_version;
  j["example"] = {{"name", example}, {"params", params}};
  j["grid"] = {{"n_u", n_u}, {"n_v", n_v}};
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"max_residual", c.max_residual},
                           {"mean_residual", c.mean_residual},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  j["overall_pass"] = overall_pass();
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.artifact_version = j.at("artifact_version").get<std::string>();
  r.example = j.at("example").at("name").get<std::string>();
  r.params = j.at("example").at("params").get<std::map<std::string, double>>();
  r.n_u = j.at("grid").at("n_u").get<int>();
  r.n_v = j.at("grid").at("n_v").get<int>();
  for (const auto& c : j.at("checks")) {
    CheckResult cr;
    cr.name = c.at("name").get<std::string>();
    cr.max_residual = c.at("max_residual").get<double>();
    cr.mean_residual = c.at("mean_residual").get<double>();
    cr.tolerance = c.at("tolerance").get<double>();
    cr.pass = c.at("pass").get<bool>();
    r.checks.push_back(cr);
  }
  return r;
}

}  // namespace lagsurf
