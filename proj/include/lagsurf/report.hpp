#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace lagsurf {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string artifact_version = kArtifactVersion;
  std::string example;
  std::map<std::string, double> params;
  int n_u = 0, n_v = 0;
  std::vector<CheckResult> checks;

  bool overall_pass() const;
  nlohmann::json to_json() const;
  static VerificationReport from_json(const nlohmann::json& j);
};

}  // namespace lagsurf
