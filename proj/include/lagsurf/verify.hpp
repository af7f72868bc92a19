#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lagsurf/examples.hpp"
#include "lagsurf/report.hpp"

namespace lagsurf {

// bad example/check names, checks that do not apply to the example
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Check names accepted by run_checks / the verify subcommand. A name may
// expand to several report rows (e.g. "codazzi" -> symmetry + contraction).
const std::vector<std::string>& known_checks();

// Runs the selected checks on an n_u x n_v grid (boundary checks sample
// boundary_samples points per boundary curve). tol_override, when set,
// replaces every per-check default tolerance.
VerificationReport run_checks(const ExampleSurface& ex, const std::vector<std::string>& checks, int n_u, int n_v,
                              std::optional<double> tol_override = std::nullopt, int boundary_samples = 100);

// interior parameter grid: non-periodic axes shrunk by margin_frac per side
std::vector<std::pair<double, double>> interior_grid(const Chart& chart, int nu, int nv, double margin_frac = 1e-3);

}  // namespace lagsurf
