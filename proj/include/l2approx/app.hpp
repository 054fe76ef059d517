#pragma once

// Command logic shared by the CLI and the Python module: problem files in,
// JSON reports out.

#include <optional>
#include <string>
#include <vector>

#include "l2approx/io.hpp"

namespace l2approx {

enum class SchemeType { Tower, Folner, Oracle };

struct SchemeSpec {
  SchemeType type = SchemeType::Tower;
  std::vector<std::int64_t> levels;  // ℤ^n moduli
  std::optional<QuotientTower> quotients;  // explicit maps; overrides `levels`
  int stationary = 0;                // finite groups: repeat the identity map
  std::vector<std::int64_t> boxes;   // Følner radii
  int grid = 0;                      // oracle grid per dimension
};

struct SandwichSpec {
  std::vector<double> lambdas;
  std::vector<int> ns;
  std::optional<double> K;  // default k_bound(Δ)
};

struct Problem {
  Group group;
  RingMatrix delta;
  bool from_a = false;  // delta was given as A and squared
  SchemeSpec scheme;
  std::optional<std::pair<RingMatrix, RingMatrix>> whitehead;
  std::vector<double> lambda_grid;
  std::optional<SandwichSpec> sandwich;
};

/// Throws Error (ParseError and friends) on malformed input.
Problem parse_problem(const json& j);
Problem load_problem(const std::string& path);
json load_json(const std::string& path);

/// Command-line overrides; unset fields keep the problem's values or defaults.
struct AppOptions {
  std::optional<std::vector<std::int64_t>> levels;
  std::optional<std::vector<std::int64_t>> boxes;
  std::optional<int> grid;
  std::optional<double> eps_ker;
  double tol = 0.02;
  int jobs = 1;
  std::optional<std::vector<double>> lambda_grid;
  bool timings = false;  // include wall times (breaks byte-identical output)
};

std::vector<std::int64_t> default_tower_levels(std::int64_t rank);
std::vector<std::int64_t> default_folner_boxes(std::int64_t rank);
int default_oracle_grid(std::int64_t rank);

struct DensityResult {
  SpectralDensity density;
  std::string source;  // "tower:N=64", "folner:m=8", "oracle:grid=4096", ...
};

/// Density at the last requested level of the scheme, or from the oracle.
DensityResult compute_density(const Problem& p, const AppOptions& o);
json density_report(const DensityResult& r);

struct Outcome {
  json report;
  bool pass = true;         // no property verdict failed
  bool computation_error = false;
};

/// Level reports plus norm, trace, squeeze, sintapr, sandwich, Betti-limit
/// and Whitehead verdicts, with every effective setting echoed.
Outcome run_approx(const Problem& p, const AppOptions& o);

/// L2Report as JSON. Methods: "auto", "oracle" or "tower".
Outcome run_cw(const ChainComplexSpec& spec, const AppOptions& o, const std::string& method = "auto");

/// Serialization used for every report file: 2-space indent, trailing newline.
std::string dump_report(const json& j);

}  // namespace l2approx
