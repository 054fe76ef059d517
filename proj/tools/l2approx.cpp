// l2approx density|approx|cw|verify
//
// Exit codes: 0 success, 1 property failure, 2 input error, 3 computation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l2approx/app.hpp"
#include "l2approx/error.hpp"
#include "l2approx/verify.hpp"

namespace {

using namespace l2approx;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;
constexpr int kComputationError = 3;

struct Flags {
  std::string input;
  std::string output;
  std::vector<std::int64_t> levels;
  std::vector<std::int64_t> boxes;
  std::vector<double> lambda_grid;
  int grid = 0;
  double eps_ker = -1.0;
  double tol = 0.02;
  int jobs = 1;
  bool timings = false;
  std::string format;
  std::string method = "auto";
};

AppOptions to_options(const Flags& f) {
  AppOptions o;
  if (!f.levels.empty()) o.levels = f.levels;
  if (!f.boxes.empty()) o.boxes = f.boxes;
  if (!f.lambda_grid.empty()) o.lambda_grid = f.lambda_grid;
  if (f.grid > 0) o.grid = f.grid;
  if (f.eps_ker >= 0.0) o.eps_ker = f.eps_ker;
  o.tol = f.tol;
  o.jobs = f.jobs;
  o.timings = f.timings;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

int fail(int code, const std::string& message) {
  std::cerr << "l2approx: " << message << "\n";
  return code;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class Load, class Run>
int staged(Load&& load, Run&& run) {
  try {
    load();
  } catch (const std::exception& e) {
    return fail(kInputError, e.what());
  }
  try {
    return run();
  } catch (const std::exception& e) {
    return fail(kComputationError, e.what());
  }
}

int cmd_density(const Flags& f) {
  std::optional<Problem> p;
  return staged([&] { p = load_problem(f.input); },
                [&] {
                  const auto r = compute_density(*p, to_options(f));
                  const bool as_json = f.format == "json" || (f.format.empty() && ends_with(f.output, ".json"));
                  emit(as_json ? dump_report(density_report(r)) : density_to_csv(r.density), f.output);
                  return kOk;
                });
}

int cmd_approx(const Flags& f) {
  std::optional<Problem> p;
  return staged([&] { p = load_problem(f.input); },
                [&] {
                  const auto out = run_approx(*p, to_options(f));
                  emit(dump_report(out.report), f.output);
                  if (out.computation_error) return fail(kComputationError, "a verdict could not be computed");
                  if (!out.pass) return fail(kPropertyFailure, "property verdict failed");
                  return kOk;
                });
}

int cmd_cw(const Flags& f) {
  std::optional<ChainComplexSpec> spec;
  return staged([&] { spec = parse_complex(load_json(f.input)); },
                [&] {
                  const auto out = run_cw(*spec, to_options(f), f.method);
                  emit(dump_report(out.report), f.output);
                  if (!out.pass) return fail(kPropertyFailure, "Euler characteristic mismatch");
                  return kOk;
                });
}

int cmd_verify(const Flags& f) {
  std::vector<std::string> suites;
  if (f.input == "all") {
    suites = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), f.input) != suite_names().end()) {
    suites = {f.input};
  } else {
    return fail(kInputError, "unknown suite \"" + f.input + "\" (traces, squeeze, determinant, whitehead, subgroup, all)");
  }
  const auto seed = seed_from_env();
  bool ok = true;
  json results = json::array();
  try {
    for (const auto& name : suites) {
      const auto r = run_suite(name, seed, f.jobs);
      for (const auto& c : r.checks) {
        std::cout << (c.ok ? "PASS " : "FAIL ") << name << ": " << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
      }
      std::cout << name << ": " << (r.ok() ? "PASS" : "FAIL") << " (seed " << seed << ")\n";
      ok = ok && r.ok();
      results.push_back(r.to_json());
    }
    if (!f.output.empty()) emit(dump_report(results), f.output);
  } catch (const std::exception& e) {
    return fail(kComputationError, e.what());
  }
  return ok ? kOk : kPropertyFailure;
}

void common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--output,-o", f.output, "Output file (default: standard output)");
  cmd->add_option("--jobs,-j", f.jobs, "Worker threads for levels and grids")->check(CLI::PositiveNumber);
}

void scheme_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--levels", f.levels, "Tower moduli (Z^n) or level count (explicit towers)")->delimiter(',');
  cmd->add_option("--grid", f.grid, "Torus oracle grid per dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--eps-ker", f.eps_ker, "Kernel threshold (default 1e-9 * K)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", f.tol, "Limit-vs-oracle tolerance")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L2-invariants of group ring matrices by finite approximation", "l2approx"};
  app.require_subcommand(1);
  Flags f;

  auto* density = app.add_subcommand("density", "Spectral density at the last level, the last box or the oracle");
  density->add_option("problem", f.input, "Problem JSON")->required();
  common_flags(density, f);
  scheme_flags(density, f);
  density->add_option("--boxes", f.boxes, "Følner box radii")->delimiter(',');
  density->add_option("--format", f.format, "csv or json (default csv, json for *.json outputs)")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* approx = app.add_subcommand("approx", "Run the scheme and certify its convergence properties");
  approx->add_option("problem", f.input, "Problem JSON")->required();
  common_flags(approx, f);
  scheme_flags(approx, f);
  approx->add_option("--boxes", f.boxes, "Følner box radii")->delimiter(',');
  approx->add_option("--lambda-grid", f.lambda_grid, "Squeeze grid points")->delimiter(',');
  approx->add_flag("--timings", f.timings, "Include per-level wall times");

  auto* cw = app.add_subcommand("cw", "L2-Betti numbers, determinants and torsion of a chain complex");
  cw->add_option("complex", f.input, "Complex JSON")->required();
  common_flags(cw, f);
  scheme_flags(cw, f);
  cw->add_option("--method", f.method, "auto, oracle or tower")->check(CLI::IsMember({"auto", "oracle", "tower"}));

  auto* verify = app.add_subcommand("verify", "Run a bundled property suite (seed from L2APPROX_SEED)");
  verify->add_option("suite", f.input, "traces, squeeze, determinant, whitehead, subgroup or all")->required();
  common_flags(verify, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*density) return cmd_density(f);
  if (*approx) return cmd_approx(f);
  if (*cw) return cmd_cw(f);
  if (*verify) return cmd_verify(f);
  return kInputError;
}
