// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l2approx/app.hpp"
#include "l2approx/error.hpp"
#include "l2approx/verify.hpp"

namespace {

using namespace l2approx;

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<std::int64_t> powers_of_two(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t n = lo; n <= hi; n *= 2) v.push_back(n);
  return v;
}

double max_eig_over(const std::vector<LevelReport>& reports) {
  double m = 0.0;
  for (const auto& r : reports) m = std::max(m, r.max_eigenvalue);
  return m;
}

// Shared runs for criteria 1-4 and 7.
struct CircleRuns {
  RingMatrix delta = fixtures::circle_laplacian();
  std::vector<std::int64_t> moduli = powers_of_two(8, 1024);
  std::vector<LevelReport> tower;
  std::vector<LevelReport> folner;
  FolnerExhaustion boxes{1, powers_of_two(4, 512)};
  double tower_seconds = 0.0;

  CircleRuns() {
    RunOptions dense;
    dense.method = LevelMethod::Dense;
    const auto t0 = std::chrono::steady_clock::now();
    tower = run_tower(delta, QuotientTower::standard(1, moduli), dense);
    tower_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    folner = run_folner(delta, boxes);
  }
};

Verdict residual_betti(const CircleRuns& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.tower.size(); ++i) {
    worst = std::max(worst, std::abs(c.tower[i].F0 - 1.0 / static_cast<double>(c.moduli[i])));
  }
  const double oracle = betti(torus_density(c.delta, 4096));
  const double final_gap = std::abs(c.tower.back().F0 - oracle);
  return {worst <= 1e-9 && final_gap <= 1e-3 && c.tower_seconds < 30.0,
          "max |F_N(0) - 1/N| = " + fmt(worst) + ", |F_1024(0) - F(0)| = " + fmt(final_gap) + ", " +
              fmt(c.tower_seconds) + " s"};
}

Verdict determinant_semicontinuity(const CircleRuns& c) {
  double worst = 0.0;
  double min_logdet = INFINITY;
  for (std::size_t i = 0; i < c.tower.size(); ++i) {
    const double n = static_cast<double>(c.moduli[i]);
    worst = std::max(worst, std::abs(c.tower[i].logdet - 2.0 * std::log(n) / n));
    min_logdet = std::min(min_logdet, c.tower[i].logdet);
  }
  const double oracle = torus_logdet(c.delta, 4096).value;
  const auto s = sintapr_check(c.tower, 1.0, k_bound(c.delta), oracle);
  const bool ok = worst <= 1e-6 && s.limsup_estimate <= oracle + 0.02 && min_logdet >= 0.0;
  return {ok, "max |lnDet_N - 2lnN/N| = " + fmt(worst) + ", lim-sup estimate " + fmt(s.limsup_estimate) +
                  " vs oracle " + fmt(oracle) + ", min lnDet_N " + fmt(min_logdet)};
}

Verdict folner_traces(const CircleRuns& c) {
  const double exact3 = trace_poly_exact(c.delta, {0, 0, 0, 1});
  bool ok = exact3 == 20.0;
  double worst1 = 0.0;
  double worst2 = 0.0;
  for (std::size_t i = 0; i < c.folner.size(); ++i) {
    const auto& t = c.folner[i].trace_checks;
    const double v = 2.0 * static_cast<double>(c.boxes.radii()[i]) + 1.0;
    worst1 = std::max(worst1, std::abs(t[0].level_value - 2.0));
    worst2 = std::max(worst2, std::abs(std::abs(t[1].level_value - 6.0) - 2.0 / v));
  }
  const double dev3 = std::abs(c.folner.back().trace_checks[2].level_value - exact3);
  ok = ok && worst1 <= 1e-9 && worst2 <= 1e-9 && dev3 < 1e-2;
  return {ok, "max |tr Δ_m - 2| = " + fmt(worst1) + ", max ||tr Δ_m² - 6| - 2/(2m+1)| = " + fmt(worst2) +
                  ", |tr Δ_512³ - 20| = " + fmt(dev3) + " (needs < 0.01)"};
}

Verdict norm_bounds(const CircleRuns& c) {
  const double K = k_bound(c.delta);
  const double m = std::max(max_eig_over(c.tower), max_eig_over(c.folner));
  return {K == 4.0 && m <= K + 1e-9, "max eigenvalue " + fmt(m) + " vs K = " + fmt(K)};
}

Verdict subgroup_invariance() {
  const auto j = load_json(std::string(L2APPROX_FIXTURE_DIR) + "/z2_in_z4.json");
  const auto sub = parse_group(j.at("subgroup"));
  const auto ambient = parse_group(j.at("ambient"));
  std::vector<GroupElement> images;
  for (const auto& x : j.at("images")) images.push_back(parse_element(ambient, x));
  const Homomorphism embedding(sub, ambient, images);
  const auto delta = positive_square(parse_matrix(sub, j.at("A")));
  const auto r = subgroup_invariance_check(delta, embedding, 1e-9);
  return {r.ok && r.max_deviation <= 1e-9, "max density deviation " + fmt(r.max_deviation)};
}

Verdict trivial_group_integrality() {
  std::mt19937_64 rng(seed_from_env());
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int failures = 0;
  double smallest = INFINITY;
  for (int k = 0; k < 100; ++k) {
    const int d = dim(rng);
    const int rows = dim(rng);
    std::vector<std::vector<long>> a(rows, std::vector<long>(d));
    for (auto& row : a) {
      for (auto& x : row) x = coeff(rng);
    }
    IntegerMatrix m(d, std::vector<mpz_class>(d));
    for (int i = 0; i < d; ++i) {
      for (int l = 0; l < d; ++l) {
        mpz_class s = 0;
        for (int r = 0; r < rows; ++r) s += a[r][i] * a[r][l];
        m[i][l] = s;
      }
    }
    const auto e = trivial_group_logdet_exact(m);
    smallest = std::min(smallest, e.value);
    if (!(e.value >= 0.0) || e.determinant < 1) ++failures;
  }
  return {failures == 0, "100 matrices, " + std::to_string(failures) + " below zero, smallest lnDet " + fmt(smallest) +
                             " (seed " + std::to_string(seed_from_env()) + ")"};
}

Verdict sandwich(const CircleRuns& c) {
  int checks = 0;
  int failures = 0;
  int max_degree = 0;
  for (double lambda : {0.0, 1.0, 2.0}) {
    for (int n : {2, 4, 8}) {
      const auto p = build_sandwich(lambda, n, 4.0);
      max_degree = std::max(max_degree, p.degree);
      if (!p.certified || p.degree > 400) ++failures;
      for (const auto& level : c.tower) {
        ++checks;
        if (!sandwich_level_check(p, level, 1.0, 1e-8).ok) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(checks) + " level checks, " + std::to_string(failures) +
                             " failures, max degree " + std::to_string(max_degree)};
}

Verdict whitehead() {
  const auto tower = QuotientTower::standard(1, powers_of_two(8, 1024));
  const auto v = whitehead_check(fixtures::elementary_E(), fixtures::elementary_E_inverse(), tower, 4096, 0.02);
  double worst = 0.0;
  for (double x : v.level_logdets) worst = std::max(worst, std::abs(x));
  const double oracle = v.oracle.value_or(INFINITY);
  return {v.integral && worst <= 0.02 && std::abs(oracle) <= 0.01,
          "max |lnDet_N| = " + fmt(worst) + ", oracle " + fmt(oracle)};
}

Verdict complex_approximation() {
  const auto tower = QuotientTower::standard(1, powers_of_two(8, 1024));
  const auto alpha = fixtures::complex_shift_square(Coefficient(mpq_class(1, 2), mpq_class(1, 2)));
  const auto v = complex_tower_run(alpha, tower, 4096);
  double worst = 0.0;
  for (const auto& r : v.reports) worst = std::max(worst, r.F0);
  const auto w = complex_tower_run(fixtures::complex_shift_square(Coefficient(1)), tower, 4096);
  double worst_circle = 0.0;
  for (std::size_t i = 0; i < w.reports.size(); ++i) {
    const double n = static_cast<double>(tower.levels()[i].target().order().value());
    worst_circle = std::max(worst_circle, std::abs(w.reports[i].F0 - 1.0 / n));
  }
  return {worst == 0.0 && v.oracle_F0 == 0.0 && worst_circle <= 1e-9,
          "α = (1+i)/2: max F_N(0) = " + fmt(worst) + ", oracle " + fmt(v.oracle_F0) +
              "; α = 1: max |F_N(0) - 1/N| = " + fmt(worst_circle)};
}

Verdict cw_invariants() {
  CwOptions oracle;
  oracle.method = CwMethod::Oracle;
  oracle.grid = 4096;
  const auto circle = l2_invariants(fixtures::circle_complex(), oracle);
  const double torsion = circle.torsion.value_or(INFINITY);
  bool ok = std::abs(torsion) <= 0.02 && std::abs(circle.l2_euler - circle.cellular_euler) <= 0.02;

  oracle.grid = 256;
  CwOptions tower;
  tower.method = CwMethod::Tower;
  tower.levels = {64};
  double worst_betti = 0.0;
  double worst_euler = 0.0;
  for (const auto& o : {oracle, tower}) {
    const auto r = l2_invariants(fixtures::torus_complex(), o);
    for (const auto& d : r.degrees) worst_betti = std::max(worst_betti, d.betti);
    worst_euler = std::max(worst_euler, std::abs(r.l2_euler - r.cellular_euler));
  }
  ok = ok && worst_betti <= 0.02 && worst_euler <= 0.02;
  return {ok, "circle torsion " + fmt(torsion) + ", torus max b_p " + fmt(worst_betti) + ", max Euler gap " +
                  fmt(worst_euler)};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  auto report = [&](int k, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s criterion %d: %s\n", v.ok ? "PASS" : "FAIL", k, v.detail.c_str());
    std::fflush(stdout);
    all = all && v.ok;
  };

  const CircleRuns circle;
  report(1, [&] { return residual_betti(circle); });
  report(2, [&] { return determinant_semicontinuity(circle); });
  report(3, [&] { return folner_traces(circle); });
  report(4, [&] { return norm_bounds(circle); });
  report(5, subgroup_invariance);
  report(6, trivial_group_integrality);
  report(7, [&] { return sandwich(circle); });
  report(8, whitehead);
  report(9, complex_approximation);
  const auto t10 = std::chrono::steady_clock::now();
  report(10, [&] {
    auto v = cw_invariants();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t10).count();
    v.detail += ", " + fmt(s) + " s";
    v.ok = v.ok && s < 120.0;
    return v;
  });
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("total %.1f s\n", total);
  return all ? 0 : 1;
}
