#include "l2approx/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "l2approx/error.hpp"

namespace l2approx {

namespace fixtures {

RingElement laurent(const Group& z, const std::vector<std::pair<std::int64_t, Coefficient>>& terms) {
  RingElement x(z);
  for (const auto& [k, c] : terms) x.add_term(GroupElement{{k}}, c);
  return x;
}

RingElement term(const Group& g, const GroupElement& x, Coefficient c) { return RingElement::delta(g, x, c); }

RingMatrix circle_laplacian() {
  const auto z = Group::free_abelian(1);
  return RingMatrix::scalar(laurent(z, {{-1, -1}, {0, 2}, {1, -1}}));
}

RingMatrix torus_laplacian(std::int64_t rank) {
  const auto g = Group::free_abelian(rank);
  RingElement x = RingElement::delta(g, g.identity(), Coefficient(2 * rank));
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    x.add_term(g.generator(i), -1);
    x.add_term(g.inverse(g.generator(i)), -1);
  }
  return RingMatrix::scalar(x);
}

RingMatrix elementary_E() {
  const auto z = Group::free_abelian(1);
  RingMatrix m = RingMatrix::identity(z, 2);
  m(0, 1) = laurent(z, {{0, 1}, {1, -1}});
  return m;
}

RingMatrix elementary_E_inverse() {
  const auto z = Group::free_abelian(1);
  RingMatrix m = RingMatrix::identity(z, 2);
  m(0, 1) = laurent(z, {{0, -1}, {1, 1}});
  return m;
}

RingMatrix complex_shift_square(const Coefficient& alpha) {
  const auto z = Group::free_abelian(1);
  return positive_square(RingMatrix::scalar(laurent(z, {{0, 1}, {1, -alpha}})));
}

Group s3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const auto n = static_cast<std::int64_t>(perms.size());
  std::vector<std::vector<std::int64_t>> table(perms.size(), std::vector<std::int64_t>(perms.size()));
  std::vector<std::string> names;
  for (std::int64_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(perms[a][0] + 1) + std::to_string(perms[a][1] + 1) +
                    std::to_string(perms[a][2] + 1));
    for (std::int64_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      table[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  }
  return Group::finite_table(std::move(table), std::move(names));
}

ChainComplexSpec circle_complex() {
  const auto z = Group::free_abelian(1);
  return {z, {1, 1}, {RingMatrix::scalar(laurent(z, {{0, -1}, {1, 1}}))}};
}

ChainComplexSpec torus_complex() {
  const auto g = Group::free_abelian(2);
  const GroupElement a{{1, 0}};
  const GroupElement b{{0, 1}};
  const auto e = g.identity();
  RingMatrix d1(g, 1, 2);
  d1(0, 0) = term(g, a) - term(g, e);
  d1(0, 1) = term(g, b) - term(g, e);
  RingMatrix d2(g, 2, 1);
  d2(0, 0) = term(g, e) - term(g, b);
  d2(1, 0) = term(g, a) - term(g, e);
  return {g, {1, 2, 1}, {d1, d2}};
}

ChainComplexSpec point_complex() { return {Group::trivial(), {1}, {}}; }

RingMatrix random_matrix(const Group& g, std::size_t d, std::mt19937_64& rng, int terms, int c, int spread) {
  RingMatrix m(g, d, d);
  std::uniform_int_distribution<int> count(0, terms);
  std::uniform_int_distribution<int> coeff(-c, c);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const int k = count(rng);
      for (int t = 0; t < k; ++t) m(i, j).add_term(g.random_element(rng, spread), coeff(rng));
    }
  }
  return m;
}

}  // namespace fixtures

bool SuiteResult::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

json SuiteResult::to_json() const {
  json rows = json::array();
  for (const auto& c : checks) rows.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"suite", suite}, {"seed", seed}, {"status", ok() ? "PASS" : "FAIL"}, {"checks", rows}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"traces", "squeeze", "determinant", "whitehead", "subgroup"};
  return names;
}

std::uint64_t seed_from_env() {
  constexpr std::uint64_t kDefault = 20240611;
  const char* s = std::getenv("L2APPROX_SEED");
  if (s == nullptr || *s == '\0') return kDefault;
  char* end = nullptr;
  const auto v = std::strtoull(s, &end, 10);
  return (end != nullptr && *end == '\0') ? v : kDefault;
}

namespace {

using fixtures::laurent;
using fixtures::term;

class Collector {
 public:
  explicit Collector(SuiteResult& s) : s_(s) {}

  void add(std::string name, bool ok, std::string detail = {}) {
    s_.checks.push_back({std::move(name), ok, std::move(detail)});
  }

  // Runs `f`; an exception fails the check with its message.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  SuiteResult& s_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

RunOptions opts(int jobs, int max_moment = 3) {
  RunOptions r;
  r.jobs = jobs;
  r.max_moment = max_moment;
  return r;
}

struct TraceSummary {
  int certified = 0;
  int matched = 0;
  double moment_error = 0.0;
};

TraceSummary summarize(const std::vector<LevelReport>& reports) {
  TraceSummary s;
  for (const auto& r : reports) {
    for (const auto& t : r.trace_checks) {
      if (t.certified) {
        ++s.certified;
        if (t.exact_match) ++s.matched;
      }
      s.moment_error = std::max(s.moment_error, t.moment_error / std::max(1.0, std::abs(t.level_value)));
    }
  }
  return s;
}

void tower_trace_check(Collector& c, const std::string& name, const RingMatrix& delta, const QuotientTower& tower,
                       int jobs) {
  c.guarded(name, [&] {
    const auto reports = run_tower(delta, tower, opts(jobs));
    const auto s = summarize(reports);
    c.add(name, s.certified == s.matched && s.moment_error <= 1e-8,
          std::to_string(s.matched) + "/" + std::to_string(s.certified) +
              " certified exact matches, moment error " + fmt(s.moment_error));
  });
}

GroupElement s3_perm(const Group& s3, const std::string& one_line) {
  const auto& names = s3.names();
  return GroupElement{{std::find(names.begin(), names.end(), one_line) - names.begin()}};
}

void suite_traces(Collector& c, std::mt19937_64& rng, int jobs) {
  tower_trace_check(c, "circle laplacian, Z/N tower", fixtures::circle_laplacian(),
                    QuotientTower::standard(1, {2, 3, 4, 8, 16, 32, 64}), jobs);
  tower_trace_check(c, "torus laplacian, (Z/N)^2 tower", fixtures::torus_laplacian(2),
                    QuotientTower::standard(2, {2, 3, 4, 8, 16}), jobs);

  for (int trial = 0; trial < 3; ++trial) {
    const auto g = Group::free_abelian(2);
    const auto delta = positive_square(fixtures::random_matrix(g, 2, rng, 2, 2, 2));
    tower_trace_check(c, "random A*A over Z^2 #" + std::to_string(trial + 1), delta,
                      QuotientTower::standard(2, {3, 5, 8, 16}), jobs);
  }

  c.guarded("free group F2 towers", [&] {
    const auto f2 = Group::free(2);
    const auto sym = fixtures::s3();
    std::vector<Homomorphism> maps{Homomorphism(f2, sym, {s3_perm(sym, "213"), s3_perm(sym, "231")})};
    std::vector<std::string> labels{"S3"};
    for (std::int64_t n : {3, 5, 8}) {
      const auto target = cyclic_power(n, 2);
      maps.emplace_back(f2, target, std::vector<GroupElement>{GroupElement{{1, 1, 0}}, GroupElement{{1, 0, 1}}});
      labels.push_back("(Z/" + std::to_string(n) + ")^2");
    }
    const QuotientTower tower(f2, maps, labels);
    RingMatrix a(f2, 1, 1);
    a(0, 0) = term(f2, GroupElement{{1}}) + term(f2, GroupElement{{2}}) - term(f2, f2.identity(), 2);
    tower_trace_check(c, "free group F2, a+b-2", positive_square(a), tower, jobs);
    tower_trace_check(c, "free group F2, random 2x2", positive_square(fixtures::random_matrix(f2, 2, rng, 2, 1, 1)),
                      tower, jobs);
  });

  c.guarded("exact trace of circle laplacian cubed", [&] {
    const auto t = trace_powers_exact(fixtures::circle_laplacian(), 3);
    c.add("exact trace of circle laplacian cubed", t[1] == Coefficient(2) && t[2] == Coefficient(6) &&
                                                       t[3] == Coefficient(20),
          "tr = " + t[1].to_string() + ", " + t[2].to_string() + ", " + t[3].to_string());
  });

  c.guarded("finite group trace vs regular representation", [&] {
    const std::vector<double> poly{0.5, 1.0, -2.0, 1.0 / 3.0};
    double worst = 0.0;
    for (const auto& g : {fixtures::s3(), Group::cyclic(5), Group::product(Group::cyclic(2), Group::cyclic(3))}) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto delta = positive_square(fixtures::random_matrix(g, 2, rng));
        const double exact = trace_poly_exact(delta, poly);
        const double numeric = spectral_trace(finite_level_eigen(delta, LevelMethod::Dense), poly);
        worst = std::max(worst, std::abs(exact - numeric) / std::max(1.0, std::abs(exact)));
      }
    }
    c.add("finite group trace vs regular representation", worst <= 1e-9, "max relative error " + fmt(worst));
  });

  c.guarded("folner traces, circle laplacian", [&] {
    const FolnerExhaustion exh(1, {4, 8, 16, 32, 64, 128, 256, 512, 1024});
    const auto reports = run_folner(fixtures::circle_laplacian(), exh, opts(jobs));
    double err1 = 0.0;
    double err2 = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const double m = static_cast<double>(exh.radii()[i]);
      const auto& t = reports[i].trace_checks;
      err1 = std::max(err1, std::abs(t[0].level_value - 2.0));
      err2 = std::max(err2, std::abs(t[1].level_value - (6.0 - 2.0 / (2.0 * m + 1.0))));
      if (i > 0) monotone = monotone && t[2].deviation <= reports[i - 1].trace_checks[2].deviation;
    }
    const double last = reports.back().trace_checks[2].deviation;
    c.add("folner traces, circle laplacian", err1 <= 1e-9 && err2 <= 1e-9 && monotone && last < 1e-2,
          "tr x err " + fmt(err1) + ", tr x^2 err " + fmt(err2) + ", final x^3 deviation " + fmt(last));
  });
}

void suite_squeeze(Collector& c, std::mt19937_64& rng, int jobs) {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(0.2 * k);

  c.guarded("circle laplacian squeeze", [&] {
    const auto delta = fixtures::circle_laplacian();
    const auto reports = run_tower(delta, QuotientTower::standard(1, {8, 16, 32, 64, 128, 256}), opts(jobs, 0));
    const auto v = squeeze_check(reports, torus_density(delta, 4096), grid);
    c.add("circle laplacian squeeze", v.ok, std::to_string(v.points.size()) + " grid points");
  });

  c.guarded("torus laplacian squeeze", [&] {
    const auto delta = fixtures::torus_laplacian(2);
    std::vector<double> g2;
    for (int k = 0; k <= 20; ++k) g2.push_back(0.4 * k);
    const auto reports = run_tower(delta, QuotientTower::standard(2, {16, 32, 64, 128, 256}), opts(jobs, 0));
    const auto v = squeeze_check(reports, torus_density(delta, 256), g2);
    c.add("torus laplacian squeeze", v.ok, std::to_string(v.points.size()) + " grid points");
  });

  c.guarded("stationary tower equals oracle", [&] {
    const auto g = fixtures::s3();
    const auto delta = positive_square(fixtures::random_matrix(g, 2, rng));
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < g.generator_count(); ++i) images.push_back(g.generator(i));
    const QuotientTower tower(g, std::vector<Homomorphism>(3, Homomorphism(g, g, images)));
    const auto reports = run_tower(delta, tower, opts(jobs, 0));
    const auto oracle = density_from_eigs(finite_level_eigen(delta), 2.0);
    double worst = 0.0;
    for (const auto& r : reports) {
      for (const auto& j : oracle.jumps()) worst = std::max(worst, std::abs(r.density(j.lambda) - oracle(j.lambda)));
    }
    const auto v = squeeze_check(reports, oracle, grid, 1e-12);
    c.add("stationary tower equals oracle", worst <= 1e-12 && v.ok, "max deviation " + fmt(worst));
  });

  c.guarded("sandwich inequality on tower levels", [&] {
    const auto delta = fixtures::circle_laplacian();
    const auto reports = run_tower(delta, QuotientTower::standard(1, {8, 16, 32, 64}), opts(jobs, 0));
    bool ok = true;
    int max_degree = 0;
    for (double lambda : {0.0, 1.0, 2.0}) {
      for (int n : {2, 4, 8}) {
        const auto p = build_sandwich(lambda, n, 4.0);
        max_degree = std::max(max_degree, p.degree);
        ok = ok && p.certified && p.degree <= 400;
        for (const auto& r : reports) ok = ok && sandwich_level_check(p, r, 1.0).ok;
      }
    }
    c.add("sandwich inequality on tower levels", ok, "max degree " + std::to_string(max_degree));
  });

  c.guarded("random complex shift has trivial kernel", [&] {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> radius(0.2, 0.8);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 3; ++trial) {
      const double r = trial == 2 ? 1.0 / radius(rng) : radius(rng);
      const double th = angle(rng);
      const auto alpha = Coefficient::from_double(r * std::cos(th), r * std::sin(th));
      const auto v = complex_tower_run(fixtures::complex_shift_square(alpha),
                                       QuotientTower::standard(1, {8, 16, 32, 64}), 1024, 0.02, opts(jobs, 0));
      for (const auto& rep : v.reports) ok = ok && rep.F0 == 0.0;
      ok = ok && v.ok && v.oracle_F0 == 0.0;
      detail += "|alpha|=" + fmt(r) + " ";
    }
    c.add("random complex shift has trivial kernel", ok, detail);
  });
}

void suite_determinant(Collector& c, std::mt19937_64& rng, int jobs) {
  c.guarded("trivial group integrality", [&] {
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> entry(-3, 3);
    int negatives = 0;
    int mismatches = 0;
    double min_value = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
      const int d = dim(rng);
      const int k = dim(rng);
      std::vector<std::vector<long>> a(k, std::vector<long>(d));
      for (auto& row : a) {
        for (auto& x : row) x = entry(rng);
      }
      IntegerMatrix m(d, std::vector<mpz_class>(d));
      Eigen::MatrixXd md(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          long s = 0;
          for (int r = 0; r < k; ++r) s += a[r][i] * a[r][j];
          m[i][j] = s;
          md(i, j) = static_cast<double>(s);
        }
      }
      const auto exact = trivial_group_logdet_exact(m);
      min_value = std::min(min_value, exact.value);
      if (exact.value < 0.0) ++negatives;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(md, Eigen::EigenvaluesOnly);
      const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
      double numeric = 0.0;
      std::size_t kernel = 0;
      for (int i = 0; i < d; ++i) {
        const double l = es.eigenvalues()(i);
        if (l > 1e-9 * scale) {
          numeric += std::log(l);
        } else {
          ++kernel;
        }
      }
      if (std::abs(numeric - exact.value) > 1e-6 * std::max(1.0, exact.value) || kernel != exact.kernel_dimension) {
        ++mismatches;
      }
    }
    c.add("trivial group integrality", negatives == 0 && mismatches == 0,
          "min lnDet " + fmt(min_value) + ", numeric mismatches " + std::to_string(mismatches));
  });

  c.guarded("finite group semi-integrality", [&] {
    double worst = 0.0;
    double min_value = 1e300;
    for (const auto& g : {fixtures::s3(), Group::cyclic(5), Group::product(Group::cyclic(2), Group::cyclic(2))}) {
      for (int trial = 0; trial < 4; ++trial) {
        const auto delta = positive_square(fixtures::random_matrix(g, 2, rng));
        const double numeric = log_det(finite_level_eigen(delta));
        const auto rep = regular_representation(delta);
        const auto& reg = std::get<Eigen::MatrixXd>(rep);
        IntegerMatrix m(reg.rows(), std::vector<mpz_class>(reg.cols()));
        for (Eigen::Index i = 0; i < reg.rows(); ++i) {
          for (Eigen::Index j = 0; j < reg.cols(); ++j) m[i][j] = static_cast<long>(std::lround(reg(i, j)));
        }
        const double exact = trivial_group_logdet_exact(m).value / static_cast<double>(*g.order());
        worst = std::max(worst, std::abs(exact - numeric));
        min_value = std::min(min_value, exact);
      }
    }
    c.add("finite group semi-integrality", min_value >= 0.0 && worst <= 1e-8,
          "min lnDet " + fmt(min_value) + ", exact vs numeric " + fmt(worst));
  });

  c.guarded("torus lower bounds", [&] {
    double min_value = 1e300;
    for (int trial = 0; trial < 10; ++trial) {
      const auto g = Group::free_abelian(1);
      const auto delta = positive_square(fixtures::random_matrix(g, trial % 2 + 1, rng, 2, 2, 2));
      min_value = std::min(min_value, torus_logdet(delta, 1024).value);
    }
    for (int trial = 0; trial < 4; ++trial) {
      const auto g = Group::free_abelian(2);
      const auto delta = positive_square(fixtures::random_matrix(g, 1, rng, 3, 2, 1));
      min_value = std::min(min_value, torus_logdet(delta, 256).value);
    }
    c.add("torus lower bounds", min_value >= -0.02, "min lnDet " + fmt(min_value));
  });

  c.guarded("mahler measure vs torus quadrature", [&] {
    std::uniform_int_distribution<int> deg(1, 6);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> nonzero(1, 3);
    const auto z = Group::free_abelian(1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = deg(rng);
      std::vector<std::pair<std::int64_t, Coefficient>> terms;
      for (int k = 0; k <= n; ++k) {
        int v = coeff(rng);
        if (k == 0 || k == n) v = nonzero(rng) * (coeff(rng) < 0 ? -1 : 1);
        terms.emplace_back(k, v);
      }
      const auto p = laurent(z, terms);
      const double mahler = mahler_1x1(p);
      const double quad = torus_logdet(positive_square(RingMatrix::scalar(p)), 8192).value;
      worst = std::max(worst, std::abs(quad - 2.0 * mahler));
    }
    c.add("mahler measure vs torus quadrature", worst <= 1e-3, "max |torus - 2 ln M| " + fmt(worst));
  });

  c.guarded("log-integral bound on integral towers", [&] {
    bool ok = true;
    double identity = 0.0;
    const std::pair<RingMatrix, QuotientTower> cases[] = {
        {fixtures::circle_laplacian(), QuotientTower::standard(1, {8, 16, 32, 64, 128, 256})},
        {fixtures::torus_laplacian(2), QuotientTower::standard(2, {8, 16, 32})},
        {positive_square(fixtures::elementary_E()), QuotientTower::standard(1, {8, 16, 32})}};
    for (const auto& [delta, tower] : cases) {
      const auto reports = run_tower(delta, tower, opts(jobs, 0));
      const auto v = sintapr_check(reports, static_cast<double>(delta.rows()), k_bound(delta));
      ok = ok && v.ok && v.hypothesis_ok;
      for (const auto& l : v.levels) identity = std::max(identity, l.identity_error);
    }
    c.add("log-integral bound on integral towers", ok && identity <= 1e-8, "identity error " + fmt(identity));
  });
}

RingMatrix elementary(const Group& g, std::size_t d, std::size_t i, std::size_t j, const RingElement& r) {
  RingMatrix m = RingMatrix::identity(g, d);
  m(i, j) = r;
  return m;
}

void suite_whitehead(Collector& c, std::mt19937_64& rng, int jobs) {
  c.guarded("elementary matrix E", [&] {
    const auto v = whitehead_check(fixtures::elementary_E(), fixtures::elementary_E_inverse(),
                                   QuotientTower::standard(1, {8, 16, 32, 64}), 4096, 0.02, opts(jobs, 0));
    double worst = 0.0;
    for (double x : v.level_logdets) worst = std::max(worst, std::abs(x));
    c.add("elementary matrix E", v.status == "pass" && v.oracle && std::abs(*v.oracle) <= 0.01,
          "max |level lnDet| " + fmt(worst) + ", oracle " + fmt(v.oracle.value_or(NAN)));
  });

  c.guarded("unit t", [&] {
    const auto z = Group::free_abelian(1);
    const auto v = whitehead_check(RingMatrix::scalar(laurent(z, {{1, 1}})), RingMatrix::scalar(laurent(z, {{-1, 1}})),
                                   QuotientTower::standard(1, {8, 16, 32}), 256, 0.02, opts(jobs, 0));
    bool exact = true;
    for (double x : v.level_logdets) exact = exact && std::abs(x) <= 1e-12;
    c.add("unit t", v.status == "pass" && exact, "status " + v.status);
  });

  c.guarded("random elementary products over Z^2", [&] {
    const auto g = Group::free_abelian(2);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      RingMatrix a = RingMatrix::identity(g, 2);
      RingMatrix b = RingMatrix::identity(g, 2);
      for (int step = 0; step < 3; ++step) {
        const std::size_t i = step % 2;
        RingElement r(g);
        std::uniform_int_distribution<int> coeff(-1, 1);
        for (int t = 0; t < 2; ++t) r.add_term(g.random_element(rng, 1), coeff(rng));
        a = a * elementary(g, 2, i, 1 - i, r);
        b = elementary(g, 2, i, 1 - i, r.scaled(-1)) * b;
      }
      const auto v = whitehead_check(a, b, QuotientTower::standard(2, {4, 8, 16}), 128, 0.02, opts(jobs, 0));
      ok = ok && v.status == "pass";
      for (double x : v.level_logdets) worst = std::max(worst, std::abs(x));
      if (v.oracle) worst = std::max(worst, std::abs(*v.oracle));
    }
    c.add("random elementary products over Z^2", ok, "max |lnDet| " + fmt(worst));
  });

  c.guarded("non-integral pair flagged", [&] {
    const auto z = Group::free_abelian(1);
    const auto v = whitehead_check(RingMatrix::scalar(laurent(z, {{0, 2}})),
                                   RingMatrix::scalar(laurent(z, {{0, Coefficient(mpq_class(1, 2))}})),
                                   QuotientTower::standard(1, {8, 16}), 64, 0.02, opts(jobs, 0));
    bool values = true;
    for (double x : v.level_logdets) values = values && std::abs(x - 2.0 * std::log(2.0)) <= 1e-9;
    c.add("non-integral pair flagged", v.status == "not_applicable" && !v.integral && values,
          "status " + v.status);
  });

  c.guarded("non-inverse pair rejected", [&] {
    bool rejected = false;
    try {
      whitehead_check(fixtures::elementary_E(), fixtures::elementary_E(), QuotientTower::standard(1, {8}), 0);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::NotInverse;
    }
    c.add("non-inverse pair rejected", rejected);
  });
}

void subgroup_case(Collector& c, const std::string& name, const RingMatrix& delta, const Homomorphism& embedding) {
  c.guarded(name, [&] {
    const auto r = subgroup_invariance_check(delta, embedding, 1e-9);
    c.add(name, r.ok, "max deviation " + fmt(r.max_deviation));
  });
}

void suite_subgroup(Collector& c, std::mt19937_64& rng, int) {
  const auto z2 = Group::cyclic(2);
  const auto z3 = Group::cyclic(3);
  const auto z4 = Group::cyclic(4);
  {
    RingMatrix a(z2, 1, 1);
    a(0, 0) = term(z2, GroupElement{{0}}) - term(z2, GroupElement{{1}});
    subgroup_case(c, "Z/2 in Z/4, (1-s)*(1-s)", positive_square(a), Homomorphism(z2, z4, {GroupElement{{2}}}));
  }
  subgroup_case(c, "Z/2 in Z/4, random 2x2", positive_square(fixtures::random_matrix(z2, 2, rng)),
                Homomorphism(z2, z4, {GroupElement{{2}}}));
  subgroup_case(c, "Z/3 in Z/6, random 2x2", positive_square(fixtures::random_matrix(z3, 2, rng)),
                Homomorphism(z3, Group::cyclic(6), {GroupElement{{2}}}));
  const auto sym = fixtures::s3();
  subgroup_case(c, "trivial in S3, random 3x3", positive_square(fixtures::random_matrix(Group::trivial(), 3, rng)),
                Homomorphism(Group::trivial(), sym, {}));
  subgroup_case(c, "Z/2 in S3, random 2x2", positive_square(fixtures::random_matrix(z2, 2, rng)),
                Homomorphism(z2, sym, {s3_perm(sym, "213")}));
  subgroup_case(c, "Z/3 in Z/2 x Z/3, random 2x2", positive_square(fixtures::random_matrix(z3, 2, rng)),
                Homomorphism(z3, Group::product(z2, z3), {GroupElement{{1, 0, 1}}}));
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int jobs) {
  SuiteResult s;
  s.suite = name;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  Collector c(s);
  if (name == "traces") {
    suite_traces(c, rng, jobs);
  } else if (name == "squeeze") {
    suite_squeeze(c, rng, jobs);
  } else if (name == "determinant") {
    suite_determinant(c, rng, jobs);
  } else if (name == "whitehead") {
    suite_whitehead(c, rng, jobs);
  } else if (name == "subgroup") {
    suite_subgroup(c, rng, jobs);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown suite \"" + name + "\"");
  }
  return s;
}

}  // namespace l2approx
