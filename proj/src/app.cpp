#include "l2approx/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "l2approx/error.hpp"

namespace l2approx {

namespace {

double num(double x) { return round12(x); }

const char* scheme_name(SchemeType t) {
  switch (t) {
    case SchemeType::Tower:
      return "tower";
    case SchemeType::Folner:
      return "folner";
    case SchemeType::Oracle:
      return "oracle";
  }
  return "?";
}

std::int64_t rank_of(const Group& g) { return g.kind() == Group::Kind::FreeAbelian ? g.parameter() : 0; }

SchemeSpec parse_scheme(const Group& g, const json& j) {
  SchemeSpec s;
  const std::string type = j.value("type", std::string("tower"));
  if (type == "tower") {
    s.type = SchemeType::Tower;
    if (j.contains("levels")) s.levels = j.at("levels").get<std::vector<std::int64_t>>();
    if (j.contains("stationary")) s.stationary = j.at("stationary").get<int>();
    if (j.contains("quotients")) {
      std::vector<Homomorphism> maps;
      std::vector<std::string> labels;
      for (const auto& q : j.at("quotients")) {
        maps.push_back(parse_homomorphism(g, q));
        labels.push_back(q.value("label", maps.back().target().describe()));
      }
      s.quotients = QuotientTower(g, std::move(maps), std::move(labels));
    }
  } else if (type == "folner") {
    s.type = SchemeType::Folner;
    if (j.contains("boxes")) s.boxes = j.at("boxes").get<std::vector<std::int64_t>>();
  } else if (type == "oracle") {
    s.type = SchemeType::Oracle;
  } else {
    throw Error(ErrorKind::ParseError, "unknown scheme type \"" + type + "\"");
  }
  if (j.contains("grid")) s.grid = j.at("grid").get<int>();
  return s;
}

RunOptions run_options(const AppOptions& o) {
  RunOptions r;
  if (o.eps_ker) r.kernel_threshold = *o.eps_ker;
  r.jobs = std::max(1, o.jobs);
  return r;
}

double effective_threshold(const RingMatrix& delta, const AppOptions& o) {
  return o.eps_ker ? *o.eps_ker : default_kernel_threshold(delta);
}

std::vector<std::int64_t> effective_levels(const Problem& p, const AppOptions& o) {
  if (o.levels) return *o.levels;
  if (!p.scheme.levels.empty()) return p.scheme.levels;
  return default_tower_levels(rank_of(p.group));
}

QuotientTower stationary_tower(const Group& g, std::size_t copies) {
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < g.generator_count(); ++i) images.push_back(g.generator(i));
  std::vector<Homomorphism> maps(copies, Homomorphism(g, g, images));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < copies; ++i) labels.push_back("identity#" + std::to_string(i + 1));
  return QuotientTower(g, std::move(maps), std::move(labels));
}

// Explicit and stationary towers take --levels as a level count.
QuotientTower effective_tower(const Problem& p, const AppOptions& o, json& settings) {
  if (p.scheme.quotients) {
    const auto& q = *p.scheme.quotients;
    std::size_t count = q.size();
    if (o.levels && o.levels->size() == 1) count = std::min<std::size_t>(count, static_cast<std::size_t>((*o.levels)[0]));
    std::vector<Homomorphism> maps(q.levels().begin(), q.levels().begin() + static_cast<std::ptrdiff_t>(count));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i) labels.push_back(q.label(i));
    settings["tower"] = "explicit";
    settings["levels"] = labels;
    return QuotientTower(p.group, std::move(maps), std::move(labels));
  }
  if (p.group.is_finite()) {
    std::size_t copies = p.scheme.stationary > 0 ? static_cast<std::size_t>(p.scheme.stationary) : 3;
    if (o.levels && o.levels->size() == 1) copies = static_cast<std::size_t>(std::max<std::int64_t>(0, (*o.levels)[0]));
    settings["tower"] = "stationary";
    settings["levels"] = copies;
    return stationary_tower(p.group, copies);
  }
  if (p.group.kind() != Group::Kind::FreeAbelian) {
    throw Error(ErrorKind::InvalidArgument, "a tower over " + p.group.describe() + " needs explicit \"quotients\"");
  }
  const auto levels = effective_levels(p, o);
  settings["tower"] = "standard";
  settings["levels"] = levels;
  return QuotientTower::standard(p.group.parameter(), levels);
}

FolnerExhaustion effective_exhaustion(const Problem& p, const AppOptions& o, json& settings) {
  if (p.group.kind() != Group::Kind::FreeAbelian) {
    throw Error(ErrorKind::WrongGroup, "Følner boxes are built for Z^n only, not " + p.group.describe());
  }
  std::vector<std::int64_t> boxes = o.boxes ? *o.boxes : p.scheme.boxes;
  if (boxes.empty()) boxes = default_folner_boxes(p.group.parameter());
  settings["boxes"] = boxes;
  return FolnerExhaustion(p.group.parameter(), boxes);
}

int effective_grid(const Problem& p, const AppOptions& o) {
  if (o.grid) return *o.grid;
  if (p.scheme.grid > 0) return p.scheme.grid;
  return default_oracle_grid(rank_of(p.group));
}

struct OracleData {
  std::string method;
  int grid = 0;
  SpectralDensity density;
  double logdet = 0.0;
  double error_estimate = 0.0;
};

std::optional<OracleData> compute_oracle(const Problem& p, const AppOptions& o) {
  const double d = static_cast<double>(p.delta.rows());
  OracleData out;
  if (p.group.kind() == Group::Kind::FreeAbelian) {
    out.method = "torus_quadrature";
    out.grid = effective_grid(p, o);
    const double thr = effective_threshold(p.delta, o);
    const auto spectrum = torus_spectrum(p.delta, out.grid, thr);
    out.density = density_from_eigs(spectrum, d);
    const auto ld = torus_logdet(p.delta, out.grid, thr);
    out.logdet = ld.value;
    out.error_estimate = ld.error_estimate;
    return out;
  }
  if (p.group.is_finite()) {
    out.method = "exact_finite";
    const auto e = finite_level_eigen(p.delta, LevelMethod::Auto, o.eps_ker ? *o.eps_ker : -1.0);
    out.density = density_from_eigs(e, d);
    out.logdet = log_det(e);
    return out;
  }
  return std::nullopt;
}

std::vector<double> default_lambda_grid(double K) {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(K * k / 20.0);
  return g;
}

// Sup-norm radius of the support of Δ (ℤ^n only).
std::int64_t support_radius(const RingMatrix& delta) {
  std::int64_t r = 0;
  for (const auto& g : full_support(delta)) {
    for (auto v : g.data) r = std::max<std::int64_t>(r, std::llabs(v));
  }
  return r;
}

json level_row(const LevelReport& r, const AppOptions& o) {
  json row{{"index", r.index},
           {"label", r.label},
           {"matrix_size", r.matrix_size},
           {"F0", num(r.F0)},
           {"logdet", num(r.logdet)},
           {"max_eigenvalue", num(r.max_eigenvalue)},
           {"jumps", r.density.jumps().size()}};
  json traces = json::array();
  for (const auto& t : r.trace_checks) {
    json tr{{"power", t.power},
            {"limit_exact", t.exact_limit},
            {"limit", num(t.limit)},
            {"level_value", num(t.level_value)},
            {"deviation", num(t.deviation)},
            {"moment_error", num(t.moment_error)}};
    if (!t.exact_level.empty()) {
      tr["level_exact"] = t.exact_level;
      tr["certified"] = t.certified;
      tr["exact_match"] = t.exact_match;
    }
    traces.push_back(std::move(tr));
  }
  row["traces"] = std::move(traces);
  if (o.timings) row["wall_time"] = num(r.wall_time);
  return row;
}

constexpr double kNormTol = 1e-9;
constexpr double kMomentTol = 1e-8;
constexpr double kFolnerTraceTol = 1e-2;

const char* status(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

std::vector<std::int64_t> default_tower_levels(std::int64_t rank) {
  (void)rank;
  return {8, 16, 32, 64, 128, 256};
}

std::vector<std::int64_t> default_folner_boxes(std::int64_t rank) {
  if (rank <= 1) return {4, 8, 16, 32, 64, 128, 256, 512, 1024};
  if (rank == 2) return {2, 4, 8, 16};
  return {1, 2, 3};
}

int default_oracle_grid(std::int64_t rank) {
  if (rank <= 1) return 4096;
  if (rank == 2) return 256;
  return 32;
}

Problem parse_problem(const json& j) {
  try {
    if (!j.is_object() || !j.contains("group")) throw Error(ErrorKind::ParseError, "problem needs a \"group\"");
    Group g = parse_group(j.at("group"));
    std::optional<RingMatrix> delta;
    bool from_a = false;
    if (j.contains("A")) {
      delta = positive_square(parse_matrix(g, j.at("A")));
      from_a = true;
    } else if (j.contains("delta")) {
      delta = parse_matrix(g, j.at("delta"));
    } else if (j.contains("matrix")) {
      delta = parse_matrix(g, j.at("matrix"));
    } else {
      throw Error(ErrorKind::ParseError, "problem needs \"delta\" or \"A\"");
    }
    if (!delta->is_square()) throw Error(ErrorKind::DimensionMismatch, "Δ must be square");
    if (!delta->is_self_adjoint()) throw Error(ErrorKind::NotHermitian, "Δ is not self-adjoint");
    Problem p{g, *delta, from_a, {}, std::nullopt, {}, std::nullopt};
    if (j.contains("scheme")) {
      p.scheme = parse_scheme(g, j.at("scheme"));
    } else if (!g.is_finite() && g.kind() != Group::Kind::FreeAbelian) {
      throw Error(ErrorKind::ParseError, "problem over " + g.describe() + " needs a \"scheme\"");
    }
    if (j.contains("whitehead")) {
      const auto& w = j.at("whitehead");
      auto a = parse_matrix(g, w.at("A"));
      auto b = parse_matrix(g, w.at("B"));
      p.whitehead = std::make_pair(std::move(a), std::move(b));
    }
    if (j.contains("lambda_grid")) p.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
    if (j.contains("sandwich")) {
      const auto& s = j.at("sandwich");
      SandwichSpec spec;
      spec.lambdas = s.at("lambda").get<std::vector<double>>();
      spec.ns = s.at("n").get<std::vector<int>>();
      if (s.contains("K")) spec.K = s.at("K").get<double>();
      p.sandwich = spec;
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

Problem load_problem(const std::string& path) { return parse_problem(load_json(path)); }

DensityResult compute_density(const Problem& p, const AppOptions& o) {
  json settings;
  auto run = run_options(o);
  run.max_moment = 0;
  DensityResult out;
  switch (p.scheme.type) {
    case SchemeType::Tower: {
      const auto tower = effective_tower(p, o, settings);
      if (tower.size() == 0) throw Error(ErrorKind::InsufficientLevels, "tower has no levels");
      const std::size_t last = tower.size() - 1;
      QuotientTower single(tower.source(), {tower.levels()[last]}, {tower.label(last)});
      const auto reports = run_tower(p.delta, single, run);
      out.density = reports.back().density;
      out.source = "tower:" + reports.back().label;
      break;
    }
    case SchemeType::Folner: {
      const auto exh = effective_exhaustion(p, o, settings);
      if (exh.size() == 0) throw Error(ErrorKind::InsufficientLevels, "no boxes");
      const FolnerExhaustion single(exh.rank(), {exh.radii().back()});
      const auto reports = run_folner(p.delta, single, run);
      out.density = reports.back().density;
      out.source = "folner:" + reports.back().label;
      break;
    }
    case SchemeType::Oracle: {
      const auto oracle = compute_oracle(p, o);
      if (!oracle) throw Error(ErrorKind::WrongGroup, "no oracle for " + p.group.describe());
      out.density = oracle->density;
      out.source = oracle->method + (oracle->grid > 0 ? ":grid=" + std::to_string(oracle->grid) : "");
      break;
    }
  }
  return out;
}

json density_report(const DensityResult& r) {
  json j = density_to_json(r.density);
  j["source"] = r.source;
  j["F0"] = num(betti(r.density));
  return j;
}

Outcome run_approx(const Problem& p, const AppOptions& o) {
  Outcome out;
  const double d = static_cast<double>(p.delta.rows());
  const double K = k_bound(p.delta);
  const auto run = run_options(o);

  json settings{{"scheme", scheme_name(p.scheme.type)},
                {"tol", num(o.tol)},
                {"eps_ker", num(effective_threshold(p.delta, o))},
                {"max_moment", run.max_moment},
                {"norm_tol", kNormTol},
                {"moment_tol", kMomentTol},
                {"tail", "last ceil(L/3) levels"}};

  std::vector<LevelReport> reports;
  std::optional<QuotientTower> tower;
  std::optional<FolnerExhaustion> exh;
  if (p.scheme.type == SchemeType::Tower) {
    tower = effective_tower(p, o, settings);
    reports = run_tower(p.delta, *tower, run);
  } else if (p.scheme.type == SchemeType::Folner) {
    exh = effective_exhaustion(p, o, settings);
    reports = run_folner(p.delta, *exh, run);
    settings["folner_trace_tol"] = kFolnerTraceTol;
  }

  const auto oracle = compute_oracle(p, o);
  if (oracle && oracle->grid > 0) settings["oracle_grid"] = oracle->grid;

  json report{{"command", "approx"},
              {"group", group_to_json(p.group)},
              {"d", p.delta.rows()},
              {"k_bound", num(K)},
              {"delta_from_A", p.from_a}};

  json levels = json::array();
  const std::int64_t radius = exh ? support_radius(p.delta) : 0;
  for (const auto& r : reports) {
    json row = level_row(r, o);
    if (exh) {
      row["radius"] = exh->radii()[r.index];
      row["defect"] = num(exh->defect(r.index, radius));
    }
    levels.push_back(std::move(row));
  }
  report["levels"] = std::move(levels);

  if (oracle) {
    report["oracle"] = {{"method", oracle->method},
                        {"grid", oracle->grid},
                        {"value", num(oracle->logdet)},
                        {"error_estimate", num(oracle->error_estimate)},
                        {"F0", num(betti(oracle->density))}};
  } else {
    report["oracle"] = nullptr;
  }

  json verdicts = json::object();
  auto record = [&](const std::string& name, json v) {
    const std::string s = v.at("status");
    if (s == "fail") out.pass = false;
    if (s == "error") out.computation_error = true;
    verdicts[name] = std::move(v);
  };

  if (!reports.empty()) {
    double max_eig = 0.0;
    int violations = 0;
    for (const auto& r : reports) {
      max_eig = std::max(max_eig, r.max_eigenvalue);
      if (r.max_eigenvalue > K + kNormTol) ++violations;
    }
    record("norm_bound", {{"status", status(violations == 0)},
                          {"k_bound", num(K)},
                          {"max_eigenvalue", num(max_eig)},
                          {"violations", violations}});

    double max_moment_error = 0.0;
    bool moments_ok = true;
    for (const auto& r : reports) {
      for (const auto& t : r.trace_checks) {
        max_moment_error = std::max(max_moment_error, t.moment_error);
        moments_ok = moments_ok && t.moment_error <= kMomentTol * std::max(1.0, std::abs(t.level_value));
      }
    }
    if (tower) {
      int certified = 0;
      int matches = 0;
      for (const auto& r : reports) {
        for (const auto& t : r.trace_checks) {
          certified += t.certified ? 1 : 0;
          matches += (t.certified && t.exact_match) ? 1 : 0;
        }
      }
      record("traces", {{"status", status(moments_ok && certified == matches)},
                        {"certified_checks", certified},
                        {"exact_matches", matches},
                        {"max_moment_error", num(max_moment_error)}});
    } else {
      json final_dev = json::array();
      bool ok = moments_ok;
      for (const auto& t : reports.back().trace_checks) {
        final_dev.push_back({{"power", t.power}, {"deviation", num(t.deviation)}});
        ok = ok && t.deviation < kFolnerTraceTol;
      }
      record("traces", {{"status", status(ok)},
                        {"final_deviation", final_dev},
                        {"max_moment_error", num(max_moment_error)}});
    }
  }

  if (oracle && !reports.empty()) {
    std::vector<double> grid = o.lambda_grid ? *o.lambda_grid : p.lambda_grid;
    if (grid.empty()) grid = default_lambda_grid(K);
    settings["lambda_grid"] = json::array();
    for (double x : grid) settings["lambda_grid"].push_back(num(x));
    try {
      const auto v = squeeze_check(reports, oracle->density, grid, o.tol);
      json pts = json::array();
      for (const auto& pt : v.points) {
        pts.push_back({{"lambda", num(pt.lambda)},
                       {"upper_limit", num(pt.upper_limit)},
                       {"lower_limit", num(pt.lower_limit)},
                       {"oracle", num(pt.oracle)},
                       {"ok", pt.ok}});
      }
      record("squeeze", {{"status", status(v.ok)}, {"tail_start", v.tail_start}, {"points", pts}});
    } catch (const Error& e) {
      record("squeeze", {{"status", "error"}, {"error", std::string(e.what())}});
    }

    const double final_F0 = reports.back().F0;
    const double oracle_F0 = betti(oracle->density);
    record("betti_limit", {{"status", status(std::abs(final_F0 - oracle_F0) <= o.tol)},
                           {"final_F0", num(final_F0)},
                           {"oracle_F0", num(oracle_F0)}});
  }

  if (tower && !reports.empty()) {
    if (p.delta.has_integer_coefficients()) {
      try {
        const auto v = sintapr_check(reports, d, K, oracle ? std::optional<double>(oracle->logdet) : std::nullopt,
                                     o.tol);
        json lv = json::array();
        for (const auto& l : v.levels) {
          lv.push_back({{"integral", num(l.integral)},
                        {"bound", num(l.bound)},
                        {"identity_error", num(l.identity_error)},
                        {"ok", l.ok}});
        }
        json sv{{"status", status(v.ok)},
                {"hypothesis_ok", v.hypothesis_ok},
                {"limsup_estimate", num(v.limsup_estimate)},
                {"tail_max", num(v.tail_max)},
                {"levels", lv}};
        sv["oracle"] = v.oracle ? json(num(*v.oracle)) : json(nullptr);
        record("sintapr", std::move(sv));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::HypothesisViolated) throw;
        record("sintapr", {{"status", "fail"}, {"error", std::string(e.what())}});
      }
    } else {
      record("sintapr", {{"status", "not_applicable"}, {"reason", "Δ is not over the integral group ring"}});
    }
  }

  if (p.sandwich && !reports.empty()) {
    const double sK = p.sandwich->K ? *p.sandwich->K : K;
    json rows = json::array();
    bool all_ok = true;
    for (double lambda : p.sandwich->lambdas) {
      for (int n : p.sandwich->ns) {
        json row{{"lambda", num(lambda)}, {"n", n}, {"K", num(sK)}};
        try {
          const auto poly = build_sandwich(lambda, n, sK);
          bool ok = poly.certified;
          double worst = 0.0;
          for (const auto& r : reports) {
            const auto c = sandwich_level_check(poly, r, d);
            ok = ok && c.ok;
            worst = std::max({worst, c.lower - c.value, c.value - c.upper});
          }
          row["degree"] = poly.degree;
          row["certified"] = poly.certified;
          row["grid_used"] = poly.grid_used;
          row["worst_violation"] = num(worst);
          row["ok"] = ok;
          all_ok = all_ok && ok;
        } catch (const Error& e) {
          row["ok"] = false;
          row["error"] = std::string(e.what());
          all_ok = false;
        }
        rows.push_back(std::move(row));
      }
    }
    record("sandwich", {{"status", status(all_ok)}, {"checks", rows}});
  }

  if (p.whitehead) {
    if (!tower) {
      record("whitehead", {{"status", "not_applicable"}, {"reason", "Whitehead checks run on towers"}});
    } else {
      const auto v = whitehead_check(p.whitehead->first, p.whitehead->second, *tower,
                                     oracle && oracle->grid > 0 ? oracle->grid : 0, o.tol, run);
      json lv = json::array();
      for (double x : v.level_logdets) lv.push_back(num(x));
      json wv{{"status", v.status}, {"integral", v.integral}, {"level_logdets", lv}};
      wv["oracle"] = v.oracle ? json(num(*v.oracle)) : json(nullptr);
      record("whitehead", std::move(wv));
    }
  }

  report["settings"] = std::move(settings);
  report["verdicts"] = std::move(verdicts);
  report["status"] = out.computation_error ? "ERROR" : (out.pass ? "PASS" : "FAIL");
  out.report = std::move(report);
  return out;
}

Outcome run_cw(const ChainComplexSpec& spec, const AppOptions& o, const std::string& method) {
  CwOptions c;
  if (method == "auto") {
    c.method = CwMethod::Auto;
  } else if (method == "oracle") {
    c.method = CwMethod::Oracle;
  } else if (method == "tower") {
    c.method = CwMethod::Tower;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown cw method \"" + method + "\"");
  }
  c.grid = o.grid ? *o.grid : default_oracle_grid(rank_of(spec.group));
  c.levels = o.levels ? *o.levels : default_tower_levels(rank_of(spec.group));
  c.tol = o.tol;
  c.run = run_options(o);
  c.run.max_moment = 0;

  const auto rep = l2_invariants(spec, c);
  Outcome out;
  json degrees = json::array();
  for (const auto& deg : rep.degrees) {
    degrees.push_back({{"degree", deg.degree},
                       {"betti", num(deg.betti)},
                       {"logdet", num(deg.logdet)},
                       {"k_bound", num(deg.k_bound)},
                       {"det_class", deg.det_class ? "consistent with determinant class" : "not confirmed"},
                       {"lower_bound", num(deg.lower_bound)},
                       {"method", deg.method}});
  }
  const bool euler_ok = std::abs(rep.l2_euler - static_cast<double>(rep.cellular_euler)) <= c.tol;
  out.pass = euler_ok;
  json settings{{"method", method},
                {"grid", c.grid},
                {"levels", c.levels},
                {"acyclic_tol", num(c.acyclic_tol)},
                {"tol", num(c.tol)}};
  if (o.eps_ker) settings["eps_ker"] = num(*o.eps_ker);
  json report{{"command", "cw"},
              {"group", group_to_json(spec.group)},
              {"cells", spec.dims},
              {"settings", settings},
              {"degrees", degrees},
              {"l2_euler", num(rep.l2_euler)},
              {"cellular_euler", rep.cellular_euler},
              {"euler_match", euler_ok}};
  if (rep.torsion) {
    report["torsion"] = num(*rep.torsion);
    report["torsion_status"] = "defined";
  } else {
    report["torsion"] = nullptr;
    report["torsion_status"] = std::string(to_string(ErrorKind::TorsionUndefined)) + ": complex is not L2-acyclic";
  }
  report["status"] = out.pass ? "PASS" : "FAIL";
  out.report = std::move(report);
  return out;
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace l2approx
