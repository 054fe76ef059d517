#include "l2approx/schemes.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <numbers>
#include <thread>

#include "l2approx/error.hpp"

namespace l2approx {

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads <= 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<Result> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_self_adjoint(const RingMatrix& delta) {
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "Δ must be square");
  if (!delta.is_self_adjoint()) throw Error(ErrorKind::NotHermitian, "Δ must be self-adjoint");
}

void fill_spectral_fields(LevelReport& rep, double d) {
  rep.density = density_from_eigs(rep.eigen, d);
  rep.F0 = betti(rep.density);
  rep.logdet = log_det(rep.eigen);
  rep.max_eigenvalue = max_eigenvalue(rep.eigen);
}

std::vector<double> monomial(int m) {
  std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
  p.back() = 1.0;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------

QuotientTower::QuotientTower(Group source, std::vector<Homomorphism> levels, std::vector<std::string> labels)
    : source_(std::move(source)), levels_(std::move(levels)), labels_(std::move(labels)) {
  for (const auto& phi : levels_) {
    if (!(phi.source() == source_)) {
      throw Error(ErrorKind::MismatchedGroup, "tower level does not start at the tower source");
    }
    if (!phi.target().is_finite()) {
      throw Error(ErrorKind::InfiniteGroup, "tower level target must be finite");
    }
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      labels_.push_back("|G|=" + std::to_string(*levels_[i].target().order()));
    }
  }
  if (labels_.size() != levels_.size()) throw Error(ErrorKind::InvalidArgument, "label count mismatch");
}

QuotientTower QuotientTower::standard(std::int64_t rank, const std::vector<std::int64_t>& moduli) {
  std::vector<Homomorphism> levels;
  std::vector<std::string> labels;
  for (auto n : moduli) {
    levels.push_back(Homomorphism::reduction_mod(rank, n));
    labels.push_back("N=" + std::to_string(n));
  }
  return QuotientTower(Group::free_abelian(rank), std::move(levels), std::move(labels));
}

bool QuotientTower::kernel_avoids(std::size_t i, const std::set<GroupElement>& elements) const {
  const auto& phi = levels_.at(i);
  for (const auto& g : elements) {
    if (!source_.is_identity(g) && phi.target().is_identity(phi.apply(g))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

FolnerExhaustion::FolnerExhaustion(std::int64_t rank, std::vector<std::int64_t> radii)
    : rank_(rank), radii_(std::move(radii)) {
  if (rank_ < 1) throw Error(ErrorKind::InvalidArgument, "exhaustion rank must be >= 1");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (radii_[i] < 0 || (i > 0 && radii_[i] < radii_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "box radii must be nonnegative and nondecreasing");
    }
  }
}

namespace {
std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= b;
  return r;
}
}  // namespace

std::int64_t FolnerExhaustion::volume(std::size_t i) const { return ipow(2 * radii_.at(i) + 1, rank_); }

std::int64_t FolnerExhaustion::boundary_count(std::size_t i, std::int64_t K) const {
  // Sup-norm balls: the points within K of the box form [-(m+K), m+K]^n and
  // the points of the box farther than K from the complement form [-(m-K), m-K]^n.
  const auto m = radii_.at(i);
  if (K <= 0) return 0;
  const auto outer = ipow(2 * (m + K) + 1, rank_);
  const auto inner = (m - K >= 0) ? ipow(2 * (m - K) + 1, rank_) : 0;
  return outer - inner;
}

double FolnerExhaustion::defect(std::size_t i, std::int64_t K) const {
  return static_cast<double>(boundary_count(i, K)) / static_cast<double>(volume(i));
}

FolnerExhaustion build_boxes_folner(std::int64_t rank, std::int64_t m_max) {
  std::vector<std::int64_t> radii;
  for (std::int64_t m = 1; m <= m_max; ++m) radii.push_back(m);
  return FolnerExhaustion(rank, std::move(radii));
}

namespace {

template <typename Scalar>
void fill_compression(const RingMatrix& delta, std::int64_t rank, std::int64_t radius,
                      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& out) {
  const std::int64_t side = 2 * radius + 1;
  const std::int64_t vol = ipow(side, rank);
  const auto d = static_cast<std::int64_t>(delta.rows());
  out.setZero(d * vol, d * vol);
  std::vector<std::int64_t> x(static_cast<std::size_t>(rank));
  for (std::int64_t xi = 0; xi < vol; ++xi) {
    std::int64_t rest = xi;
    for (std::int64_t j = rank; j-- > 0;) {
      x[static_cast<std::size_t>(j)] = rest % side - radius;
      rest /= side;
    }
    for (std::int64_t k = 0; k < d; ++k) {
      for (std::int64_t l = 0; l < d; ++l) {
        for (const auto& [g, c] : delta(static_cast<std::size_t>(k), static_cast<std::size_t>(l)).support()) {
          std::int64_t yi = 0;
          bool inside = true;
          for (std::int64_t j = 0; j < rank && inside; ++j) {
            const auto yj = x[static_cast<std::size_t>(j)] - g.data[static_cast<std::size_t>(j)];
            inside = yj >= -radius && yj <= radius;
            yi = yi * side + (yj + radius);
          }
          if (!inside) continue;
          Scalar v;
          if constexpr (std::is_same_v<Scalar, double>) {
            v = c.re.get_d();
          } else {
            v = c.to_complex();
          }
          out(k * vol + xi, l * vol + yi) += v;
        }
      }
    }
  }
}

// tr(h^m) = Σ_ij (h^a)_ij (h^b)_ji with a = ⌈m/2⌉, b = m − a, so only
// powers up to ⌈max_power/2⌉ are formed.
template <typename Matrix>
std::vector<double> power_traces(const Matrix& h, int max_power) {
  std::vector<Matrix> powers{h};
  while (static_cast<int>(powers.size()) < (max_power + 1) / 2) powers.push_back(powers.back() * h);
  std::vector<double> out;
  for (int m = 1; m <= max_power; ++m) {
    const int a = (m + 1) / 2;
    const int b = m - a;
    const auto& pa = powers[static_cast<std::size_t>(a - 1)];
    if (b == 0) {
      out.push_back(std::real(pa.trace()));
    } else {
      const auto& pb = powers[static_cast<std::size_t>(b - 1)];
      out.push_back(std::real(pa.cwiseProduct(pb.transpose()).sum()));
    }
  }
  return out;
}

}  // namespace

Compression compress(const RingMatrix& delta, std::int64_t rank, std::int64_t radius) {
  if (delta.group().kind() != Group::Kind::FreeAbelian || delta.group().parameter() != rank) {
    throw Error(ErrorKind::WrongGroup, "compression needs Δ over Z^" + std::to_string(rank));
  }
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "Δ must be square");
  Compression c;
  const auto vol = ipow(2 * radius + 1, rank);
  c.normalization = 1.0 / static_cast<double>(vol);
  c.size = static_cast<std::size_t>(vol) * delta.rows();
  if (delta.has_real_coefficients()) {
    Eigen::MatrixXd m;
    fill_compression(delta, rank, radius, m);
    c.matrix = std::move(m);
  } else {
    Eigen::MatrixXcd m;
    fill_compression(delta, rank, radius, m);
    c.matrix = std::move(m);
  }
  return c;
}

// ---------------------------------------------------------------------------

std::vector<LevelReport> run_tower(const RingMatrix& delta, const QuotientTower& tower,
                                   const RunOptions& options) {
  if (!(delta.group() == tower.source())) {
    throw Error(ErrorKind::MismatchedGroup, "Δ is not over the tower source");
  }
  require_self_adjoint(delta);
  const double d = static_cast<double>(delta.rows());
  const double thr = options.kernel_threshold >= 0.0 ? options.kernel_threshold : default_kernel_threshold(delta);
  const int moments = std::max(0, options.max_moment);

  // Exact limit traces and the supports the certificates must cover.
  std::vector<Coefficient> limit_traces;
  std::vector<std::set<GroupElement>> supports;
  {
    RingMatrix power = RingMatrix::identity(delta.group(), delta.rows());
    for (int m = 1; m <= moments; ++m) {
      power = power * delta;
      Coefficient tr;
      for (std::size_t i = 0; i < power.rows(); ++i) tr += power(i, i).trace_coeff();
      limit_traces.push_back(tr);
      supports.push_back(diagonal_support(power));
    }
  }

  return parallel_map(tower.size(), options.jobs, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& phi = tower.levels()[i];
    const auto pushed = push_forward_matrix(phi, delta);
    LevelReport rep;
    rep.index = i;
    rep.label = tower.label(i);
    rep.eigen = finite_level_eigen(pushed, options.method, thr, options.backend);
    rep.matrix_size = rep.eigen.eigenvalues.size();
    fill_spectral_fields(rep, d);
    if (moments > 0) {
      const auto level_traces = trace_powers_exact(pushed, moments);
      for (int m = 1; m <= moments; ++m) {
        const auto k = static_cast<std::size_t>(m);
        TraceCheck tc;
        tc.power = m;
        tc.exact_limit = limit_traces[k - 1].to_string();
        tc.limit = limit_traces[k - 1].re.get_d();
        tc.exact_level = level_traces[k].to_string();
        tc.level_value = spectral_trace(rep.eigen, monomial(m));
        tc.deviation = std::abs(tc.level_value - tc.limit);
        tc.certified = tower.kernel_avoids(i, supports[k - 1]);
        tc.exact_match = level_traces[k] == limit_traces[k - 1];
        tc.moment_error = std::abs(tc.level_value - level_traces[k].re.get_d());
        rep.trace_checks.push_back(std::move(tc));
      }
    }
    rep.wall_time = seconds_since(t0);
    return rep;
  });
}

std::vector<LevelReport> run_folner(const RingMatrix& delta, const FolnerExhaustion& exhaustion,
                                    const RunOptions& options) {
  require_self_adjoint(delta);
  const double d = static_cast<double>(delta.rows());
  const double thr = options.kernel_threshold >= 0.0 ? options.kernel_threshold : default_kernel_threshold(delta);
  const int moments = std::max(0, options.max_moment);
  std::vector<Coefficient> limit_traces;
  if (moments > 0) {
    auto all = trace_powers_exact(delta, moments);
    limit_traces.assign(all.begin() + 1, all.end());
  }
  return parallel_map(exhaustion.size(), options.jobs, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto radius = exhaustion.radii()[i];
    const auto comp = compress(delta, exhaustion.rank(), radius);
    LevelReport rep;
    rep.index = i;
    rep.label = "m=" + std::to_string(radius);
    rep.eigen.normalization = comp.normalization;
    rep.eigen.kernel_threshold = thr;
    rep.eigen.eigenvalues = hermitian_eigenvalues(comp.matrix, 1e-12, options.backend);
    rep.matrix_size = comp.size;
    fill_spectral_fields(rep, d);
    if (moments > 0) {
      const auto traces = std::visit([&](const auto& m) { return power_traces(m, moments); }, comp.matrix);
      for (int m = 1; m <= moments; ++m) {
        const auto k = static_cast<std::size_t>(m);
        TraceCheck tc;
        tc.power = m;
        tc.exact_limit = limit_traces[k - 1].to_string();
        tc.limit = limit_traces[k - 1].re.get_d();
        tc.level_value = comp.normalization * traces[k - 1];
        tc.deviation = std::abs(tc.level_value - tc.limit);
        tc.moment_error = std::abs(spectral_trace(rep.eigen, monomial(m)) - tc.level_value);
        rep.trace_checks.push_back(std::move(tc));
      }
    }
    rep.wall_time = seconds_since(t0);
    return rep;
  });
}

// ---------------------------------------------------------------------------

double SandwichPolynomial::operator()(double x) const {
  if (coefficients.empty()) return 0.0;
  const double t = 2.0 * x / K - 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coefficients.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + coefficients[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + coefficients[0];
}

namespace {

std::vector<double> chebyshev_interpolate(const std::function<double(double)>& f, double K, int degree) {
  const int npts = degree + 1;
  std::vector<double> values(static_cast<std::size_t>(npts));
  for (int j = 0; j < npts; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / npts;
    values[static_cast<std::size_t>(j)] = f(0.5 * K * (1.0 + std::cos(theta)));
  }
  std::vector<double> c(static_cast<std::size_t>(npts));
  for (int k = 0; k < npts; ++k) {
    double s = 0.0;
    for (int j = 0; j < npts; ++j) {
      s += values[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * k * (j + 0.5) / npts);
    }
    c[static_cast<std::size_t>(k)] = 2.0 * s / npts;
  }
  c[0] *= 0.5;
  return c;
}

std::vector<double> certification_grid(double lambda, int n, double K, int grid) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid) + 3);
  for (int i = 0; i < grid; ++i) xs.push_back(K * i / (grid - 1));
  xs.push_back(lambda);
  if (lambda + 1.0 / n < K) xs.push_back(lambda + 1.0 / n);
  std::sort(xs.begin(), xs.end());
  return xs;
}

bool satisfies_sandwich(const SandwichPolynomial& p, const std::vector<double>& xs) {
  const double upper_tail = 1.0 / p.n;
  for (double x : xs) {
    const double v = p(x);
    const double lower = x <= p.lambda ? 1.0 : 0.0;
    const double upper = upper_tail + (x <= p.lambda + 1.0 / p.n ? 1.0 : 0.0);
    if (!(v >= lower && v <= upper)) return false;
  }
  return true;
}

}  // namespace

SandwichPolynomial build_sandwich(double lambda, int n, double K, int max_degree, int grid) {
  if (!(lambda >= 0.0) || !(lambda < K)) {
    throw Error(ErrorKind::InvalidArgument, "sandwich needs 0 <= lambda < K");
  }
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sandwich needs n >= 1");
  grid = std::max(grid, 10000);
  SandwichPolynomial p;
  p.lambda = lambda;
  p.n = n;
  p.K = K;
  p.grid_used = grid;
  const auto xs = certification_grid(lambda, n, K, grid);

  if (lambda + 1.0 / n >= K) {
    p.coefficients = {1.0};
    p.degree = 0;
    p.certified = satisfies_sandwich(p, xs);
    if (p.certified) return p;
  }

  // Smoothed step from 1 + 1/(2n) down to 1/(2n), centred in [λ, λ+1/n],
  // steep enough that it is within 1/(4n) of its plateaus at both ends.
  const double half = 0.5 / n;
  const double centre = lambda + half;
  const double target_tail = 0.5 / n;  // erfc(z) at the window edges
  double lo = 0.0;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid) > target_tail ? lo : hi) = mid;
  }
  const double sigma = half / hi;
  const double high = 1.0 + half;
  const double low = half;
  auto target = [&](double x) { return low + (high - low) * 0.5 * std::erfc((x - centre) / sigma); };

  std::vector<int> ladder;
  for (int deg = 8; deg < max_degree; deg *= 2) ladder.push_back(deg);
  ladder.push_back(max_degree);
  for (int deg : ladder) {
    p.coefficients = chebyshev_interpolate(target, K, deg);
    p.degree = deg;
    double undershoot = 0.0;
    for (double x : xs) {
      if (x > lambda) break;
      undershoot = std::max(undershoot, 1.0 - p(x));
    }
    p.shift = undershoot;
    p.coefficients[0] += undershoot;
    if (satisfies_sandwich(p, xs)) {
      p.certified = true;
      return p;
    }
  }
  throw Error(ErrorKind::CertificationFailed,
              "no certified polynomial up to degree " + std::to_string(max_degree));
}

SandwichLevelCheck sandwich_level_check(const SandwichPolynomial& p, const LevelReport& level, double d,
                                        double tol) {
  SandwichLevelCheck c;
  double s = 0.0;
  for (double l : level.eigen.eigenvalues) s += p(l);
  c.value = level.eigen.normalization * s;
  c.lower = level.density(p.lambda);
  c.upper = level.density(p.lambda + 1.0 / p.n) + d / p.n;
  c.ok = c.lower <= c.value + tol && c.value <= c.upper + tol;
  return c;
}

// ---------------------------------------------------------------------------

namespace {
std::size_t tail_start(std::size_t levels) { return levels - (levels + 2) / 3; }
}  // namespace

SqueezeVerdict squeeze_check(const std::vector<LevelReport>& reports, const SpectralDensity& oracle,
                             const std::vector<double>& lambda_grid, double tol) {
  if (reports.size() < 3) {
    throw Error(ErrorKind::InsufficientLevels, "squeeze check needs at least 3 levels, got " +
                                                   std::to_string(reports.size()));
  }
  SqueezeVerdict v;
  v.tail_start = tail_start(reports.size());
  std::vector<double> grid = lambda_grid;
  std::sort(grid.begin(), grid.end());
  v.ok = true;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double lambda = grid[g];
    double eps = 0.0;
    if (g + 1 < grid.size()) {
      eps = grid[g + 1] - lambda;
    } else if (g > 0) {
      eps = lambda - grid[g - 1];
    }
    SqueezePoint pt;
    pt.lambda = lambda;
    pt.oracle = oracle(lambda);
    pt.upper_limit = -1.0;
    pt.lower_limit = 1e300;
    for (std::size_t i = v.tail_start; i < reports.size(); ++i) {
      pt.upper_limit = std::max(pt.upper_limit, reports[i].density(lambda));
      pt.lower_limit = std::min(pt.lower_limit, reports[i].density(lambda + eps));
    }
    pt.ok = pt.upper_limit <= pt.oracle + tol && pt.oracle <= pt.lower_limit + tol;
    v.ok = v.ok && pt.ok;
    v.points.push_back(pt);
  }
  return v;
}

SintaprVerdict sintapr_check(const std::vector<LevelReport>& reports, double d, double K,
                             std::optional<double> oracle_logdet, double tol) {
  SintaprVerdict v;
  for (const auto& r : reports) {
    if (r.logdet < -tol) {
      throw Error(ErrorKind::HypothesisViolated,
                  "level " + r.label + " has lnDet " + std::to_string(r.logdet) + " < -tol");
    }
  }
  v.hypothesis_ok = true;
  v.ok = true;
  const double lnK = std::log(K);
  for (const auto& r : reports) {
    SintaprLevel l;
    l.integral = r.density.log_integral(K);
    l.bound = lnK * (d - r.F0);
    l.identity_error = std::abs(r.logdet - (lnK * (d - r.F0) - l.integral));
    l.ok = l.integral <= l.bound + tol;
    v.ok = v.ok && l.ok;
    v.levels.push_back(l);
  }
  if (!reports.empty()) {
    v.limsup_estimate = reports.back().logdet;
    v.tail_max = -1e300;
    for (std::size_t i = tail_start(reports.size()); i < reports.size(); ++i) {
      v.tail_max = std::max(v.tail_max, reports[i].logdet);
    }
  }
  v.oracle = oracle_logdet;
  if (oracle_logdet) v.ok = v.ok && v.limsup_estimate <= *oracle_logdet + tol;
  return v;
}

WhiteheadVerdict whitehead_check(const RingMatrix& a, const RingMatrix& b, const QuotientTower& tower,
                                 int oracle_grid, double tol, const RunOptions& options) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw Error(ErrorKind::NotInverse, "Whitehead pair must be square of equal size");
  }
  const auto I = RingMatrix::identity(a.group(), a.rows());
  if (!(a * b == I) || !(b * a == I)) throw Error(ErrorKind::NotInverse, "A and B are not mutually inverse");
  WhiteheadVerdict v;
  v.integral = a.has_integer_coefficients() && b.has_integer_coefficients();
  const auto delta = positive_square(a);
  const auto reports = run_tower(delta, tower, options);
  v.ok = true;
  for (const auto& r : reports) {
    v.level_logdets.push_back(r.logdet);
    v.ok = v.ok && std::abs(r.logdet) <= tol;
  }
  if (oracle_grid > 0 && a.group().kind() == Group::Kind::FreeAbelian) {
    v.oracle = torus_logdet(delta, oracle_grid).value;
    v.ok = v.ok && std::abs(*v.oracle) <= tol;
  }
  v.status = !v.integral ? "not_applicable" : (v.ok ? "pass" : "fail");
  return v;
}

ComplexTowerVerdict complex_tower_run(const RingMatrix& delta, const QuotientTower& tower, int oracle_grid,
                                      double tol, const RunOptions& options) {
  if (delta.group().kind() != Group::Kind::FreeAbelian) {
    throw Error(ErrorKind::WrongGroup, "complex tower run needs Z^n");
  }
  ComplexTowerVerdict v;
  v.reports = run_tower(delta, tower, options);
  v.oracle_F0 = betti(torus_density(delta, oracle_grid));
  v.final_F0 = v.reports.empty() ? 0.0 : v.reports.back().F0;
  v.ok = !v.reports.empty() && std::abs(v.final_F0 - v.oracle_F0) <= tol;
  return v;
}

}  // namespace l2approx
