#pragma once

// Approximation pipelines (quotient towers, Følner box exhaustions) and the
// certification checks run on their level reports.

#include <optional>
#include <string>
#include <vector>

#include "l2approx/oracles.hpp"
#include "l2approx/spectral.hpp"

namespace l2approx {

/// Sequence of maps from `source` onto finite groups.
class QuotientTower {
 public:
  QuotientTower(Group source, std::vector<Homomorphism> levels, std::vector<std::string> labels = {});

  /// ℤ^n -> (ℤ/N)^n for each N in `moduli`.
  static QuotientTower standard(std::int64_t rank, const std::vector<std::int64_t>& moduli);

  const Group& source() const { return source_; }
  const std::vector<Homomorphism>& levels() const { return levels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return levels_.size(); }

  /// True when no non-identity element of `elements` maps to the identity at
  /// level i (the kernel avoids the set).
  bool kernel_avoids(std::size_t i, const std::set<GroupElement>& elements) const;

 private:
  Group source_;
  std::vector<Homomorphism> levels_;
  std::vector<std::string> labels_;
};

/// Nested boxes X_m = [-m, m]^n in ℤ^n with the sup-norm word metric.
class FolnerExhaustion {
 public:
  FolnerExhaustion(std::int64_t rank, std::vector<std::int64_t> radii);

  std::int64_t rank() const { return rank_; }
  const std::vector<std::int64_t>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  std::int64_t volume(std::size_t i) const;

  /// |N_K(X_m)|: points within distance K of both X_m and its complement.
  std::int64_t boundary_count(std::size_t i, std::int64_t K) const;
  /// |N_K(X_m)| / |X_m|
  double defect(std::size_t i, std::int64_t K) const;

 private:
  std::int64_t rank_;
  std::vector<std::int64_t> radii_;
};

FolnerExhaustion build_boxes_folner(std::int64_t rank, std::int64_t m_max);

struct Compression {
  HermitianMatrix matrix;
  double normalization = 1.0;
  std::size_t size = 0;
};

/// P_m Δ P_m on X_m x {1..d}: entry ((x,k),(y,l)) is the coefficient of
/// x − y in Δ_{kl}, matching left multiplication on the regular
/// representation. Normalization 1/|X_m|.
Compression compress(const RingMatrix& delta, std::int64_t rank, std::int64_t radius);

struct TraceCheck {
  int power = 0;
  std::string exact_limit;  // tr_π(Δ^m) as an exact rational
  double limit = 0.0;
  double level_value = 0.0;  // numerical tr_i(Δ_i^m) from the level matrix
  double deviation = 0.0;    // |level_value - limit|
  /// Towers only: exact level trace, certificate status and exact equality.
  std::string exact_level;
  bool certified = false;
  bool exact_match = false;
  double moment_error = 0.0;  // |eigenvalue moment - exact level trace|
};

struct LevelReport {
  std::size_t index = 0;
  std::string label;
  double F0 = 0.0;
  double logdet = 0.0;
  SpectralDensity density;
  EigenResult eigen;
  std::size_t matrix_size = 0;
  double max_eigenvalue = 0.0;
  double wall_time = 0.0;
  std::vector<TraceCheck> trace_checks;
};

struct RunOptions {
  LevelMethod method = LevelMethod::Auto;
  EigenBackend backend = EigenBackend::Auto;
  double kernel_threshold = -1.0;  // < 0: 1e-9 · k_bound(Δ)
  int max_moment = 3;
  int jobs = 1;
};

/// Push-forward, finite-level spectrum and exact trace matching at every
/// tower level. Δ must be self-adjoint over `tower.source()`.
std::vector<LevelReport> run_tower(const RingMatrix& delta, const QuotientTower& tower,
                                   const RunOptions& options = {});

/// Compressions along the exhaustion with tr_m p(Δ_m) vs tr_π p(Δ) for
/// p = x, x², ..., x^max_moment.
std::vector<LevelReport> run_folner(const RingMatrix& delta, const FolnerExhaustion& exhaustion,
                                    const RunOptions& options = {});

/// Polynomial p_n with χ_[0,λ] ≤ p_n ≤ (1/n)χ_[0,K] + χ_[0,λ+1/n] on [0,K],
/// stored in the Chebyshev basis of [0,K].
struct SandwichPolynomial {
  double lambda = 0.0;
  int n = 1;
  double K = 1.0;
  std::vector<double> coefficients;  // Chebyshev coefficients on [0,K]
  int degree = 0;
  bool certified = false;
  int grid_used = 0;
  double shift = 0.0;

  double operator()(double x) const;
};

/// Smoothed step interpolated at Chebyshev points, degree doubled until the
/// grid certificate passes. Throws InvalidArgument if λ >= K and
/// CertificationFailed at the degree cap.
SandwichPolynomial build_sandwich(double lambda, int n, double K, int max_degree = 400, int grid = 10000);

/// Does the (λ, n) sandwich inequality hold on a level's spectrum?
struct SandwichLevelCheck {
  double lower = 0.0;  // F_i(λ)
  double value = 0.0;  // tr_i p_n(Δ_i)
  double upper = 0.0;  // F_i(λ+1/n) + d/n
  bool ok = false;
};
SandwichLevelCheck sandwich_level_check(const SandwichPolynomial& p, const LevelReport& level, double d,
                                        double tol = 1e-8);

struct SqueezePoint {
  double lambda = 0.0;
  double upper_limit = 0.0;  // max of tail F_i(λ)
  double lower_limit = 0.0;  // min of tail F_i(λ+ε)
  double oracle = 0.0;
  bool ok = false;
};

struct SqueezeVerdict {
  std::vector<SqueezePoint> points;
  std::size_t tail_start = 0;
  bool ok = false;
};

/// Tail = last ⌈L/3⌉ levels. Throws InsufficientLevels for fewer than 3 levels.
SqueezeVerdict squeeze_check(const std::vector<LevelReport>& reports, const SpectralDensity& oracle,
                             const std::vector<double>& lambda_grid, double tol = 0.02);

struct SintaprLevel {
  double integral = 0.0;  // ∫_{0+}^K (F_i(λ) − F_i(0))/λ dλ
  double bound = 0.0;     // ln(K)(d − F_i(0))
  double identity_error = 0.0;  // |lnDet_i − (ln K (d − F_i(0)) − integral)|
  bool ok = false;
};

struct SintaprVerdict {
  std::vector<SintaprLevel> levels;
  bool hypothesis_ok = false;  // every lnDet_i >= -tol
  double limsup_estimate = 0.0;  // inf_k sup_{i>=k} lnDet_i over the available levels
  double tail_max = 0.0;         // max over the last ⌈L/3⌉ levels
  std::optional<double> oracle;
  bool ok = false;
};

/// Throws HypothesisViolated if some lnDet_i < −tol.
SintaprVerdict sintapr_check(const std::vector<LevelReport>& reports, double d, double K,
                             std::optional<double> oracle_logdet = std::nullopt, double tol = 0.02);

struct WhiteheadVerdict {
  bool integral = false;   // A and B both over ℤπ
  std::vector<double> level_logdets;
  std::optional<double> oracle;
  bool ok = false;         // every value within [−tol, tol]
  std::string status;      // "pass", "fail" or "not_applicable" (non-integral input)
};

/// Checks A·B = I = B·A exactly (NotInverse otherwise), then runs the tower
/// on Δ = A*A and, for ℤ^n, the torus oracle.
WhiteheadVerdict whitehead_check(const RingMatrix& a, const RingMatrix& b, const QuotientTower& tower,
                                 int oracle_grid = 0, double tol = 0.02, const RunOptions& options = {});

struct ComplexTowerVerdict {
  std::vector<LevelReport> reports;
  double oracle_F0 = 0.0;
  double final_F0 = 0.0;
  bool ok = false;
};

/// Tower run for complex-coefficient Δ over ℤ^n compared with the torus F(0).
ComplexTowerVerdict complex_tower_run(const RingMatrix& delta, const QuotientTower& tower, int oracle_grid,
                                      double tol = 0.02, const RunOptions& options = {});

}  // namespace l2approx
