#pragma once

// Finite-level spectral computation: regular representations, Hermitian
// eigenvalues, spectral density step functions, Betti numbers and
// log-determinants.

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "l2approx/matrices.hpp"

namespace l2approx {

struct SpectralJump {
  double lambda;
  double mass;
};

/// Right-continuous step function F(λ) = Σ_{jump ≤ λ} mass.
class SpectralDensity {
 public:
  SpectralDensity() = default;
  /// `resolution` is the width within which eigenvalues were merged; a jump
  /// located within `resolution` above λ still counts towards F(λ).
  SpectralDensity(std::vector<SpectralJump> jumps, double total_mass, double resolution);

  double operator()(double lambda) const;
  const std::vector<SpectralJump>& jumps() const { return jumps_; }
  double total_mass() const { return total_mass_; }
  double resolution() const { return resolution_; }
  double max_jump() const;

  /// ∫_{0+}^{K} (F(λ) - F(0)) / λ dλ, exact for the step function.
  double log_integral(double K) const;

 private:
  std::vector<SpectralJump> jumps_;
  double total_mass_ = 0.0;
  double resolution_ = 0.0;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  double normalization = 1.0;
  double kernel_threshold = 0.0;
};

using HermitianMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

enum class EigenBackend {
  Auto,         // Jacobi for small matrices, tridiagonal QR above
  Jacobi,       // cyclic Jacobi, complex input via the 2n real embedding
  Tridiagonal,  // Householder tridiagonalization + implicit QR (Eigen)
};

/// Default kernel threshold: 1e-9 · k_bound(Δ).
double default_kernel_threshold(const RingMatrix& delta);

/// Block (k,l) is left multiplication by Δ_{kl} in the basis enumerate(G):
/// entry (a,b) is the coefficient of a·b⁻¹. Real when all coefficients are.
HermitianMatrix regular_representation(const RingMatrix& delta);

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, double tol = 1e-12,
                                          EigenBackend backend = EigenBackend::Auto);
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& h, double tol = 1e-12);
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& h, double tol = 1e-12);

enum class LevelMethod {
  Auto,     // characters for finite abelian groups, dense otherwise
  Dense,    // regular representation + Hermitian eigensolver
  Fourier,  // block diagonalization by the characters of (ℤ/N_1 × ... × ℤ/N_k)
};

/// Spectrum of Δ over a finite group with normalization 1/|G|.
EigenResult finite_level_eigen(const RingMatrix& delta, LevelMethod method = LevelMethod::Auto,
                               double kernel_threshold = -1.0,
                               EigenBackend backend = EigenBackend::Auto);

/// True when G is trivial, cyclic or a product of such.
bool is_finite_abelian_cyclic(const Group& g);

SpectralDensity density_from_eigs(const EigenResult& e, double total_mass);
double betti(const SpectralDensity& f);
double log_det(const EigenResult& e);
double max_eigenvalue(const EigenResult& e);
/// normalization · Σ_j p(λ_j) for monomial coefficients `poly`.
double spectral_trace(const EigenResult& e, const std::vector<double>& poly);

struct InvarianceReport {
  bool ok = false;
  double max_deviation = 0.0;
  SpectralDensity subgroup_density;
  SpectralDensity ambient_density;
};

/// Compares the density of Δ over U with that of the induced matrix over π
/// along an injective embedding U ↪ π (both finite).
InvarianceReport subgroup_invariance_check(const RingMatrix& delta, const Homomorphism& embedding,
                                           double tol = 1e-9);

}  // namespace l2approx
