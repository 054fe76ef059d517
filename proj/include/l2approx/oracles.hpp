#pragma once

// Independent reference values: exact determinants over the trivial group,
// torus-symbol quadrature for ℤ^n and Mahler measures.

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "l2approx/spectral.hpp"

namespace l2approx {

using IntegerMatrix = std::vector<std::vector<mpz_class>>;

/// Monic characteristic polynomial det(x·I − M), lowest degree first,
/// by the Faddeev–LeVerrier recurrence in exact rational arithmetic.
std::vector<mpq_class> characteristic_polynomial(const std::vector<std::vector<mpq_class>>& m);

struct ExactLogDet {
  mpz_class determinant;  // product of the nonzero eigenvalues
  double value = 0.0;     // ln |determinant|
  std::size_t kernel_dimension = 0;
  std::vector<mpq_class> char_poly;
};

/// For a positive semidefinite integer matrix the product of the nonzero
/// eigenvalues is the lowest nonzero coefficient of the characteristic
/// polynomial up to sign. Throws NotPSD (sign pattern test, exact) or
/// NotHermitian for asymmetric input.
ExactLogDet trivial_group_logdet_exact(const IntegerMatrix& m);
ExactLogDet trivial_group_logdet_exact(const RingMatrix& delta);

/// d x d symbol Δ(z) with generator k ↦ exp(i·angles[k]).
Eigen::MatrixXcd symbol_at(const RingMatrix& delta, const std::vector<double>& angles);

/// Eigenvalues of the symbol on the midpoint grid z_k = exp(2πi(j+½)/m),
/// normalized by 1/m^n. Throws WrongGroup unless the group is ℤ^n.
EigenResult torus_spectrum(const RingMatrix& delta, int grid_per_dim, double kernel_threshold = -1.0);
SpectralDensity torus_density(const RingMatrix& delta, int grid_per_dim, double kernel_threshold = -1.0);

struct TorusLogDet {
  double value = 0.0;
  int grid = 0;
  double coarse_value = 0.0;  // same quadrature at grid/2
  double error_estimate = 0.0;
};

TorusLogDet torus_logdet(const RingMatrix& delta, int grid_per_dim, double kernel_threshold = -1.0);

/// Roots of Σ coeffs[k] x^k (Durand–Kerner with Newton polishing).
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// ln M(p) = ln|lead| + Σ max(0, ln|root|) for a nonzero Laurent polynomial
/// given by its coefficients from the lowest exponent upward.
double mahler_1x1(const std::vector<double>& coeffs);
/// Same for a nonzero element of the group ring of ℤ.
double mahler_1x1(const RingElement& p);

}  // namespace l2approx
