#pragma once

// Cellular chain complexes over ℤπ and their L²-invariants.

#include <optional>
#include <vector>

#include "l2approx/schemes.hpp"

namespace l2approx {

/// boundaries[p-1] is ∂_p: C_p -> C_{p-1}, shape dims[p-1] x dims[p].
struct ChainComplexSpec {
  Group group;
  std::vector<std::size_t> dims;
  std::vector<RingMatrix> boundaries;
};

/// Exact ∂_{p-1}·∂_p = 0 and shape checks. Throws NotAComplex naming the degree.
void validate(const ChainComplexSpec& spec);

/// Δ_p = ∂_p*∂_p + ∂_{p+1}∂_{p+1}* for every degree p.
std::vector<RingMatrix> laplacians(const ChainComplexSpec& spec);

enum class CwMethod {
  Auto,    // finite group: exact; ℤ^n: torus oracle; otherwise tower
  Oracle,  // torus quadrature (ℤ^n) or the exact finite spectrum
  Tower,   // final level of a quotient tower
};

struct CwOptions {
  CwMethod method = CwMethod::Auto;
  int grid = 256;                         // torus grid per dimension
  std::vector<std::int64_t> levels = {8, 16, 32, 64, 128, 256};  // ℤ^n tower moduli
  std::optional<QuotientTower> tower;     // overrides `levels`
  double acyclic_tol = 0.01;
  double tol = 0.02;
  RunOptions run;
};

struct DegreeReport {
  std::size_t degree = 0;
  double betti = 0.0;
  double logdet = 0.0;
  double k_bound = 0.0;
  bool det_class = false;  // consistent with determinant class
  double lower_bound = 0.0;
  std::string method;
};

struct L2Report {
  std::vector<DegreeReport> degrees;
  std::optional<double> torsion;  // only when L²-acyclic
  double l2_euler = 0.0;
  long cellular_euler = 0;
};

L2Report l2_invariants(const ChainComplexSpec& spec, const CwOptions& options = {});

}  // namespace l2approx
