#pragma once

// Bundled property suites (traces, squeeze, determinant, whitehead,
// subgroup) and the fixture builders they share with the test binaries.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "l2approx/io.hpp"

namespace l2approx {

namespace fixtures {

/// Σ c_k t^k over ℤ from (exponent, coefficient) pairs.
RingElement laurent(const Group& z, const std::vector<std::pair<std::int64_t, Coefficient>>& terms);
/// Monomial c·x over any group.
RingElement term(const Group& g, const GroupElement& x, Coefficient c = 1);

/// [[2 − t − t⁻¹]] over ℤ.
RingMatrix circle_laplacian();
/// [[2n − Σ (t_i + t_i⁻¹)]] over ℤ^n.
RingMatrix torus_laplacian(std::int64_t rank);
/// E = [[1, 1 − t], [0, 1]] and its inverse over ℤ.
RingMatrix elementary_E();
RingMatrix elementary_E_inverse();
/// (1 − αt)*(1 − αt) over ℤ.
RingMatrix complex_shift_square(const Coefficient& alpha);
/// Symmetric group on three letters, identity first.
Group s3();
/// Circle and torus cellular chain complexes over ℤ and ℤ²; point over the trivial group.
ChainComplexSpec circle_complex();
ChainComplexSpec torus_complex();
ChainComplexSpec point_complex();

/// Random d x d matrix with up to `terms` monomials per entry and integer
/// coefficients in [-c, c].
RingMatrix random_matrix(const Group& g, std::size_t d, std::mt19937_64& rng, int terms = 2, int c = 2,
                         int spread = 1);

}  // namespace fixtures

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool ok() const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();

/// L2APPROX_SEED, or a fixed default when unset or unparsable.
std::uint64_t seed_from_env();

/// Throws InvalidArgument for an unknown suite name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int jobs = 1);

}  // namespace l2approx
