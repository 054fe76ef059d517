#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "l2approx/group_ring.hpp"

namespace l2approx {

/// Dense rows x cols matrix over the group ring of `group`.
class RingMatrix {
 public:
  RingMatrix(Group group, std::size_t rows, std::size_t cols);
  RingMatrix(Group group, std::size_t rows, std::size_t cols, std::vector<RingElement> entries);

  static RingMatrix identity(const Group& group, std::size_t d);
  /// 1x1 matrix holding x.
  static RingMatrix scalar(const RingElement& x);

  const Group& group() const { return group_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const RingElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  RingElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<RingElement>& entries() const { return entries_; }

  bool is_zero() const;
  bool is_self_adjoint() const;
  bool has_integer_coefficients() const;
  bool has_real_coefficients() const;

  friend bool operator==(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);

 private:
  Group group_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> entries_;
};

/// (M*)_{kl} = star(M_{lk})
RingMatrix adjoint(const RingMatrix& m);
RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b);
/// Δ = A*A, always self-adjoint.
RingMatrix positive_square(const RingMatrix& a);

/// d² · max entry L¹-norm. Bounds the operator norm of Δ and of every
/// push-forward of Δ.
double k_bound(const RingMatrix& delta);

/// Combinatorial Laplacian in degree p from the boundary maps around it:
/// Δ_p = down*·down + up·up*, where `down` maps degree p to p-1
/// (shape dim_{p-1} x dim_p) and `up` maps degree p+1 to p (shape
/// dim_p x dim_{p+1}). Either may be absent; `dim` is dim_p.
RingMatrix laplacian(const Group& group, std::size_t dim, const std::optional<RingMatrix>& down,
                     const std::optional<RingMatrix>& up);

/// Polynomial with exact coefficients, lowest degree first.
using ExactPolynomial = std::vector<Coefficient>;

/// p(Δ) by Horner's scheme over the ring.
RingMatrix evaluate_polynomial(const RingMatrix& delta, const ExactPolynomial& poly);
/// Σ_k trace_coeff(p(Δ)_{kk}), exact.
Coefficient trace_poly_exact_value(const RingMatrix& delta, const ExactPolynomial& poly);
/// Real-valued trace of p(Δ) for real polynomial coefficients (converted
/// exactly). Throws NotHermitian if the exact imaginary part is nonzero.
double trace_poly_exact(const RingMatrix& delta, const std::vector<double>& poly);
/// Exact traces tr(Δ^m) for m = 0..max_power.
std::vector<Coefficient> trace_powers_exact(const RingMatrix& delta, int max_power);

RingMatrix push_forward_matrix(const Homomorphism& phi, const RingMatrix& m);

/// Union of the supports of the diagonal entries.
std::set<GroupElement> diagonal_support(const RingMatrix& m);
/// Union of the supports of all entries.
std::set<GroupElement> full_support(const RingMatrix& m);

}  // namespace l2approx
