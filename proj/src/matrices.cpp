#include "l2approx/matrices.hpp"

#include <algorithm>

#include "l2approx/error.hpp"

namespace l2approx {

RingMatrix::RingMatrix(Group group, std::size_t rows, std::size_t cols)
    : group_(group), rows_(rows), cols_(cols), entries_(rows * cols, RingElement(group)) {}

RingMatrix::RingMatrix(Group group, std::size_t rows, std::size_t cols,
                       std::vector<RingElement> entries)
    : group_(std::move(group)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match matrix shape");
  }
  for (const auto& e : entries_) {
    if (!(e.group() == group_)) {
      throw Error(ErrorKind::MismatchedGroup, "matrix entry over " + e.group().describe());
    }
  }
}

RingMatrix RingMatrix::identity(const Group& group, std::size_t d) {
  RingMatrix m(group, d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = RingElement::one(group);
  return m;
}

RingMatrix RingMatrix::scalar(const RingElement& x) { return RingMatrix(x.group(), 1, 1, {x}); }

bool RingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

bool RingMatrix::is_self_adjoint() const { return is_square() && adjoint(*this) == *this; }

bool RingMatrix::has_integer_coefficients() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.has_integer_coefficients(); });
}

bool RingMatrix::has_real_coefficients() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.has_real_coefficients(); });
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.group_ == b.group_ && a.entries_ == b.entries_;
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix sum of different shapes");
  }
  if (!(a.group_ == b.group_)) throw Error(ErrorKind::MismatchedGroup, "matrix sum over different groups");
  RingMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::DimensionMismatch,
                "cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                    std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  if (!(a.group_ == b.group_)) throw Error(ErrorKind::MismatchedGroup, "matrix product over different groups");
  RingMatrix out(a.group_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      RingElement acc(a.group_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

RingMatrix adjoint(const RingMatrix& m) {
  RingMatrix out(m.group(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j).star();
  }
  return out;
}

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) { return a * b; }

RingMatrix positive_square(const RingMatrix& a) { return adjoint(a) * a; }

double k_bound(const RingMatrix& delta) {
  double worst = 0.0;
  for (const auto& e : delta.entries()) worst = std::max(worst, e.l1_norm());
  const auto d = static_cast<double>(std::max(delta.rows(), delta.cols()));
  return d * d * worst;
}

RingMatrix laplacian(const Group& group, std::size_t dim, const std::optional<RingMatrix>& down,
                     const std::optional<RingMatrix>& up) {
  RingMatrix out(group, dim, dim);
  if (down) {
    if (down->cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "outgoing boundary has wrong column count");
    }
    out = out + adjoint(*down) * *down;
  }
  if (up) {
    if (up->rows() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "incoming boundary has wrong row count");
    }
    out = out + *up * adjoint(*up);
  }
  return out;
}

RingMatrix evaluate_polynomial(const RingMatrix& delta, const ExactPolynomial& poly) {
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "polynomial of a non-square matrix");
  const auto& G = delta.group();
  const auto d = delta.rows();
  RingMatrix acc(G, d, d);
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    acc = acc * delta;
    if (!it->is_zero()) {
      for (std::size_t i = 0; i < d; ++i) acc(i, i).add_term(G.identity(), *it);
    }
  }
  return acc;
}

Coefficient trace_poly_exact_value(const RingMatrix& delta, const ExactPolynomial& poly) {
  const auto p = evaluate_polynomial(delta, poly);
  Coefficient tr;
  for (std::size_t i = 0; i < p.rows(); ++i) tr += p(i, i).trace_coeff();
  return tr;
}

double trace_poly_exact(const RingMatrix& delta, const std::vector<double>& poly) {
  ExactPolynomial exact;
  exact.reserve(poly.size());
  for (double c : poly) exact.push_back(Coefficient::from_double(c));
  const auto tr = trace_poly_exact_value(delta, exact);
  if (!tr.is_real()) {
    throw Error(ErrorKind::NotHermitian, "trace has nonzero imaginary part " + tr.im_string());
  }
  return tr.re.get_d();
}

std::vector<Coefficient> trace_powers_exact(const RingMatrix& delta, int max_power) {
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of a non-square matrix");
  std::vector<Coefficient> out;
  RingMatrix power = RingMatrix::identity(delta.group(), delta.rows());
  for (int m = 0; m <= max_power; ++m) {
    if (m > 0) power = power * delta;
    Coefficient tr;
    for (std::size_t i = 0; i < power.rows(); ++i) tr += power(i, i).trace_coeff();
    out.push_back(std::move(tr));
  }
  return out;
}

RingMatrix push_forward_matrix(const Homomorphism& phi, const RingMatrix& m) {
  std::vector<RingElement> entries;
  entries.reserve(m.entries().size());
  for (const auto& e : m.entries()) entries.push_back(push_forward(phi, e));
  return RingMatrix(phi.target(), m.rows(), m.cols(), std::move(entries));
}

std::set<GroupElement> diagonal_support(const RingMatrix& m) {
  std::set<GroupElement> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    for (const auto& [g, c] : m(i, i).support()) out.insert(g);
  }
  return out;
}

std::set<GroupElement> full_support(const RingMatrix& m) {
  std::set<GroupElement> out;
  for (const auto& e : m.entries()) {
    for (const auto& [g, c] : e.support()) out.insert(g);
  }
  return out;
}

}  // namespace l2approx
