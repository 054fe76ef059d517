#pragma once

// Exact arithmetic in the complex group ring: finitely supported sums with
// Gaussian-rational coefficients.

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "l2approx/groups.hpp"

namespace l2approx {

/// Exact Gaussian rational re + i*im.
struct Coefficient {
  mpq_class re{0};
  mpq_class im{0};

  Coefficient() = default;
  Coefficient(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  Coefficient(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)

  /// Exact conversion of a finite double (every double is a dyadic rational).
  static Coefficient from_double(double re, double im = 0.0);
  /// Parses "p/q" or an integer literal for each part.
  static Coefficient parse(std::string_view re, std::string_view im = "0");

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_integer() const { return is_real() && re.get_den() == 1; }

  Coefficient conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  Coefficient operator-() const { return {-re, -im}; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string re_string() const { return re.get_str(); }
  std::string im_string() const { return im.get_str(); }
  std::string to_string() const;
};

/// Finitely supported element of the group ring over `group`. Zero
/// coefficients are never stored; iteration follows canonical element order.
class RingElement {
 public:
  using Support = std::map<GroupElement, Coefficient>;

  explicit RingElement(Group group) : group_(std::move(group)) {}
  RingElement(Group group, Support support);

  static RingElement zero(const Group& group) { return RingElement(group); }
  static RingElement one(const Group& group);
  static RingElement delta(const Group& group, const GroupElement& g, Coefficient c = 1);

  const Group& group() const { return group_; }
  const Support& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  Coefficient coefficient(const GroupElement& g) const;
  /// Adds c*g, dropping the entry if it cancels.
  void add_term(const GroupElement& g, const Coefficient& c);

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  /// Convolution product.
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement scaled(const Coefficient& c) const;
  friend bool operator==(const RingElement& a, const RingElement& b);

  /// (Σ λ_g g)* = Σ conj(λ_g) g⁻¹
  RingElement star() const;
  double l1_norm() const;
  /// Coefficient of the identity element.
  Coefficient trace_coeff() const;
  bool has_integer_coefficients() const;
  bool has_real_coefficients() const;

  std::string to_string() const;

 private:
  void require_same_group(const RingElement& o) const;

  Group group_;
  Support support_;
};

/// Σ λ_g φ(g), summing colliding images.
RingElement push_forward(const Homomorphism& phi, const RingElement& x);

}  // namespace l2approx
