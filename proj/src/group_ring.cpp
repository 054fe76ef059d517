#include "l2approx/group_ring.hpp"

#include <cmath>
#include <sstream>

#include "l2approx/error.hpp"

namespace l2approx {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  if (s.find_first_of(".eE") != std::string::npos) {
    // Decimal literal: exact value of the nearest double.
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    }
    return mpq_class(v);
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "bad rational literal '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

Coefficient Coefficient::from_double(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
  }
  return {mpq_class(re), mpq_class(im)};
}

Coefficient Coefficient::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (sgn(a.im) == 0 && sgn(b.im) == 0) return {mpq_class(a.re * b.re), mpq_class(0)};
  return {mpq_class(a.re * b.re - a.im * b.im), mpq_class(a.re * b.im + a.im * b.re)};
}

std::string Coefficient::to_string() const {
  if (is_real()) return re.get_str();
  std::ostringstream os;
  os << "(" << re.get_str() << (sgn(im) < 0 ? "" : "+") << im.get_str() << "i)";
  return os.str();
}

// ---------------------------------------------------------------------------

RingElement::RingElement(Group group, Support support) : group_(std::move(group)) {
  for (auto& [g, c] : support) add_term(group_.canonicalize(g), c);
}

RingElement RingElement::one(const Group& group) { return delta(group, group.identity()); }

RingElement RingElement::delta(const Group& group, const GroupElement& g, Coefficient c) {
  RingElement x(group);
  x.add_term(group.canonicalize(g), c);
  return x;
}

Coefficient RingElement::coefficient(const GroupElement& g) const {
  auto it = support_.find(g);
  return it == support_.end() ? Coefficient{} : it->second;
}

void RingElement::add_term(const GroupElement& g, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = support_.try_emplace(g, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) support_.erase(it);
  }
}

void RingElement::require_same_group(const RingElement& o) const {
  if (!(group_ == o.group_)) {
    throw Error(ErrorKind::MismatchedGroup,
                "ring elements over " + group_.describe() + " and " + o.group_.describe());
  }
}

RingElement& RingElement::operator+=(const RingElement& o) {
  require_same_group(o);
  for (const auto& [g, c] : o.support_) add_term(g, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  require_same_group(o);
  for (const auto& [g, c] : o.support_) add_term(g, -c);
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  a.require_same_group(b);
  RingElement out(a.group_);
  for (const auto& [g, cg] : a.support_) {
    for (const auto& [h, ch] : b.support_) out.add_term(a.group_.multiply(g, h), cg * ch);
  }
  return out;
}

RingElement RingElement::scaled(const Coefficient& c) const {
  RingElement out(group_);
  for (const auto& [g, cg] : support_) out.add_term(g, cg * c);
  return out;
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.group_ == b.group_ && a.support_ == b.support_;
}

RingElement RingElement::star() const {
  RingElement out(group_);
  for (const auto& [g, c] : support_) out.add_term(group_.inverse(g), c.conj());
  return out;
}

double RingElement::l1_norm() const {
  double s = 0.0;
  for (const auto& [g, c] : support_) s += c.abs();
  return s;
}

Coefficient RingElement::trace_coeff() const { return coefficient(group_.identity()); }

bool RingElement::has_integer_coefficients() const {
  for (const auto& [g, c] : support_) {
    if (!c.is_integer()) return false;
  }
  return true;
}

bool RingElement::has_real_coefficients() const {
  for (const auto& [g, c] : support_) {
    if (!c.is_real()) return false;
  }
  return true;
}

std::string RingElement::to_string() const {
  if (support_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : support_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string() << "*[" << group_.format(g) << "]";
  }
  return os.str();
}

RingElement push_forward(const Homomorphism& phi, const RingElement& x) {
  if (!(x.group() == phi.source())) {
    throw Error(ErrorKind::MismatchedGroup, "element is not over the homomorphism source");
  }
  RingElement out(phi.target());
  for (const auto& [g, c] : x.support()) out.add_term(phi.apply(g), c);
  return out;
}

}  // namespace l2approx
