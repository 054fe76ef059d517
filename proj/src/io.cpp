#include "l2approx/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "l2approx/error.hpp"

namespace l2approx {

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::string rational_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << j.get<double>();
    return os.str();
  }
  parse_fail("coefficient must be a string \"p/q\" or a number");
}

// "a b^-1 a^2": letters name generators a=1, b=2, ...
std::vector<std::int64_t> parse_word_string(const std::string& s, std::int64_t rank) {
  std::vector<std::int64_t> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    if (tok.empty() || !std::islower(static_cast<unsigned char>(tok[0]))) parse_fail("bad word token \"" + tok + "\"");
    const std::int64_t gen = tok[0] - 'a' + 1;
    if (gen > rank) throw Error(ErrorKind::UndefinedGenerator, "generator " + tok.substr(0, 1) + " not in rank " + std::to_string(rank));
    std::int64_t exponent = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^') parse_fail("bad word token \"" + tok + "\"");
      try {
        std::size_t used = 0;
        exponent = std::stoll(tok.substr(2), &used);
        if (used != tok.size() - 2) parse_fail("bad exponent in \"" + tok + "\"");
      } catch (const std::logic_error&) {
        parse_fail("bad exponent in \"" + tok + "\"");
      }
    }
    for (std::int64_t k = 0; k < std::llabs(exponent); ++k) out.push_back(exponent > 0 ? gen : -gen);
  }
  return out;
}

std::vector<std::int64_t> raw_payload(const Group& g, const json& j) {
  switch (g.kind()) {
    case Group::Kind::Trivial:
      if (!(j.is_null() || (j.is_array() && j.empty()) || (j.is_number_integer() && j.get<std::int64_t>() == 0))) {
        parse_fail("trivial group element must be null or []");
      }
      return {};
    case Group::Kind::Cyclic:
      return {as_int(j, "cyclic element")};
    case Group::Kind::FreeAbelian: {
      if (j.is_number_integer() && g.parameter() == 1) return {j.get<std::int64_t>()};
      if (!j.is_array()) parse_fail("free abelian element must be an integer array");
      std::vector<std::int64_t> v;
      for (const auto& x : j) v.push_back(as_int(x, "free abelian coordinate"));
      return v;
    }
    case Group::Kind::Free: {
      if (j.is_string()) return parse_word_string(j.get<std::string>(), g.parameter());
      if (!j.is_array()) parse_fail("free group element must be a signed generator list or a word string");
      std::vector<std::int64_t> v;
      for (const auto& x : j) v.push_back(as_int(x, "free generator"));
      return v;
    }
    case Group::Kind::FiniteTable: {
      if (j.is_string()) {
        const auto& names = g.names();
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (names[i] == j.get<std::string>()) return {static_cast<std::int64_t>(i)};
        }
        parse_fail("unknown element name \"" + j.get<std::string>() + "\"");
      }
      return {as_int(j, "table element")};
    }
    case Group::Kind::Product: {
      if (!j.is_array() || j.size() != 2) parse_fail("product element must be a pair");
      const auto l = g.left().canonicalize(GroupElement{raw_payload(g.left(), j[0])});
      const auto r = g.right().canonicalize(GroupElement{raw_payload(g.right(), j[1])});
      std::vector<std::int64_t> v{static_cast<std::int64_t>(l.data.size())};
      v.insert(v.end(), l.data.begin(), l.data.end());
      v.insert(v.end(), r.data.begin(), r.data.end());
      return v;
    }
  }
  parse_fail("unknown group kind");
}

RingElement parse_ring_element_impl(const Group& g, const json& j) {
  RingElement x(g);
  if (j.is_number_integer() || j.is_string()) {
    // Shorthand for a multiple of the identity.
    x.add_term(g.identity(), Coefficient::parse(rational_text(j)));
    return x;
  }
  if (!j.is_array()) parse_fail("ring element must be a list of terms");
  for (const auto& term : j) {
    const auto elem = parse_element(g, term.contains("word") ? term.at("word") : json());
    const std::string re = term.contains("re") ? rational_text(term.at("re")) : "0";
    const std::string im = term.contains("im") ? rational_text(term.at("im")) : "0";
    x.add_term(elem, Coefficient::parse(re, im));
  }
  return x;
}

template <class F>
auto wrap_json_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace

Group parse_group(const json& j) {
  return wrap_json_errors([&]() -> Group {
    const auto type = field(j, "type").get<std::string>();
    if (type == "trivial") return Group::trivial();
    if (type == "cyclic") return Group::cyclic(as_int(field(j, "n"), "n"));
    if (type == "free_abelian") return Group::free_abelian(as_int(field(j, "rank"), "rank"));
    if (type == "free") return Group::free(as_int(field(j, "rank"), "rank"));
    if (type == "finite_table") {
      auto table = field(j, "table").get<std::vector<std::vector<std::int64_t>>>();
      std::vector<std::string> names;
      if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
      return Group::finite_table(std::move(table), std::move(names));
    }
    if (type == "product") {
      const auto& factors = field(j, "factors");
      if (!factors.is_array() || factors.size() < 2) parse_fail("product needs at least two factors");
      Group g = parse_group(factors.back());
      for (std::size_t i = factors.size() - 1; i-- > 0;) g = Group::product(parse_group(factors[i]), g);
      return g;
    }
    throw Error(ErrorKind::InvalidGroup, "unknown group type \"" + type + "\"");
  });
}

json group_to_json(const Group& g) {
  switch (g.kind()) {
    case Group::Kind::Trivial:
      return {{"type", "trivial"}};
    case Group::Kind::Cyclic:
      return {{"type", "cyclic"}, {"n", g.parameter()}};
    case Group::Kind::FreeAbelian:
      return {{"type", "free_abelian"}, {"rank", g.parameter()}};
    case Group::Kind::Free:
      return {{"type", "free"}, {"rank", g.parameter()}};
    case Group::Kind::FiniteTable: {
      json table = json::array();
      const auto n = g.parameter();
      for (std::int64_t a = 0; a < n; ++a) {
        json row = json::array();
        for (std::int64_t b = 0; b < n; ++b) row.push_back(g.multiply(GroupElement{{a}}, GroupElement{{b}}).data[0]);
        table.push_back(row);
      }
      json out{{"type", "finite_table"}, {"table", table}};
      if (!g.names().empty()) out["names"] = g.names();
      return out;
    }
    case Group::Kind::Product:
      return {{"type", "product"}, {"factors", {group_to_json(g.left()), group_to_json(g.right())}}};
  }
  return {};
}

GroupElement parse_element(const Group& g, const json& j) {
  return wrap_json_errors([&] { return g.canonicalize(GroupElement{raw_payload(g, j)}); });
}

json element_to_json(const Group& g, const GroupElement& x) {
  switch (g.kind()) {
    case Group::Kind::Trivial:
      return nullptr;
    case Group::Kind::Cyclic:
    case Group::Kind::FiniteTable:
      return x.data.at(0);
    case Group::Kind::FreeAbelian:
    case Group::Kind::Free:
      return x.data;
    case Group::Kind::Product: {
      const auto len = static_cast<std::size_t>(x.data.at(0));
      GroupElement l{{x.data.begin() + 1, x.data.begin() + 1 + static_cast<std::ptrdiff_t>(len)}};
      GroupElement r{{x.data.begin() + 1 + static_cast<std::ptrdiff_t>(len), x.data.end()}};
      return json::array({element_to_json(g.left(), l), element_to_json(g.right(), r)});
    }
  }
  return nullptr;
}

RingElement parse_ring_element(const Group& g, const json& j) {
  return wrap_json_errors([&] { return parse_ring_element_impl(g, j); });
}

json ring_element_to_json(const RingElement& x) {
  json out = json::array();
  for (const auto& [g, c] : x.support()) {
    json term{{"word", element_to_json(x.group(), g)}, {"re", c.re_string()}};
    if (!c.is_real()) term["im"] = c.im_string();
    out.push_back(std::move(term));
  }
  return out;
}

RingMatrix parse_matrix(const Group& g, const json& j) {
  return wrap_json_errors([&] {
    const auto rows = static_cast<std::size_t>(as_int(field(j, "rows"), "rows"));
    const auto cols = j.contains("cols") ? static_cast<std::size_t>(as_int(j.at("cols"), "cols")) : rows;
    const auto& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != rows) {
      throw Error(ErrorKind::DimensionMismatch, "matrix entries do not have " + std::to_string(rows) + " rows");
    }
    RingMatrix m(g, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!entries[r].is_array() || entries[r].size() != cols) {
        throw Error(ErrorKind::DimensionMismatch, "matrix row " + std::to_string(r) + " does not have " +
                                                      std::to_string(cols) + " entries");
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_ring_element_impl(g, entries[r][c]);
    }
    return m;
  });
}

json matrix_to_json(const RingMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(ring_element_to_json(m(r, c)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Homomorphism parse_homomorphism(const Group& source, const json& j) {
  return wrap_json_errors([&] {
    const Group target = parse_group(field(j, "target"));
    std::vector<GroupElement> images;
    for (const auto& x : field(j, "images")) images.push_back(parse_element(target, x));
    return Homomorphism(source, target, std::move(images));
  });
}

ChainComplexSpec parse_complex(const json& j) {
  return wrap_json_errors([&] {
    ChainComplexSpec spec{parse_group(field(j, "group")), {}, {}};
    for (const auto& n : field(j, "cells")) {
      const auto v = as_int(n, "cell count");
      if (v < 0) parse_fail("cell counts must be nonnegative");
      spec.dims.push_back(static_cast<std::size_t>(v));
    }
    if (j.contains("boundaries")) {
      for (const auto& b : j.at("boundaries")) spec.boundaries.push_back(parse_matrix(spec.group, b));
    }
    return spec;
  });
}

json density_to_json(const SpectralDensity& f) {
  json jumps = json::array();
  double cumulative = 0.0;
  for (const auto& jump : f.jumps()) {
    cumulative += jump.mass;
    jumps.push_back({{"lambda", round12(jump.lambda)}, {"mass", round12(jump.mass)}, {"F", round12(cumulative)}});
  }
  return {{"total_mass", round12(f.total_mass())}, {"resolution", round12(f.resolution())}, {"jumps", jumps}};
}

std::string density_to_csv(const SpectralDensity& f) {
  std::string out = "lambda,F\n";
  double cumulative = 0.0;
  char buf[96];
  for (const auto& jump : f.jumps()) {
    cumulative += jump.mass;
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", round12(jump.lambda), round12(cumulative));
    out += buf;
  }
  return out;
}

}  // namespace l2approx
