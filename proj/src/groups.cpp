#include "l2approx/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "l2approx/error.hpp"

namespace l2approx {

struct Group::Impl {
  Kind kind = Kind::Trivial;
  std::int64_t param = 0;
  // FiniteTable
  std::vector<std::vector<std::int64_t>> table;
  std::vector<std::string> names;
  std::int64_t identity_index = 0;
  std::vector<std::int64_t> inverse_of;
  std::vector<std::int64_t> enum_position;  // table index -> enumerate position
  // Product
  std::optional<Group> left;
  std::optional<Group> right;
};

namespace {

[[noreturn]] void mismatch(const Group& G, const GroupElement& g) {
  std::ostringstream os;
  os << "payload of length " << g.data.size() << " is not an element of " << G.describe();
  throw Error(ErrorKind::MismatchedGroup, os.str());
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// Free reduction, appending letters one at a time.
void push_letter(std::vector<std::int64_t>& word, std::int64_t letter) {
  if (!word.empty() && word.back() == -letter) {
    word.pop_back();
  } else {
    word.push_back(letter);
  }
}

std::pair<GroupElement, GroupElement> split(const GroupElement& g) {
  GroupElement l, r;
  if (g.data.empty() || g.data[0] < 0 ||
      static_cast<std::size_t>(g.data[0]) + 1 > g.data.size()) {
    throw Error(ErrorKind::MismatchedGroup, "malformed product payload");
  }
  const auto n = static_cast<std::size_t>(g.data[0]);
  l.data.assign(g.data.begin() + 1, g.data.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  r.data.assign(g.data.begin() + 1 + static_cast<std::ptrdiff_t>(n), g.data.end());
  return {std::move(l), std::move(r)};
}

GroupElement join(const GroupElement& l, const GroupElement& r) {
  GroupElement g;
  g.data.reserve(1 + l.data.size() + r.data.size());
  g.data.push_back(static_cast<std::int64_t>(l.data.size()));
  g.data.insert(g.data.end(), l.data.begin(), l.data.end());
  g.data.insert(g.data.end(), r.data.begin(), r.data.end());
  return g;
}

}  // namespace

Group::Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Group Group::trivial() { return Group(std::make_shared<Impl>()); }

Group Group::cyclic(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidGroup, "cyclic group needs N >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Cyclic;
  impl->param = n;
  return Group(impl);
}

Group Group::free_abelian(std::int64_t rank) {
  if (rank < 0) throw Error(ErrorKind::InvalidGroup, "free abelian rank must be >= 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FreeAbelian;
  impl->param = rank;
  return Group(impl);
}

Group Group::free(std::int64_t rank) {
  if (rank < 1) throw Error(ErrorKind::InvalidGroup, "free group rank must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Free;
  impl->param = rank;
  return Group(impl);
}

Group Group::finite_table(std::vector<std::vector<std::int64_t>> table,
                          std::vector<std::string> names) {
  const auto n = static_cast<std::int64_t>(table.size());
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "empty multiplication table");
  if (!names.empty() && static_cast<std::int64_t>(names.size()) != n) {
    throw Error(ErrorKind::InvalidGroup, "names do not match table size");
  }
  for (const auto& row : table) {
    if (static_cast<std::int64_t>(row.size()) != n) {
      throw Error(ErrorKind::InvalidGroup, "multiplication table is not square");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (auto v : row) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::InvalidGroup, "multiplication table is not a Latin square");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  for (std::int64_t j = 0; j < n; ++j) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (std::int64_t i = 0; i < n; ++i) {
      auto v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorKind::InvalidGroup, "multiplication table is not a Latin square");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  auto at = [&](std::int64_t a, std::int64_t b) {
    return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  std::int64_t e = -1;
  for (std::int64_t i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (std::int64_t j = 0; j < n && ok; ++j) ok = at(i, j) == j && at(j, i) == j;
    if (ok) e = i;
  }
  if (e < 0) throw Error(ErrorKind::InvalidGroup, "multiplication table has no identity");
  std::vector<std::int64_t> inv(static_cast<std::size_t>(n), -1);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (at(i, j) == e && at(j, i) == e) inv[static_cast<std::size_t>(i)] = j;
    }
    if (inv[static_cast<std::size_t>(i)] < 0) {
      throw Error(ErrorKind::InvalidGroup, "element without two-sided inverse");
    }
  }
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) {
      for (std::int64_t c = 0; c < n; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          throw Error(ErrorKind::InvalidGroup, "multiplication table is not associative");
        }
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::FiniteTable;
  impl->param = n;
  impl->table = std::move(table);
  impl->names = std::move(names);
  impl->identity_index = e;
  impl->inverse_of = std::move(inv);
  impl->enum_position.resize(static_cast<std::size_t>(n));
  std::int64_t pos = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    impl->enum_position[static_cast<std::size_t>(i)] = (i == e) ? 0 : pos++;
  }
  return Group(impl);
}

Group Group::product(Group left, Group right) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Product;
  impl->left = std::move(left);
  impl->right = std::move(right);
  return Group(impl);
}

Group::Kind Group::kind() const { return impl_->kind; }
std::int64_t Group::parameter() const { return impl_->param; }
const Group& Group::left() const { return *impl_->left; }
const Group& Group::right() const { return *impl_->right; }
const std::vector<std::string>& Group::names() const { return impl_->names; }

bool Group::is_finite() const { return order().has_value(); }

std::optional<std::int64_t> Group::order() const {
  switch (impl_->kind) {
    case Kind::Trivial:
      return 1;
    case Kind::Cyclic:
    case Kind::FiniteTable:
      return impl_->param;
    case Kind::FreeAbelian:
      if (impl_->param == 0) return 1;
      return std::nullopt;
    case Kind::Free:
      return std::nullopt;
    case Kind::Product: {
      auto l = left().order();
      auto r = right().order();
      if (!l || !r) return std::nullopt;
      return *l * *r;
    }
  }
  return std::nullopt;
}

GroupElement Group::identity() const {
  switch (impl_->kind) {
    case Kind::Trivial:
    case Kind::Free:
      return {};
    case Kind::Cyclic:
      return {{0}};
    case Kind::FreeAbelian:
      return {std::vector<std::int64_t>(static_cast<std::size_t>(impl_->param), 0)};
    case Kind::FiniteTable:
      return {{impl_->identity_index}};
    case Kind::Product:
      return join(left().identity(), right().identity());
  }
  return {};
}

bool Group::is_identity(const GroupElement& g) const { return g == identity(); }

bool Group::is_valid(const GroupElement& g) const {
  switch (impl_->kind) {
    case Kind::Trivial:
      return g.data.empty();
    case Kind::Cyclic:
    case Kind::FiniteTable:
      return g.data.size() == 1 && g.data[0] >= 0 && g.data[0] < impl_->param;
    case Kind::FreeAbelian:
      return static_cast<std::int64_t>(g.data.size()) == impl_->param;
    case Kind::Free:
      for (std::size_t i = 0; i < g.data.size(); ++i) {
        auto x = g.data[i];
        if (x == 0 || x > impl_->param || x < -impl_->param) return false;
        if (i > 0 && g.data[i - 1] == -x) return false;
      }
      return true;
    case Kind::Product: {
      if (g.data.empty() || g.data[0] < 0 ||
          static_cast<std::size_t>(g.data[0]) + 1 > g.data.size()) {
        return false;
      }
      auto [l, r] = split(g);
      return left().is_valid(l) && right().is_valid(r);
    }
  }
  return false;
}

GroupElement Group::canonicalize(const GroupElement& g) const {
  switch (impl_->kind) {
    case Kind::Trivial:
      if (!g.data.empty()) mismatch(*this, g);
      return g;
    case Kind::Cyclic:
      if (g.data.size() != 1) mismatch(*this, g);
      return {{mod(g.data[0], impl_->param)}};
    case Kind::FiniteTable:
      if (!is_valid(g)) mismatch(*this, g);
      return g;
    case Kind::FreeAbelian:
      if (!is_valid(g)) mismatch(*this, g);
      return g;
    case Kind::Free: {
      GroupElement out;
      for (auto x : g.data) {
        if (x == 0 || x > impl_->param || x < -impl_->param) mismatch(*this, g);
        push_letter(out.data, x);
      }
      return out;
    }
    case Kind::Product: {
      auto [l, r] = split(g);
      return join(left().canonicalize(l), right().canonicalize(r));
    }
  }
  return g;
}

GroupElement Group::multiply(const GroupElement& g, const GroupElement& h) const {
  if (!is_valid(g)) mismatch(*this, g);
  if (!is_valid(h)) mismatch(*this, h);
  switch (impl_->kind) {
    case Kind::Trivial:
      return {};
    case Kind::Cyclic:
      return {{mod(g.data[0] + h.data[0], impl_->param)}};
    case Kind::FreeAbelian: {
      GroupElement out = g;
      for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += h.data[i];
      return out;
    }
    case Kind::Free: {
      GroupElement out = g;
      for (auto x : h.data) push_letter(out.data, x);
      return out;
    }
    case Kind::FiniteTable:
      return {{impl_->table[static_cast<std::size_t>(g.data[0])]
                           [static_cast<std::size_t>(h.data[0])]}};
    case Kind::Product: {
      auto [gl, gr] = split(g);
      auto [hl, hr] = split(h);
      return join(left().multiply(gl, hl), right().multiply(gr, hr));
    }
  }
  return {};
}

GroupElement Group::inverse(const GroupElement& g) const {
  if (!is_valid(g)) mismatch(*this, g);
  switch (impl_->kind) {
    case Kind::Trivial:
      return {};
    case Kind::Cyclic:
      return {{mod(-g.data[0], impl_->param)}};
    case Kind::FreeAbelian: {
      GroupElement out = g;
      for (auto& x : out.data) x = -x;
      return out;
    }
    case Kind::Free: {
      GroupElement out;
      out.data.reserve(g.data.size());
      for (auto it = g.data.rbegin(); it != g.data.rend(); ++it) out.data.push_back(-*it);
      return out;
    }
    case Kind::FiniteTable:
      return {{impl_->inverse_of[static_cast<std::size_t>(g.data[0])]}};
    case Kind::Product: {
      auto [l, r] = split(g);
      return join(left().inverse(l), right().inverse(r));
    }
  }
  return {};
}

GroupElement Group::power(const GroupElement& g, std::int64_t k) const {
  if (!is_valid(g)) mismatch(*this, g);
  switch (impl_->kind) {
    case Kind::Cyclic: {
      // k * r mod N without overflow for the moduli we handle.
      const auto n = impl_->param;
      const auto r = static_cast<__int128>(g.data[0]) * static_cast<__int128>(k) % n;
      return {{mod(static_cast<std::int64_t>(r), n)}};
    }
    case Kind::FreeAbelian: {
      GroupElement out = g;
      for (auto& x : out.data) x *= k;
      return out;
    }
    default:
      break;
  }
  GroupElement base = k < 0 ? inverse(g) : g;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GroupElement acc = identity();
  while (e > 0) {
    if (e & 1U) acc = multiply(acc, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return acc;
}

std::vector<GroupElement> Group::enumerate() const {
  switch (impl_->kind) {
    case Kind::Trivial:
      return {GroupElement{}};
    case Kind::Cyclic: {
      std::vector<GroupElement> out;
      out.reserve(static_cast<std::size_t>(impl_->param));
      for (std::int64_t r = 0; r < impl_->param; ++r) out.push_back({{r}});
      return out;
    }
    case Kind::FiniteTable: {
      std::vector<GroupElement> out(static_cast<std::size_t>(impl_->param));
      for (std::int64_t i = 0; i < impl_->param; ++i) {
        out[static_cast<std::size_t>(impl_->enum_position[static_cast<std::size_t>(i)])] = {{i}};
      }
      return out;
    }
    case Kind::FreeAbelian:
      if (impl_->param == 0) return {GroupElement{}};
      break;
    case Kind::Free:
      break;
    case Kind::Product: {
      if (!is_finite()) break;
      auto ls = left().enumerate();
      auto rs = right().enumerate();
      std::vector<GroupElement> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls) {
        for (const auto& r : rs) out.push_back(join(l, r));
      }
      return out;
    }
  }
  throw Error(ErrorKind::InfiniteGroup, describe() + " cannot be enumerated");
}

std::int64_t Group::index_of(const GroupElement& g) const {
  if (!is_valid(g)) mismatch(*this, g);
  switch (impl_->kind) {
    case Kind::Trivial:
      return 0;
    case Kind::Cyclic:
      return g.data[0];
    case Kind::FiniteTable:
      return impl_->enum_position[static_cast<std::size_t>(g.data[0])];
    case Kind::FreeAbelian:
      if (impl_->param == 0) return 0;
      break;
    case Kind::Free:
      break;
    case Kind::Product: {
      if (!is_finite()) break;
      auto [l, r] = split(g);
      return left().index_of(l) * *right().order() + right().index_of(r);
    }
  }
  throw Error(ErrorKind::InfiniteGroup, describe() + " has no element indexing");
}

std::size_t Group::generator_count() const {
  switch (impl_->kind) {
    case Kind::Trivial:
      return 0;
    case Kind::Cyclic:
      return 1;
    case Kind::FreeAbelian:
    case Kind::Free:
    case Kind::FiniteTable:
      return static_cast<std::size_t>(impl_->param);
    case Kind::Product:
      return left().generator_count() + right().generator_count();
  }
  return 0;
}

GroupElement Group::generator(std::size_t i) const {
  if (i >= generator_count()) {
    throw Error(ErrorKind::UndefinedGenerator, "generator index out of range for " + describe());
  }
  switch (impl_->kind) {
    case Kind::Trivial:
      break;
    case Kind::Cyclic:
      return {{mod(1, impl_->param)}};
    case Kind::FreeAbelian: {
      auto e = identity();
      e.data[i] = 1;
      return e;
    }
    case Kind::Free:
      return {{static_cast<std::int64_t>(i) + 1}};
    case Kind::FiniteTable:
      return {{static_cast<std::int64_t>(i)}};
    case Kind::Product: {
      const auto nl = left().generator_count();
      if (i < nl) return join(left().generator(i), right().identity());
      return join(left().identity(), right().generator(i - nl));
    }
  }
  return identity();
}

std::vector<GeneratorPower> Group::decompose(const GroupElement& g) const {
  if (!is_valid(g)) mismatch(*this, g);
  std::vector<GeneratorPower> out;
  switch (impl_->kind) {
    case Kind::Trivial:
      break;
    case Kind::Cyclic:
      if (g.data[0] != 0) out.push_back({0, g.data[0]});
      break;
    case Kind::FreeAbelian:
      for (std::size_t i = 0; i < g.data.size(); ++i) {
        if (g.data[i] != 0) out.push_back({i, g.data[i]});
      }
      break;
    case Kind::Free:
      for (auto x : g.data) {
        out.push_back({static_cast<std::size_t>(x > 0 ? x : -x) - 1, x > 0 ? 1 : -1});
      }
      break;
    case Kind::FiniteTable:
      if (g.data[0] != impl_->identity_index) {
        out.push_back({static_cast<std::size_t>(g.data[0]), 1});
      }
      break;
    case Kind::Product: {
      auto [l, r] = split(g);
      out = left().decompose(l);
      const auto nl = left().generator_count();
      for (auto gp : right().decompose(r)) out.push_back({gp.generator + nl, gp.exponent});
      break;
    }
  }
  return out;
}

GroupElement Group::random_element(std::mt19937_64& rng, int spread) const {
  switch (impl_->kind) {
    case Kind::Trivial:
      return {};
    case Kind::Cyclic:
    case Kind::FiniteTable: {
      std::uniform_int_distribution<std::int64_t> pick(0, impl_->param - 1);
      return {{pick(rng)}};
    }
    case Kind::FreeAbelian: {
      std::uniform_int_distribution<std::int64_t> pick(-spread, spread);
      GroupElement g = identity();
      for (auto& x : g.data) x = pick(rng);
      return g;
    }
    case Kind::Free: {
      std::uniform_int_distribution<int> len(0, 2 * spread);
      std::uniform_int_distribution<std::int64_t> letter(1, impl_->param);
      std::bernoulli_distribution sign(0.5);
      GroupElement g;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) {
        auto x = letter(rng);
        push_letter(g.data, sign(rng) ? x : -x);
      }
      return g;
    }
    case Kind::Product:
      return join(left().random_element(rng, spread), right().random_element(rng, spread));
  }
  return {};
}

std::string Group::describe() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::Trivial:
      os << "1";
      break;
    case Kind::Cyclic:
      os << "Z/" << impl_->param;
      break;
    case Kind::FreeAbelian:
      os << "Z^" << impl_->param;
      break;
    case Kind::Free:
      os << "F_" << impl_->param;
      break;
    case Kind::FiniteTable:
      os << "Table(" << impl_->param << ")";
      break;
    case Kind::Product:
      os << "(" << left().describe() << " x " << right().describe() << ")";
      break;
  }
  return os.str();
}

std::string Group::format(const GroupElement& g) const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::Trivial:
      os << "1";
      break;
    case Kind::Cyclic:
      os << g.data.at(0);
      break;
    case Kind::FreeAbelian: {
      os << "(";
      for (std::size_t i = 0; i < g.data.size(); ++i) os << (i ? "," : "") << g.data[i];
      os << ")";
      break;
    }
    case Kind::Free: {
      if (g.data.empty()) os << "1";
      for (std::size_t i = 0; i < g.data.size(); ++i) {
        const auto x = g.data[i];
        os << (i ? " " : "") << "a" << (x > 0 ? x : -x) << (x < 0 ? "^-1" : "");
      }
      break;
    }
    case Kind::FiniteTable: {
      const auto i = static_cast<std::size_t>(g.data.at(0));
      if (!impl_->names.empty()) {
        os << impl_->names[i];
      } else {
        os << "#" << i;
      }
      break;
    }
    case Kind::Product: {
      auto [l, r] = split(g);
      os << "(" << left().format(l) << ", " << right().format(r) << ")";
      break;
    }
  }
  return os.str();
}

bool Group::operator==(const Group& other) const {
  if (impl_ == other.impl_) return true;
  if (impl_->kind != other.impl_->kind) return false;
  switch (impl_->kind) {
    case Kind::Trivial:
      return true;
    case Kind::Cyclic:
    case Kind::FreeAbelian:
    case Kind::Free:
      return impl_->param == other.impl_->param;
    case Kind::FiniteTable:
      return impl_->table == other.impl_->table;
    case Kind::Product:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

Group cyclic_power(std::int64_t modulus, std::int64_t rank) {
  if (rank < 1) return Group::trivial();
  Group g = Group::cyclic(modulus);
  for (std::int64_t i = 1; i < rank; ++i) g = Group::product(Group::cyclic(modulus), g);
  return g;
}

// ---------------------------------------------------------------------------

namespace {

// Checks that the images of a source's generators (starting at `offset`)
// satisfy the source's defining relations inside `target`.
void check_relations(const Group& source, const Group& target,
                     const std::vector<GroupElement>& images, std::size_t offset) {
  auto img = [&](std::size_t i) -> const GroupElement& { return images[offset + i]; };
  auto commute = [&](const GroupElement& x, const GroupElement& y) {
    return target.multiply(x, y) == target.multiply(y, x);
  };
  switch (source.kind()) {
    case Group::Kind::Trivial:
    case Group::Kind::Free:
      return;
    case Group::Kind::Cyclic:
      if (!target.is_identity(target.power(img(0), source.parameter()))) {
        throw Error(ErrorKind::InvalidGroup,
                    "image of the cyclic generator does not have order dividing " +
                        std::to_string(source.parameter()));
      }
      return;
    case Group::Kind::FreeAbelian:
      for (std::size_t i = 0; i < source.generator_count(); ++i) {
        for (std::size_t j = i + 1; j < source.generator_count(); ++j) {
          if (!commute(img(i), img(j))) {
            throw Error(ErrorKind::InvalidGroup, "images of free abelian generators do not commute");
          }
        }
      }
      return;
    case Group::Kind::FiniteTable: {
      const auto elems = source.enumerate();
      if (!target.is_identity(img(static_cast<std::size_t>(source.identity().data[0])))) {
        throw Error(ErrorKind::InvalidGroup, "identity is not mapped to identity");
      }
      for (const auto& a : elems) {
        for (const auto& b : elems) {
          const auto ab = source.multiply(a, b);
          const auto lhs = img(static_cast<std::size_t>(ab.data[0]));
          const auto rhs = target.multiply(img(static_cast<std::size_t>(a.data[0])),
                                           img(static_cast<std::size_t>(b.data[0])));
          if (lhs != rhs) throw Error(ErrorKind::InvalidGroup, "element map is not multiplicative");
        }
      }
      return;
    }
    case Group::Kind::Product: {
      const auto nl = source.left().generator_count();
      const auto nr = source.right().generator_count();
      check_relations(source.left(), target, images, offset);
      check_relations(source.right(), target, images, offset + nl);
      for (std::size_t i = 0; i < nl; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
          if (!commute(img(i), img(nl + j))) {
            throw Error(ErrorKind::InvalidGroup, "images of product factors do not commute");
          }
        }
      }
      return;
    }
  }
}

}  // namespace

Homomorphism::Homomorphism(Group source, Group target, std::vector<GroupElement> generator_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)) {
  if (images_.size() != source_.generator_count()) {
    throw Error(ErrorKind::UndefinedGenerator,
                "expected " + std::to_string(source_.generator_count()) + " generator images, got " +
                    std::to_string(images_.size()));
  }
  for (auto& img : images_) img = target_.canonicalize(img);
  check_relations(source_, target_, images_, 0);
}

Homomorphism Homomorphism::reduction_mod(std::int64_t rank, std::int64_t modulus) {
  Group source = Group::free_abelian(rank);
  Group target = cyclic_power(modulus, rank);
  std::vector<GroupElement> images;
  for (std::size_t i = 0; i < static_cast<std::size_t>(rank); ++i) images.push_back(target.generator(i));
  return Homomorphism(source, target, std::move(images));
}

GroupElement Homomorphism::apply(const GroupElement& g) const {
  GroupElement acc = target_.identity();
  for (const auto& step : source_.decompose(g)) {
    acc = target_.multiply(acc, target_.power(images_[step.generator], step.exponent));
  }
  return acc;
}

}  // namespace l2approx
