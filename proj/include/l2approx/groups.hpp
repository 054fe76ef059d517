#pragma once

// Concrete discrete groups with canonical element forms.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace l2approx {

/// Canonical payload of a group element. The encoding depends on the
/// owning group:
///   Trivial      -> {}
///   Cyclic(N)    -> {r}, 0 <= r < N
///   FreeAbelian  -> {v_1, ..., v_n}
///   Free(k)      -> reduced word of signed generators, +i is a_i, -i its inverse (1-based)
///   FiniteTable  -> {index into the multiplication table}
///   Product(L,R) -> {len(L payload), L payload..., R payload...}
/// Equal payloads <=> equal elements, so ordering and hashing can use the
/// payload directly.
struct GroupElement {
  std::vector<std::int64_t> data;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

/// One step of a generator decomposition: generator index raised to `exponent`.
struct GeneratorPower {
  std::size_t generator;
  std::int64_t exponent;
};

class Group {
 public:
  enum class Kind { Trivial, Cyclic, FreeAbelian, Free, FiniteTable, Product };

  static Group trivial();
  static Group cyclic(std::int64_t n);
  static Group free_abelian(std::int64_t rank);
  static Group free(std::int64_t rank);
  /// `table[i][j]` is the index of element i * element j. Verified on
  /// construction: Latin square, two-sided identity, inverses, associativity.
  static Group finite_table(std::vector<std::vector<std::int64_t>> table,
                            std::vector<std::string> names = {});
  static Group product(Group left, Group right);

  Kind kind() const;
  /// N for Cyclic, rank for FreeAbelian and Free, table size for FiniteTable.
  std::int64_t parameter() const;
  const Group& left() const;
  const Group& right() const;
  const std::vector<std::string>& names() const;

  bool is_finite() const;
  /// |G| for finite groups, nullopt otherwise.
  std::optional<std::int64_t> order() const;

  GroupElement identity() const;
  bool is_identity(const GroupElement& g) const;
  bool is_valid(const GroupElement& g) const;
  /// Brings a loosely formed payload into canonical form (reduces free
  /// words and residues). Throws MismatchedGroup when the shape is wrong.
  GroupElement canonicalize(const GroupElement& g) const;

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, std::int64_t k) const;

  /// All elements, identity first, deterministic order. Throws InfiniteGroup.
  std::vector<GroupElement> enumerate() const;
  /// Position of g in `enumerate()`.
  std::int64_t index_of(const GroupElement& g) const;

  std::size_t generator_count() const;
  GroupElement generator(std::size_t i) const;
  std::vector<GeneratorPower> decompose(const GroupElement& g) const;

  /// Random element; for infinite groups words/vectors are bounded by `spread`.
  GroupElement random_element(std::mt19937_64& rng, int spread = 3) const;

  std::string describe() const;
  std::string format(const GroupElement& g) const;

  bool operator==(const Group& other) const;

 private:
  struct Impl;
  explicit Group(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Homomorphism determined by generator images. For FiniteTable sources every
/// element is a generator, so the images form a full element map.
class Homomorphism {
 public:
  /// Verifies the defining relations of the source (cyclic order, commuting
  /// images for free abelian sources and product factors, full table check
  /// for FiniteTable sources). Throws UndefinedGenerator if the image count
  /// does not match the source generators and InvalidGroup on a relation failure.
  Homomorphism(Group source, Group target, std::vector<GroupElement> generator_images);

  /// ℤ^n -> (ℤ/N)^n reduction (n >= 1). Used for the default quotient towers.
  static Homomorphism reduction_mod(std::int64_t rank, std::int64_t modulus);

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }
  const std::vector<GroupElement>& images() const { return images_; }

  GroupElement apply(const GroupElement& g) const;

 private:
  Group source_;
  Group target_;
  std::vector<GroupElement> images_;
};

/// (ℤ/N)^rank as a nested product, or ℤ/N for rank 1.
Group cyclic_power(std::int64_t modulus, std::int64_t rank);

}  // namespace l2approx
