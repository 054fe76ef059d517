#include "support.hpp"

using namespace test;

namespace {

std::vector<Group> sample_groups() {
  return {Group::trivial(),
          Group::cyclic(7),
          Group::free_abelian(2),
          Group::free(2),
          fixtures::s3(),
          Group::product(Group::cyclic(2), fixtures::s3()),
          Group::product(Group::free_abelian(1), Group::cyclic(3))};
}

GroupElement perm(const Group& s3, const std::string& name) {
  const auto& n = s3.names();
  return el({std::find(n.begin(), n.end(), name) - n.begin()});
}

}  // namespace

TEST_CASE("multiply examples") {
  const auto f2 = Group::free(2);
  CHECK(f2.is_identity(f2.multiply(el({1}), el({-1}))));
  CHECK(Group::free_abelian(2).multiply(el({1, 0}), el({0, 3})) == el({1, 3}));
  CHECK(Group::cyclic(4).multiply(el({3}), el({2})) == el({1}));
}

TEST_CASE("inverse examples") {
  CHECK(Group::free(1).inverse(el({1, 1})) == el({-1, -1}));
  CHECK(Group::cyclic(5).inverse(el({2})) == el({3}));
  const auto s3 = fixtures::s3();
  const auto tr = perm(s3, "213");
  CHECK(s3.inverse(tr) == tr);
}

TEST_CASE("homomorphism examples") {
  const Homomorphism red(Group::free_abelian(1), Group::cyclic(4), {el({1})});
  CHECK(red.apply(el({6})) == el({2}));
  CHECK(red.apply(el({0})) == el({0}));

  const auto s3 = fixtures::s3();
  const auto a = perm(s3, "213");
  const auto b = perm(s3, "231");
  const Homomorphism phi(Group::free(2), s3, {a, b});
  CHECK(phi.apply(el({1, 2})) == s3.multiply(a, b));
  CHECK(phi.apply(el({})) == s3.identity());
  // Composition applies b first: the product fixes 1 and swaps 2 and 3.
  CHECK(s3.names()[phi.apply(el({1, 2})).data[0]] == "132");
}

TEST_CASE("enumerate examples") {
  const auto c3 = Group::cyclic(3).enumerate();
  REQUIRE(c3.size() == 3);
  CHECK(c3[0] == el({0}));
  CHECK(c3[1] == el({1}));
  CHECK(c3[2] == el({2}));
  CHECK(Group::product(Group::cyclic(2), Group::cyclic(2)).enumerate().size() == 4);
  const auto s3 = fixtures::s3();
  const auto all = s3.enumerate();
  CHECK(all.size() == 6);
  CHECK(s3.is_identity(all.front()));
  CHECK(thrown([] { Group::free_abelian(2).enumerate(); }) == ErrorKind::InfiniteGroup);
  CHECK(thrown([] { Group::free(1).enumerate(); }) == ErrorKind::InfiniteGroup);
}

TEST_CASE("table identity need not be element 0") {
  const auto g = Group::finite_table({{1, 0}, {0, 1}});
  CHECK(g.identity() == el({1}));
  CHECK(g.enumerate().front() == el({1}));
  CHECK(g.index_of(el({0})) == 1);
}

TEST_CASE("invalid groups and payloads") {
  CHECK(thrown([] { Group::cyclic(0); }) == ErrorKind::InvalidGroup);
  CHECK(thrown([] { Group::free(0); }) == ErrorKind::InvalidGroup);
  CHECK(thrown([] { Group::finite_table({{0, 1}, {0, 1}}); }) == ErrorKind::InvalidGroup);
  CHECK(thrown([] { Group::finite_table({{0, 1}, {1, 1}}); }) == ErrorKind::InvalidGroup);
  // Latin square with identity 0 but not associative.
  CHECK(thrown([] {
          Group::finite_table({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
        }) == ErrorKind::InvalidGroup);
  CHECK(thrown([] { Group::free_abelian(2).multiply(el({1}), el({0, 1})); }) == ErrorKind::MismatchedGroup);
  CHECK(thrown([] { Homomorphism(Group::free(2), Group::cyclic(3), {el({1})}); }) == ErrorKind::UndefinedGenerator);
  CHECK(thrown([] { Homomorphism(Group::cyclic(4), Group::cyclic(6), {el({1})}); }) == ErrorKind::InvalidGroup);
}

TEST_CASE("free words are reduced and canonical") {
  const auto f2 = Group::free(2);
  CHECK(f2.canonicalize(el({1, 2, -2, -1, 2})) == el({2}));
  CHECK(f2.multiply(el({1, 2}), el({-2, 1})) == el({1, 1}));
  CHECK(f2.power(el({1, 2}), -2) == el({-2, -1, -2, -1}));
  CHECK(Group::cyclic(5).canonicalize(el({-7})) == el({3}));
}

TEST_CASE("group laws on random triples") {
  auto r = rng();
  for (const auto& g : sample_groups()) {
    CAPTURE(g.describe());
    for (int i = 0; i < 1000; ++i) {
      const auto a = g.random_element(r);
      const auto b = g.random_element(r);
      const auto c = g.random_element(r);
      REQUIRE(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      REQUIRE(g.multiply(a, g.identity()) == a);
      REQUIRE(g.multiply(g.identity(), a) == a);
      REQUIRE(g.is_identity(g.multiply(a, g.inverse(a))));
      REQUIRE(g.canonicalize(g.canonicalize(a)) == g.canonicalize(a));
      REQUIRE(g.is_valid(a));
    }
  }
}

TEST_CASE("homomorphism property on random pairs") {
  auto r = rng();
  const auto s3 = fixtures::s3();
  const std::vector<Homomorphism> maps{
      Homomorphism(Group::free_abelian(1), Group::cyclic(4), {el({1})}),
      Homomorphism::reduction_mod(2, 6),
      Homomorphism(Group::free(2), s3, {perm(s3, "213"), perm(s3, "231")}),
      Homomorphism(Group::cyclic(2), s3, {perm(s3, "132")}),
      Homomorphism(Group::cyclic(3), Group::product(Group::cyclic(2), Group::cyclic(3)), {el({1, 0, 1})}),
      Homomorphism(Group::product(Group::free_abelian(1), Group::cyclic(3)), Group::cyclic(6),
                   {el({3}), el({2})}),
  };
  for (const auto& phi : maps) {
    CAPTURE(phi.source().describe());
    CHECK(phi.target().is_identity(phi.apply(phi.source().identity())));
    for (int i = 0; i < 1000; ++i) {
      const auto a = phi.source().random_element(r);
      const auto b = phi.source().random_element(r);
      REQUIRE(phi.apply(phi.source().multiply(a, b)) == phi.target().multiply(phi.apply(a), phi.apply(b)));
    }
  }
}

TEST_CASE("index_of and decompose round trip") {
  for (const auto& g : {Group::cyclic(6), fixtures::s3(), Group::product(Group::cyclic(2), Group::cyclic(3))}) {
    const auto all = g.enumerate();
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(g.index_of(all[i]) == static_cast<std::int64_t>(i));
      auto x = g.identity();
      for (const auto& step : g.decompose(all[i])) x = g.multiply(x, g.power(g.generator(step.generator), step.exponent));
      CHECK(x == all[i]);
    }
  }
}
