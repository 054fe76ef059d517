#include "support.hpp"

using namespace test;

TEST_CASE("circle") {
  const auto spec = fixtures::circle_complex();
  validate(spec);
  const auto laps = laplacians(spec);
  REQUIRE(laps.size() == 2);
  CHECK(laps[0] == fixtures::circle_laplacian());
  CHECK(laps[1] == fixtures::circle_laplacian());
  CwOptions o;
  o.grid = 4096;
  const auto r = l2_invariants(spec, o);
  REQUIRE(r.degrees.size() == 2);
  for (const auto& d : r.degrees) {
    CHECK(d.betti == doctest::Approx(0.0));
    CHECK(d.det_class);
  }
  REQUIRE(r.torsion.has_value());
  CHECK(std::abs(*r.torsion) < 0.02);
  CHECK(r.cellular_euler == 0);
  CHECK(r.l2_euler == doctest::Approx(0.0));
}

TEST_CASE("torus by oracle and by tower") {
  const auto spec = fixtures::torus_complex();
  validate(spec);
  const auto laps = laplacians(spec);
  REQUIRE(laps.size() == 3);
  CHECK(laps[0] == fixtures::torus_laplacian(2));
  CHECK(laps[2] == fixtures::torus_laplacian(2));
  CwOptions oracle;
  oracle.method = CwMethod::Oracle;
  CwOptions tower;
  tower.method = CwMethod::Tower;
  tower.levels = {16, 32, 64};
  for (const auto& o : {oracle, tower}) {
    const auto r = l2_invariants(spec, o);
    REQUIRE(r.degrees.size() == 3);
    for (const auto& d : r.degrees) CHECK(d.betti <= 0.02);
    CHECK(r.cellular_euler == 0);
    CHECK(std::abs(r.l2_euler) <= 0.02);
  }
}

TEST_CASE("point") {
  const auto r = l2_invariants(fixtures::point_complex());
  REQUIRE(r.degrees.size() == 1);
  CHECK(r.degrees[0].betti == doctest::Approx(1.0));
  CHECK(r.cellular_euler == 1);
  CHECK(r.l2_euler == doctest::Approx(1.0));
  CHECK_FALSE(r.torsion.has_value());
}

TEST_CASE("finite group complex") {
  const auto g = Group::cyclic(3);
  ChainComplexSpec spec{g, {1, 1}, {RingMatrix::scalar(fixtures::term(g, el({1})) - RingElement::one(g))}};
  const auto r = l2_invariants(spec);
  CHECK(r.degrees[0].betti == doctest::Approx(1.0 / 3.0));
  CHECK(r.degrees[1].betti == doctest::Approx(1.0 / 3.0));
  CHECK(r.l2_euler == doctest::Approx(0.0));
  CHECK(r.cellular_euler == 0);
}

TEST_CASE("invalid complexes") {
  const auto z1 = Group::free_abelian(1);
  const ChainComplexSpec nonzero{z1, {1, 1, 1}, {RingMatrix::identity(z1, 1), RingMatrix::identity(z1, 1)}};
  CHECK(thrown([&] { validate(nonzero); }) == ErrorKind::NotAComplex);
  const ChainComplexSpec shape{z1, {1, 2}, {RingMatrix::identity(z1, 1)}};
  CHECK(thrown([&] { validate(shape); }) == ErrorKind::NotAComplex);
  const ChainComplexSpec empty{z1, {}, {}};
  CHECK(thrown([&] { validate(empty); }) == ErrorKind::NotAComplex);
  CHECK(thrown([&] { l2_invariants(nonzero); }) == ErrorKind::NotAComplex);
}
