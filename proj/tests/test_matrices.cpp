#include "support.hpp"

using namespace test;

namespace {

const Group Z = Group::free_abelian(1);

RingMatrix m1(const RingElement& x) { return RingMatrix::scalar(x); }

}  // namespace

TEST_CASE("adjoint examples") {
  CHECK(adjoint(m1(z({{0, 1}, {1, -1}}))) == m1(z({{0, 1}, {-1, -1}})));
  CHECK(adjoint(RingMatrix::identity(Z, 3)) == RingMatrix::identity(Z, 3));
  const auto f1 = Group::free(1);
  RingMatrix m(f1, 2, 2);
  m(0, 1) = fixtures::term(f1, el({1}));
  RingMatrix expect(f1, 2, 2);
  expect(1, 0) = fixtures::term(f1, el({-1}));
  CHECK(adjoint(m) == expect);
}

TEST_CASE("mat_mul examples") {
  auto r = rng();
  const auto m = fixtures::random_matrix(Z, 3, r);
  CHECK(m * RingMatrix::identity(Z, 3) == m);
  CHECK(m1(z({{0, 1}, {1, -1}})) * m1(z({{0, 1}, {-1, -1}})) == fixtures::circle_laplacian());
  CHECK(fixtures::elementary_E() * fixtures::elementary_E_inverse() == RingMatrix::identity(Z, 2));
  CHECK(thrown([&] { (void)(m * RingMatrix::identity(Z, 2)); }) == ErrorKind::DimensionMismatch);
  CHECK(thrown([&] { (void)(m * RingMatrix::identity(Group::free_abelian(2), 3)); }) == ErrorKind::MismatchedGroup);
}

TEST_CASE("positive_square examples") {
  CHECK(positive_square(m1(z({{0, 1}, {1, -1}}))) == fixtures::circle_laplacian());
  CHECK(positive_square(RingMatrix::identity(Z, 2)) == RingMatrix::identity(Z, 2));
  const auto f2 = Group::free(2);
  const auto a = fixtures::term(f2, el({1}));
  const auto b = fixtures::term(f2, el({2}));
  auto expect = RingElement::delta(f2, f2.identity(), 2);
  expect += fixtures::term(f2, el({-1, 2})) + fixtures::term(f2, el({-2, 1}));
  const auto delta = positive_square(m1(a + b));
  CHECK(delta == m1(expect));
  CHECK(delta.is_self_adjoint());
}

TEST_CASE("k_bound examples") {
  CHECK(k_bound(fixtures::circle_laplacian()) == doctest::Approx(4.0));
  CHECK(k_bound(RingMatrix::identity(Z, 3)) == doctest::Approx(9.0));
  RingMatrix m(Z, 2, 2);
  m(0, 0) = z({{0, 1}, {1, 2}});
  m(1, 1) = z({{0, 1}});
  CHECK(k_bound(m) == doctest::Approx(12.0));
}

TEST_CASE("laplacian examples") {
  const auto c1 = m1(z({{0, -1}, {1, 1}}));
  CHECK(laplacian(Z, 1, c1, std::nullopt) == fixtures::circle_laplacian());
  CHECK(laplacian(Z, 1, std::nullopt, c1) == fixtures::circle_laplacian());
  const auto zero_down = RingMatrix(Z, 1, 1);
  CHECK(laplacian(Z, 1, zero_down, c1) == c1 * adjoint(c1));
  CHECK(laplacian(Z, 2, std::nullopt, std::nullopt).is_zero());
  CHECK(thrown([&] { laplacian(Z, 2, c1, std::nullopt); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("trace_poly_exact examples") {
  const auto lap = fixtures::circle_laplacian();
  CHECK(trace_poly_exact(lap, {0, 1}) == 2.0);
  CHECK(trace_poly_exact(lap, {0, 0, 1}) == 6.0);
  CHECK(trace_poly_exact(lap, {0, 0, 0, 1}) == 20.0);
  for (int m = 0; m <= 4; ++m) {
    std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
    p.back() = 1.0;
    CHECK(trace_poly_exact(RingMatrix::identity(Z, 3), p) == 3.0);
  }
  const auto t = trace_powers_exact(lap, 4);
  CHECK(t[4] == Coefficient(70));
}

TEST_CASE("trace of a self-adjoint matrix is real") {
  auto r = rng();
  for (int i = 0; i < 20; ++i) {
    RingMatrix a(Z, 2, 2);
    std::uniform_int_distribution<int> c(-2, 2);
    for (std::size_t k = 0; k < 4; ++k) {
      a(k / 2, k % 2).add_term(Z.random_element(r, 2), Coefficient(c(r), c(r)));
    }
    const auto delta = positive_square(a);
    const auto v = trace_poly_exact_value(delta, {Coefficient(1), Coefficient(-2), Coefficient(mpq_class(1, 3))});
    REQUIRE(v.is_real());
  }
}

TEST_CASE("push_forward_matrix examples and homomorphism property") {
  const Homomorphism to4(Z, Group::cyclic(4), {el({1})});
  RingElement img(Group::cyclic(4));
  img.add_term(el({0}), 2);
  img.add_term(el({1}), -1);
  img.add_term(el({3}), -1);
  CHECK(push_forward_matrix(to4, fixtures::circle_laplacian()) == m1(img));
  CHECK(push_forward_matrix(to4, RingMatrix::identity(Z, 2)) == RingMatrix::identity(Group::cyclic(4), 2));
  auto r = rng();
  const auto phi = Homomorphism::reduction_mod(2, 3);
  for (int i = 0; i < 20; ++i) {
    const auto a = fixtures::random_matrix(Group::free_abelian(2), 2, r, 3, 2, 2);
    const auto b = fixtures::random_matrix(Group::free_abelian(2), 2, r, 3, 2, 2);
    REQUIRE(push_forward_matrix(phi, positive_square(a)) == positive_square(push_forward_matrix(phi, a)));
    REQUIRE(push_forward_matrix(phi, a * b) == push_forward_matrix(phi, a) * push_forward_matrix(phi, b));
  }
}

TEST_CASE("adjoint reverses products") {
  auto r = rng();
  for (const auto& g : {Group::free(2), fixtures::s3(), Group::free_abelian(2)}) {
    for (int i = 0; i < 20; ++i) {
      const auto a = fixtures::random_matrix(g, 2, r);
      const auto b = fixtures::random_matrix(g, 2, r);
      REQUIRE(adjoint(a * b) == adjoint(b) * adjoint(a));
      REQUIRE(adjoint(adjoint(a)) == a);
    }
  }
}

TEST_CASE("finite group traces agree with the regular representation") {
  auto r = rng();
  const std::vector<double> poly{1.0, -0.5, 0.25, 1.0 / 7.0};
  for (const auto& g : {fixtures::s3(), Group::cyclic(6), Group::product(Group::cyclic(2), Group::cyclic(2))}) {
    for (int i = 0; i < 5; ++i) {
      const auto delta = positive_square(fixtures::random_matrix(g, 2, r));
      const double exact = trace_poly_exact(delta, poly);
      const double level = spectral_trace(finite_level_eigen(delta, LevelMethod::Dense), poly);
      REQUIRE(std::abs(exact - level) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("finite level spectra respect the norm bound") {
  auto r = rng();
  for (const auto& g : {fixtures::s3(), Group::cyclic(5), Group::free_abelian(2)}) {
    for (int i = 0; i < 5; ++i) {
      const auto delta = positive_square(fixtures::random_matrix(g, 2, r));
      const double K = k_bound(delta);
      if (g.is_finite()) {
        REQUIRE(max_eigenvalue(finite_level_eigen(delta)) <= K + 1e-9);
      } else {
        for (std::int64_t n : {3, 7}) {
          const auto level = push_forward_matrix(Homomorphism::reduction_mod(2, n), delta);
          REQUIRE(max_eigenvalue(finite_level_eigen(level)) <= K + 1e-9);
        }
      }
    }
  }
}
