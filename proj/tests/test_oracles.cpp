#include "support.hpp"

using namespace test;

namespace {

IntegerMatrix imat(std::vector<std::vector<long>> rows) {
  IntegerMatrix m;
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (long v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST_CASE("exact determinants over the trivial group") {
  CHECK(trivial_group_logdet_exact(imat({{2}})).value == doctest::Approx(std::log(2.0)));
  const auto ones = trivial_group_logdet_exact(imat({{1, 1}, {1, 1}}));
  CHECK(ones.value == doctest::Approx(std::log(2.0)));
  CHECK(ones.kernel_dimension == 1);
  CHECK(ones.determinant == 2);
  const auto path = trivial_group_logdet_exact(imat({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
  CHECK(path.determinant == 3);
  CHECK(path.kernel_dimension == 1);
  CHECK(trivial_group_logdet_exact(imat({{0, 0}, {0, 0}})).value == 0.0);
  CHECK(thrown([] { trivial_group_logdet_exact(imat({{1, 2}, {2, 1}})); }) == ErrorKind::NotPSD);
  CHECK(thrown([] { trivial_group_logdet_exact(imat({{1, 2}, {0, 1}})); }) == ErrorKind::NotHermitian);
}

TEST_CASE("characteristic polynomial") {
  const std::vector<std::vector<mpq_class>> m{{2, 1}, {1, 2}};
  const auto p = characteristic_polynomial(m);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == 3);
  CHECK(p[1] == -4);
  CHECK(p[2] == 1);
}

TEST_CASE("exact determinant agrees with floating eigenvalues") {
  auto r = rng();
  std::uniform_int_distribution<int> c(-3, 3);
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 5;
    Eigen::MatrixXd a(n, n);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) a(k, l) = c(r);
    }
    const Eigen::MatrixXd m = a.transpose() * a;
    IntegerMatrix im(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) im[k][l] = static_cast<long>(std::lround(m(k, l)));
    }
    const auto exact = trivial_group_logdet_exact(im);
    double sum = 0.0;
    for (double v : hermitian_eigenvalues(HermitianMatrix(m))) {
      if (v > 1e-8) sum += std::log(v);
    }
    REQUIRE(exact.value == doctest::Approx(sum).epsilon(1e-8));
    REQUIRE(exact.value >= 0.0);
  }
}

TEST_CASE("torus quadrature") {
  const auto circle = fixtures::circle_laplacian();
  const auto ld = torus_logdet(circle, 4096);
  CHECK(std::abs(ld.value) < 0.01);
  CHECK(ld.grid == 4096);
  CHECK(betti(torus_density(circle, 4096)) == doctest::Approx(0.0));

  const auto shifted = RingMatrix::scalar(z({{-1, -1}, {0, 3}, {1, -1}}));
  CHECK(torus_logdet(shifted, 4096).value == doctest::Approx(0.962424).epsilon(1e-6));

  const auto c = RingMatrix::scalar(z({{0, 5}}));
  CHECK(torus_logdet(c, 64).value == doctest::Approx(std::log(5.0)));

  const auto torus = fixtures::torus_laplacian(2);
  CHECK(torus_density(torus, 64).total_mass() == doctest::Approx(1.0));
  CHECK(torus_spectrum(torus, 16).eigenvalues.size() == 256);
  CHECK(thrown([] { torus_logdet(RingMatrix::identity(Group::cyclic(3), 1), 16); }) == ErrorKind::WrongGroup);
}

TEST_CASE("symbol evaluation") {
  const auto s = symbol_at(fixtures::circle_laplacian(), {M_PI});
  CHECK(s(0, 0).real() == doctest::Approx(4.0));
  CHECK(s(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("polynomial roots") {
  const auto roots = polynomial_roots({-6, 11, -6, 1});
  REQUIRE(roots.size() == 3);
  std::vector<double> re;
  for (const auto& x : roots) {
    CHECK(std::abs(x.imag()) < 1e-9);
    re.push_back(x.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[1] == doctest::Approx(2.0));
  CHECK(re[2] == doctest::Approx(3.0));
}

TEST_CASE("Mahler measures") {
  CHECK(mahler_1x1(std::vector<double>{-1, 1}) == doctest::Approx(0.0));
  CHECK(mahler_1x1(std::vector<double>{-2, 1}) == doctest::Approx(std::log(2.0)));
  CHECK(mahler_1x1(std::vector<double>{1, -3, 1}) == doctest::Approx(std::log((3 + std::sqrt(5.0)) / 2)));
  CHECK(mahler_1x1(z({{-1, -1}, {0, 3}, {1, -1}})) == doctest::Approx(0.962424).epsilon(1e-6));
  CHECK(mahler_1x1(z({{0, 7}})) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("Mahler measure agrees with the torus logdet of A*A") {
  auto r = rng();
  std::uniform_int_distribution<int> c(-3, 3);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::pair<std::int64_t, long>> terms;
    for (std::int64_t k = 0; k < 3; ++k) terms.emplace_back(k, c(r));
    terms.emplace_back(3, 1 + (c(r) + 3) % 3);
    const auto p = z(terms);
    const auto delta = positive_square(RingMatrix::scalar(p));
    const double oracle = torus_logdet(delta, 8192).value;
    REQUIRE(2.0 * mahler_1x1(p) == doctest::Approx(oracle).epsilon(1e-3).scale(1.0));
  }
}
