#include "support.hpp"

using namespace test;

namespace {

RingMatrix cyclic_laplacian(std::int64_t n) {
  return push_forward_matrix(Homomorphism(Group::free_abelian(1), Group::cyclic(n), {el({1})}),
                             fixtures::circle_laplacian());
}

Eigen::MatrixXcd random_hermitian(std::mt19937_64& r, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {g(r), g(r)};
  }
  return (m + m.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("circulant on Z/4") {
  for (auto method : {LevelMethod::Dense, LevelMethod::Fourier, LevelMethod::Auto}) {
    const auto e = finite_level_eigen(cyclic_laplacian(4), method);
    REQUIRE(e.eigenvalues.size() == 4);
    CHECK(e.normalization == doctest::Approx(0.25));
    CHECK(e.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(2.0));
    CHECK(e.eigenvalues[3] == doctest::Approx(4.0));
    const auto f = density_from_eigs(e, 1.0);
    CHECK(betti(f) == doctest::Approx(0.25));
    CHECK(f(1.0) == doctest::Approx(0.25));
    CHECK(f(2.0) == doctest::Approx(0.75));
    CHECK(f(4.0) == doctest::Approx(1.0));
    CHECK(log_det(e) == doctest::Approx(std::log(2.0)));
    CHECK(max_eigenvalue(e) == doctest::Approx(4.0));
  }
}

TEST_CASE("identity and zero") {
  const auto s3 = fixtures::s3();
  const auto id = finite_level_eigen(RingMatrix::identity(s3, 2));
  CHECK(betti(density_from_eigs(id, 2.0)) == doctest::Approx(0.0));
  CHECK(log_det(id) == doctest::Approx(0.0));
  CHECK(id.normalization == doctest::Approx(1.0 / 6.0));
  const auto zero = finite_level_eigen(RingMatrix(s3, 2, 2));
  const auto f = density_from_eigs(zero, 2.0);
  CHECK(betti(f) == doctest::Approx(2.0));
  CHECK(log_det(zero) == doctest::Approx(0.0));
  CHECK(f.total_mass() == doctest::Approx(2.0));
}

TEST_CASE("scalar multiple of the identity") {
  const auto g = Group::cyclic(5);
  const auto e = finite_level_eigen(RingMatrix::scalar(RingElement::delta(g, g.identity(), 3)));
  CHECK(log_det(e) == doctest::Approx(std::log(3.0)));
  CHECK(betti(density_from_eigs(e, 1.0)) == doctest::Approx(0.0));
}

TEST_CASE("regular representation") {
  const auto s3 = fixtures::s3();
  const auto x = fixtures::term(s3, el({1}));
  const auto rep = regular_representation(RingMatrix::scalar(x));
  REQUIRE(std::holds_alternative<Eigen::MatrixXd>(rep));
  const auto& m = std::get<Eigen::MatrixXd>(rep);
  CHECK(m.rows() == 6);
  CHECK(m.sum() == doctest::Approx(6.0));
  CHECK(m.trace() == doctest::Approx(0.0));
  RingElement c(Group::cyclic(3));
  c.add_term(el({1}), Coefficient(0, 1));
  const auto crep = regular_representation(RingMatrix::scalar(c));
  CHECK(std::holds_alternative<Eigen::MatrixXcd>(crep));
}

TEST_CASE("Jacobi and tridiagonal eigensolvers agree") {
  auto r = rng();
  for (int n : {1, 2, 5, 17, 40}) {
    const Eigen::MatrixXcd h = random_hermitian(r, n);
    const Eigen::MatrixXd s = h.real();
    const Eigen::MatrixXd sym = (s + s.transpose()) / 2.0;
    for (const HermitianMatrix& m : {HermitianMatrix(sym), HermitianMatrix(h)}) {
      const auto a = hermitian_eigenvalues(m, 1e-12, EigenBackend::Jacobi);
      const auto b = hermitian_eigenvalues(m, 1e-12, EigenBackend::Tridiagonal);
      REQUIRE(a.size() == static_cast<std::size_t>(n));
      REQUIRE(b.size() == a.size());
      for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) < 1e-9);
      REQUIRE(std::is_sorted(a.begin(), a.end()));
    }
  }
}

TEST_CASE("moments of level spectra match exact traces") {
  auto r = rng();
  const auto phi = Homomorphism::reduction_mod(2, 5);
  for (int i = 0; i < 5; ++i) {
    const auto delta = positive_square(fixtures::random_matrix(Group::free_abelian(2), 2, r));
    const auto level = push_forward_matrix(phi, delta);
    const auto dense = finite_level_eigen(level, LevelMethod::Dense);
    const auto fourier = finite_level_eigen(level, LevelMethod::Fourier);
    const auto exact = trace_powers_exact(level, 6);
    for (int m = 0; m <= 6; ++m) {
      std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
      p.back() = 1.0;
      const double t = exact[static_cast<std::size_t>(m)].re.get_d();
      const double scale = std::max(1.0, std::abs(t));
      REQUIRE(std::abs(spectral_trace(dense, p) - t) < 1e-8 * scale);
      REQUIRE(std::abs(spectral_trace(fourier, p) - t) < 1e-8 * scale);
    }
  }
}

TEST_CASE("density of the square is the reparametrized density") {
  auto r = rng();
  const auto g = fixtures::s3();
  for (int i = 0; i < 5; ++i) {
    const auto delta = positive_square(fixtures::random_matrix(g, 2, r));
    const auto f = density_from_eigs(finite_level_eigen(delta), 2.0);
    const auto f2 = density_from_eigs(finite_level_eigen(delta * delta), 2.0);
    for (double lambda : {0.0, 0.5, 1.0, 2.5, 4.0, 10.0}) {
      REQUIRE(f(lambda) == doctest::Approx(f2(lambda * lambda)));
    }
  }
}

TEST_CASE("log_det is invariant under unitary conjugation") {
  const auto g = Group::cyclic(6);
  auto r = rng();
  const auto u = RingMatrix::scalar(fixtures::term(g, el({1})));
  for (int i = 0; i < 5; ++i) {
    const auto delta = positive_square(fixtures::random_matrix(g, 1, r));
    const auto conj = adjoint(u) * delta * u;
    REQUIRE(log_det(finite_level_eigen(delta)) == doctest::Approx(log_det(finite_level_eigen(conj))));
  }
}

TEST_CASE("total mass equals the matrix size") {
  auto r = rng();
  for (const auto& g : {fixtures::s3(), Group::cyclic(7)}) {
    for (std::size_t d : {1u, 2u, 3u}) {
      const auto e = finite_level_eigen(positive_square(fixtures::random_matrix(g, d, r)));
      const auto f = density_from_eigs(e, static_cast<double>(d));
      REQUIRE(f(1e6) == doctest::Approx(static_cast<double>(d)));
      double sum = 0.0;
      for (const auto& j : f.jumps()) sum += j.mass;
      REQUIRE(sum == doctest::Approx(static_cast<double>(d)));
    }
  }
}

TEST_CASE("step function semantics") {
  const SpectralDensity f({{0.0, 0.25}, {2.0, 0.5}, {4.0, 0.25}}, 1.0, 0.0);
  CHECK(f(-1.0) == 0.0);
  CHECK(f(0.0) == 0.25);
  CHECK(f(1.999) == 0.25);
  CHECK(f(2.0) == 0.75);
  CHECK(f.max_jump() == 4.0);
  CHECK(f.log_integral(4.0) == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("subgroup invariance") {
  const auto z2 = Group::cyclic(2);
  const auto z4 = Group::cyclic(4);
  const Homomorphism inc(z2, z4, {el({2})});
  RingElement x(z2);
  x.add_term(el({0}), 2);
  x.add_term(el({1}), -1);
  const auto delta = positive_square(RingMatrix::scalar(x));
  const auto rep = subgroup_invariance_check(delta, inc);
  CHECK(rep.ok);
  CHECK(rep.max_deviation < 1e-12);

  const auto s3 = fixtures::s3();
  const Homomorphism c2_in_s3(z2, s3, {el({1})});
  const auto rep2 = subgroup_invariance_check(delta, c2_in_s3);
  CHECK(rep2.ok);

  const Homomorphism not_injective(z2, z4, {el({0})});
  CHECK(thrown([&] { subgroup_invariance_check(delta, not_injective); }).has_value());
}
