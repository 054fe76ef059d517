#include "l2approx/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "l2approx/error.hpp"

namespace l2approx {

std::vector<mpq_class> characteristic_polynomial(const std::vector<std::vector<mpq_class>>& m) {
  const std::size_t d = m.size();
  for (const auto& row : m) {
    if (row.size() != d) throw Error(ErrorKind::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  }
  using Mat = std::vector<std::vector<mpq_class>>;
  auto mul = [d](const Mat& a, const Mat& b) {
    Mat c(d, std::vector<mpq_class>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        if (sgn(a[i][k]) == 0) continue;
        for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
      }
    }
    return c;
  };
  // M_0 = 0, c_d = 1; M_k = A·M_{k-1} + c_{d-k+1}·I, c_{d-k} = -tr(A·M_k)/k.
  std::vector<mpq_class> c(d + 1, 0);
  c[d] = 1;
  Mat mk(d, std::vector<mpq_class>(d, 0));
  for (std::size_t k = 1; k <= d; ++k) {
    Mat next = mul(m, mk);
    for (std::size_t i = 0; i < d; ++i) next[i][i] += c[d - k + 1];
    mk = std::move(next);
    const Mat amk = mul(m, mk);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < d; ++i) tr += amk[i][i];
    c[d - k] = -tr / static_cast<long>(k);
    c[d - k].canonicalize();
  }
  return c;
}

ExactLogDet trivial_group_logdet_exact(const IntegerMatrix& m) {
  const std::size_t d = m.size();
  std::vector<std::vector<mpq_class>> q(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (m[i].size() != d) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    for (std::size_t j = 0; j < d; ++j) {
      if (m[i][j] != m[j][i]) throw Error(ErrorKind::NotHermitian, "integer matrix is not symmetric");
      q[i].emplace_back(m[i][j]);
    }
  }
  ExactLogDet out;
  out.char_poly = characteristic_polynomial(q);
  // All eigenvalues are >= 0 iff the coefficient of x^j has sign (-1)^(d-j)
  // or vanishes (Descartes' rule applied to p(-x), exact for real-rooted p).
  for (std::size_t j = 0; j <= d; ++j) {
    const int s = sgn(out.char_poly[j]);
    if (s == 0) continue;
    const int expected = ((d - j) % 2 == 0) ? 1 : -1;
    if (s != expected) throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue");
  }
  std::size_t low = 0;
  while (low < d && sgn(out.char_poly[low]) == 0) ++low;
  out.kernel_dimension = low;
  const mpq_class& c = out.char_poly[low];
  if (c.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "characteristic polynomial is not integral");
  out.determinant = abs(c.get_num());
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, out.determinant.get_mpz_t());
  out.value = std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
  return out;
}

ExactLogDet trivial_group_logdet_exact(const RingMatrix& delta) {
  if (delta.group().kind() != Group::Kind::Trivial) {
    throw Error(ErrorKind::WrongGroup, "exact determinant oracle needs the trivial group");
  }
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  IntegerMatrix m(delta.rows(), std::vector<mpz_class>(delta.cols()));
  for (std::size_t i = 0; i < delta.rows(); ++i) {
    for (std::size_t j = 0; j < delta.cols(); ++j) {
      const auto c = delta(i, j).trace_coeff();
      if (!c.is_integer()) throw Error(ErrorKind::InvalidArgument, "matrix has non-integer entries");
      m[i][j] = c.re.get_num();
    }
  }
  return trivial_group_logdet_exact(m);
}

// ---------------------------------------------------------------------------

namespace {

void require_free_abelian(const RingMatrix& delta) {
  if (delta.group().kind() != Group::Kind::FreeAbelian) {
    throw Error(ErrorKind::WrongGroup, "torus oracle needs Z^n, got " + delta.group().describe());
  }
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
}

}  // namespace

Eigen::MatrixXcd symbol_at(const RingMatrix& delta, const std::vector<double>& angles) {
  require_free_abelian(delta);
  const auto d = static_cast<Eigen::Index>(delta.rows());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, static_cast<Eigen::Index>(delta.cols()));
  for (std::size_t k = 0; k < delta.rows(); ++k) {
    for (std::size_t l = 0; l < delta.cols(); ++l) {
      std::complex<double> acc = 0.0;
      for (const auto& [g, c] : delta(k, l).support()) {
        double phase = 0.0;
        for (std::size_t j = 0; j < g.data.size(); ++j) phase += static_cast<double>(g.data[j]) * angles[j];
        acc += c.to_complex() * std::polar(1.0, phase);
      }
      s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = acc;
    }
  }
  return s;
}

EigenResult torus_spectrum(const RingMatrix& delta, int grid_per_dim, double kernel_threshold) {
  require_free_abelian(delta);
  if (grid_per_dim < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  const auto n = static_cast<std::size_t>(delta.group().parameter());
  const auto d = delta.rows();
  // Precompute per-entry terms to keep the inner loop allocation-free.
  struct Term {
    std::vector<std::int64_t> g;
    std::complex<double> c;
  };
  std::vector<std::vector<Term>> terms(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      for (const auto& [g, c] : delta(k, l).support()) terms[k * d + l].push_back({g.data, c.to_complex()});
    }
  }
  std::size_t points = 1;
  for (std::size_t j = 0; j < n; ++j) points *= static_cast<std::size_t>(grid_per_dim);
  EigenResult r;
  r.normalization = 1.0 / static_cast<double>(points);
  r.kernel_threshold = kernel_threshold >= 0.0 ? kernel_threshold : default_kernel_threshold(delta);
  r.eigenvalues.reserve(points * d);
  std::vector<int> idx(n, 0);
  std::vector<double> angles(n);
  Eigen::MatrixXcd s(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double step = 2.0 * std::numbers::pi / grid_per_dim;
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t j = 0; j < n; ++j) angles[j] = step * (idx[j] + 0.5);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) {
        std::complex<double> acc = 0.0;
        for (const auto& t : terms[k * d + l]) {
          double phase = 0.0;
          for (std::size_t j = 0; j < n; ++j) phase += static_cast<double>(t.g[j]) * angles[j];
          acc += t.c * std::polar(1.0, phase);
        }
        s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = acc;
      }
    }
    if (d == 1) {
      r.eigenvalues.push_back(s(0, 0).real());
    } else {
      Eigen::MatrixXcd h = 0.5 * (s + s.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        r.eigenvalues.push_back(solver.eigenvalues()(i));
      }
    }
    for (std::size_t j = n; j-- > 0;) {
      if (++idx[j] < grid_per_dim) break;
      idx[j] = 0;
    }
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  return r;
}

SpectralDensity torus_density(const RingMatrix& delta, int grid_per_dim, double kernel_threshold) {
  return density_from_eigs(torus_spectrum(delta, grid_per_dim, kernel_threshold),
                           static_cast<double>(delta.rows()));
}

TorusLogDet torus_logdet(const RingMatrix& delta, int grid_per_dim, double kernel_threshold) {
  TorusLogDet out;
  out.grid = grid_per_dim;
  out.value = log_det(torus_spectrum(delta, grid_per_dim, kernel_threshold));
  if (grid_per_dim >= 2) {
    out.coarse_value = log_det(torus_spectrum(delta, grid_per_dim / 2, kernel_threshold));
    out.error_estimate = std::abs(out.value - out.coarse_value);
  } else {
    out.coarse_value = out.value;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::RootFindFailure, "zero polynomial");
  std::size_t zeros = 0;
  while (c[zeros] == 0.0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const std::size_t deg = c.size() - 1;
  std::vector<std::complex<double>> roots(zeros, 0.0);
  if (deg == 0) return roots;
  std::vector<std::complex<double>> monic(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) monic[k] = c[k] / c[deg];
  auto eval = [&](std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (std::size_t k = deg + 1; k-- > 0;) v = v * x + monic[k];
    return v;
  };
  auto deriv = [&](std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (std::size_t k = deg; k >= 1; --k) v = v * x + static_cast<double>(k) * monic[k];
    return v;
  };
  // Cauchy bound for the initial circle.
  double radius = 0.0;
  for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(monic[k]));
  radius = 1.0 + radius;
  std::vector<std::complex<double>> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    z[k] = std::polar(0.5 * radius, 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) /
                                        static_cast<double>(deg));
  }
  for (int iter = 0; iter < 5000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) denom *= (z[i] - z[j]);
      }
      if (std::abs(denom) == 0.0) denom = 1e-300;
      const auto delta = eval(z[i]) / denom;
      z[i] -= delta;
      change = std::max(change, std::abs(delta) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-15) break;
  }
  for (auto& r : z) {
    for (int k = 0; k < 5; ++k) {
      const auto dp = deriv(r);
      if (std::abs(dp) == 0.0) break;
      const auto next = r - eval(r) / dp;
      if (!(std::abs(eval(next)) < std::abs(eval(r)))) break;
      r = next;
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
      throw Error(ErrorKind::RootFindFailure, "root iteration diverged");
    }
    roots.push_back(r);
  }
  return roots;
}

double mahler_1x1(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::RootFindFailure, "Mahler measure of the zero polynomial");
  double m = std::log(std::abs(c.back()));
  for (const auto& r : polynomial_roots(c)) m += std::max(0.0, std::log(std::abs(r)));
  return m;
}

double mahler_1x1(const RingElement& p) {
  const auto& G = p.group();
  if (G.kind() != Group::Kind::FreeAbelian || G.parameter() != 1) {
    throw Error(ErrorKind::WrongGroup, "Mahler measure needs an element of Z[Z]");
  }
  if (p.is_zero()) throw Error(ErrorKind::RootFindFailure, "Mahler measure of zero");
  const auto lo = p.support().begin()->first.data[0];
  const auto hi = p.support().rbegin()->first.data[0];
  std::vector<double> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [g, coef] : p.support()) {
    if (!coef.is_real()) throw Error(ErrorKind::InvalidArgument, "Mahler measure needs real coefficients");
    c[static_cast<std::size_t>(g.data[0] - lo)] = coef.re.get_d();
  }
  return mahler_1x1(c);
}

}  // namespace l2approx
