#include "l2approx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "l2approx/error.hpp"

namespace l2approx {

SpectralDensity::SpectralDensity(std::vector<SpectralJump> jumps, double total_mass, double resolution)
    : jumps_(std::move(jumps)), total_mass_(total_mass), resolution_(resolution) {
  std::sort(jumps_.begin(), jumps_.end(),
            [](const SpectralJump& a, const SpectralJump& b) { return a.lambda < b.lambda; });
}

double SpectralDensity::operator()(double lambda) const {
  double f = 0.0;
  for (const auto& j : jumps_) {
    if (j.lambda > lambda + resolution_) break;
    f += j.mass;
  }
  return f;
}

double SpectralDensity::max_jump() const { return jumps_.empty() ? 0.0 : jumps_.back().lambda; }

double SpectralDensity::log_integral(double K) const {
  double s = 0.0;
  for (const auto& j : jumps_) {
    if (j.lambda <= resolution_ || j.lambda >= K) continue;
    s += j.mass * std::log(K / j.lambda);
  }
  return s;
}

// ---------------------------------------------------------------------------

double default_kernel_threshold(const RingMatrix& delta) {
  const double K = k_bound(delta);
  return K > 0.0 ? 1e-9 * K : 1e-12;
}

namespace {

template <typename Scalar>
void fill_regular(const RingMatrix& delta, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& out) {
  const auto& G = delta.group();
  const auto elems = G.enumerate();
  const auto n = static_cast<Eigen::Index>(elems.size());
  out.setZero(static_cast<Eigen::Index>(delta.rows()) * n, static_cast<Eigen::Index>(delta.cols()) * n);
  for (std::size_t k = 0; k < delta.rows(); ++k) {
    for (std::size_t l = 0; l < delta.cols(); ++l) {
      for (const auto& [g, c] : delta(k, l).support()) {
        Scalar value;
        if constexpr (std::is_same_v<Scalar, double>) {
          value = c.re.get_d();
        } else {
          value = c.to_complex();
        }
        for (Eigen::Index b = 0; b < n; ++b) {
          const auto a = G.index_of(G.multiply(g, elems[static_cast<std::size_t>(b)]));
          out(static_cast<Eigen::Index>(k) * n + a, static_cast<Eigen::Index>(l) * n + b) += value;
        }
      }
    }
  }
}

template <typename Matrix>
double hermitian_defect(const Matrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

// Cyclic Jacobi on a real symmetric matrix; converged once the off-diagonal
// Frobenius norm drops below tol·‖H‖_F.
std::vector<double> jacobi_real(Eigen::MatrixXd a, double tol) {
  const Eigen::Index n = a.rows();
  const double norm = a.norm();
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 1; q < n; ++q) {
      for (Eigen::Index p = 0; p < q; ++p) off += 2.0 * a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= tol * norm) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HermitianMatrix regular_representation(const RingMatrix& delta) {
  if (!delta.group().is_finite()) {
    throw Error(ErrorKind::InfiniteGroup, "regular representation needs a finite group, got " +
                                              delta.group().describe());
  }
  if (delta.has_real_coefficients()) {
    Eigen::MatrixXd m;
    fill_regular(delta, m);
    return m;
  }
  Eigen::MatrixXcd m;
  fill_regular(delta, m);
  return m;
}

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& h, double tol) { return jacobi_real(h, tol); }

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& h, double tol) {
  // H = X + iY is unitarily similar to diag(H, conj(H)) via the real
  // embedding [[X, -Y], [Y, X]], so each eigenvalue appears twice.
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = h.real();
  e.topRightCorner(n, n) = -h.imag();
  e.bottomLeftCorner(n, n) = h.imag();
  e.bottomRightCorner(n, n) = h.real();
  const auto doubled = jacobi_real(e, tol);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < doubled.size(); i += 2) out.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& h, double tol, EigenBackend backend) {
  return std::visit(
      [&](const auto& m) -> std::vector<double> {
        if (m.rows() != m.cols()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
        if (m.rows() == 0) return {};
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if (hermitian_defect(m) > std::max(tol, 1e-12) * scale) {
          throw Error(ErrorKind::NotHermitian, "matrix differs from its adjoint");
        }
        EigenBackend chosen = backend;
        if (chosen == EigenBackend::Auto) {
          chosen = m.rows() <= 64 ? EigenBackend::Jacobi : EigenBackend::Tridiagonal;
        }
        if (chosen == EigenBackend::Jacobi) return jacobi_eigenvalues(m, tol);
        using Matrix = std::decay_t<decltype(m)>;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
          throw Error(ErrorKind::NotHermitian, "eigensolver did not converge");
        }
        const auto& ev = solver.eigenvalues();
        std::vector<double> out(ev.data(), ev.data() + ev.size());
        std::sort(out.begin(), out.end());
        return out;
      },
      h);
}

// ---------------------------------------------------------------------------

bool is_finite_abelian_cyclic(const Group& g) {
  switch (g.kind()) {
    case Group::Kind::Trivial:
    case Group::Kind::Cyclic:
      return true;
    case Group::Kind::FreeAbelian:
      return g.parameter() == 0;
    case Group::Kind::Product:
      return is_finite_abelian_cyclic(g.left()) && is_finite_abelian_cyclic(g.right());
    default:
      return false;
  }
}

namespace {

void cyclic_moduli(const Group& g, std::vector<std::int64_t>& out) {
  if (g.kind() == Group::Kind::Cyclic) {
    out.push_back(g.parameter());
  } else if (g.kind() == Group::Kind::Product) {
    cyclic_moduli(g.left(), out);
    cyclic_moduli(g.right(), out);
  }
}

void residues(const Group& g, const GroupElement& x, std::vector<std::int64_t>& out) {
  if (g.kind() == Group::Kind::Cyclic) {
    out.push_back(x.data[0]);
  } else if (g.kind() == Group::Kind::Product) {
    const auto n = static_cast<std::size_t>(x.data[0]);
    GroupElement l{{x.data.begin() + 1, x.data.begin() + 1 + static_cast<std::ptrdiff_t>(n)}};
    GroupElement r{{x.data.begin() + 1 + static_cast<std::ptrdiff_t>(n), x.data.end()}};
    residues(g.left(), l, out);
    residues(g.right(), r, out);
  }
}

struct Term {
  std::vector<std::int64_t> r;
  std::complex<double> c;
};

std::vector<double> fourier_spectrum(const RingMatrix& delta, EigenBackend backend) {
  const auto& G = delta.group();
  std::vector<std::int64_t> moduli;
  cyclic_moduli(G, moduli);
  const auto d = delta.rows();
  std::vector<std::vector<Term>> terms(d * d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      for (const auto& [g, c] : delta(k, l).support()) {
        Term t;
        residues(G, g, t.r);
        t.c = c.to_complex();
        terms[k * d + l].push_back(std::move(t));
      }
    }
  }
  const std::int64_t order = *G.order();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(order) * d);
  std::vector<std::int64_t> chi(moduli.size(), 0);
  Eigen::MatrixXcd symbol(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::int64_t idx = 0; idx < order; ++idx) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) {
        std::complex<double> s = 0.0;
        for (const auto& t : terms[k * d + l]) {
          double phase = 0.0;
          for (std::size_t j = 0; j < moduli.size(); ++j) {
            phase += static_cast<double>((chi[j] * t.r[j]) % moduli[j]) / static_cast<double>(moduli[j]);
          }
          s += t.c * std::polar(1.0, -2.0 * std::numbers::pi * phase);
        }
        symbol(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = s;
      }
    }
    if (d == 1) {
      out.push_back(symbol(0, 0).real());
    } else {
      // Symmetrize away rounding before the Hermitian solve.
      Eigen::MatrixXcd h = 0.5 * (symbol + symbol.adjoint());
      const auto ev = hermitian_eigenvalues(HermitianMatrix{h}, 1e-12, backend);
      out.insert(out.end(), ev.begin(), ev.end());
    }
    for (std::size_t j = moduli.size(); j-- > 0;) {
      if (++chi[j] < moduli[j]) break;
      chi[j] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EigenResult finite_level_eigen(const RingMatrix& delta, LevelMethod method, double kernel_threshold,
                               EigenBackend backend) {
  const auto& G = delta.group();
  if (!G.is_finite()) {
    throw Error(ErrorKind::InfiniteGroup, "finite-level spectrum needs a finite group, got " + G.describe());
  }
  if (!delta.is_square()) throw Error(ErrorKind::DimensionMismatch, "spectrum of a non-square matrix");
  if (!delta.is_self_adjoint()) throw Error(ErrorKind::NotHermitian, "matrix is not self-adjoint");
  EigenResult r;
  r.normalization = 1.0 / static_cast<double>(*G.order());
  r.kernel_threshold = kernel_threshold >= 0.0 ? kernel_threshold : default_kernel_threshold(delta);
  if (method == LevelMethod::Auto) {
    method = is_finite_abelian_cyclic(G) ? LevelMethod::Fourier : LevelMethod::Dense;
  }
  if (method == LevelMethod::Fourier) {
    if (!is_finite_abelian_cyclic(G)) {
      throw Error(ErrorKind::WrongGroup, "character decomposition needs a product of cyclic groups");
    }
    r.eigenvalues = fourier_spectrum(delta, backend);
  } else {
    r.eigenvalues = hermitian_eigenvalues(regular_representation(delta), 1e-12, backend);
  }
  return r;
}

SpectralDensity density_from_eigs(const EigenResult& e, double total_mass) {
  std::vector<SpectralJump> jumps;
  const double thr = e.kernel_threshold;
  std::size_t i = 0;
  const auto n = e.eigenvalues.size();
  std::size_t kernel = 0;
  while (i < n && e.eigenvalues[i] <= thr) {
    ++kernel;
    ++i;
  }
  if (kernel > 0) jumps.push_back({0.0, static_cast<double>(kernel) * e.normalization});
  while (i < n) {
    const double start = e.eigenvalues[i];
    double sum = 0.0;
    std::size_t count = 0;
    while (i < n && e.eigenvalues[i] - start <= thr) {
      sum += e.eigenvalues[i];
      ++count;
      ++i;
    }
    jumps.push_back({sum / static_cast<double>(count), static_cast<double>(count) * e.normalization});
  }
  return SpectralDensity(std::move(jumps), total_mass, thr);
}

double betti(const SpectralDensity& f) { return f(0.0); }

double log_det(const EigenResult& e) {
  double s = 0.0;
  for (double l : e.eigenvalues) {
    if (l > e.kernel_threshold) s += std::log(l);
  }
  return e.normalization * s;
}

double max_eigenvalue(const EigenResult& e) {
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
}

double spectral_trace(const EigenResult& e, const std::vector<double>& poly) {
  double s = 0.0;
  for (double l : e.eigenvalues) {
    double v = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * l + *it;
    s += v;
  }
  return e.normalization * s;
}

InvarianceReport subgroup_invariance_check(const RingMatrix& delta, const Homomorphism& embedding,
                                           double tol) {
  const auto& U = embedding.source();
  if (!(delta.group() == U)) throw Error(ErrorKind::MismatchedGroup, "matrix is not over the embedded subgroup");
  if (!U.is_finite() || !embedding.target().is_finite()) {
    throw Error(ErrorKind::InfiniteGroup, "subgroup invariance check needs finite groups");
  }
  std::set<GroupElement> images;
  for (const auto& u : U.enumerate()) images.insert(embedding.apply(u));
  if (images.size() != static_cast<std::size_t>(*U.order())) {
    throw Error(ErrorKind::InvalidArgument, "embedding is not injective");
  }
  const double thr = default_kernel_threshold(delta);
  const auto induced = push_forward_matrix(embedding, delta);
  const double d = static_cast<double>(delta.rows());
  InvarianceReport rep;
  rep.subgroup_density = density_from_eigs(finite_level_eigen(delta, LevelMethod::Dense, thr), d);
  rep.ambient_density = density_from_eigs(finite_level_eigen(induced, LevelMethod::Dense, thr), d);
  std::vector<double> points;
  for (const auto& j : rep.subgroup_density.jumps()) points.push_back(j.lambda);
  for (const auto& j : rep.ambient_density.jumps()) points.push_back(j.lambda);
  for (double p : points) {
    rep.max_deviation = std::max(rep.max_deviation,
                                 std::abs(rep.subgroup_density(p) - rep.ambient_density(p)));
  }
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

}  // namespace l2approx
