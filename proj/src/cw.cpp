#include "l2approx/cw.hpp"

#include <algorithm>
#include <cmath>

#include "l2approx/error.hpp"

namespace l2approx {

void validate(const ChainComplexSpec& spec) {
  if (spec.dims.empty()) throw Error(ErrorKind::NotAComplex, "complex has no cells");
  if (spec.boundaries.size() + 1 > spec.dims.size()) {
    throw Error(ErrorKind::NotAComplex, "more boundary maps than degrees");
  }
  for (std::size_t p = 1; p <= spec.boundaries.size(); ++p) {
    const auto& c = spec.boundaries[p - 1];
    if (!(c.group() == spec.group)) {
      throw Error(ErrorKind::NotAComplex, "boundary in degree " + std::to_string(p) + " is over another group");
    }
    if (c.rows() != spec.dims[p - 1] || c.cols() != spec.dims[p]) {
      throw Error(ErrorKind::NotAComplex, "boundary in degree " + std::to_string(p) + " has shape " +
                                              std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
    }
    if (p >= 2 && !(spec.boundaries[p - 2] * c).is_zero()) {
      throw Error(ErrorKind::NotAComplex, "boundary composition is nonzero in degree " + std::to_string(p));
    }
  }
}

std::vector<RingMatrix> laplacians(const ChainComplexSpec& spec) {
  std::vector<RingMatrix> out;
  const auto top = spec.dims.size();
  for (std::size_t p = 0; p < top; ++p) {
    std::optional<RingMatrix> down;
    std::optional<RingMatrix> up;
    if (p >= 1 && p - 1 < spec.boundaries.size()) down = spec.boundaries[p - 1];
    if (p < spec.boundaries.size()) up = spec.boundaries[p];
    out.push_back(laplacian(spec.group, spec.dims[p], down, up));
  }
  return out;
}

namespace {

CwMethod resolve(const Group& g, CwMethod m) {
  if (m != CwMethod::Auto) return m;
  if (g.is_finite()) return CwMethod::Oracle;
  if (g.kind() == Group::Kind::FreeAbelian) return CwMethod::Oracle;
  return CwMethod::Tower;
}

}  // namespace

L2Report l2_invariants(const ChainComplexSpec& spec, const CwOptions& options) {
  validate(spec);
  const auto lap = laplacians(spec);
  const auto method = resolve(spec.group, options.method);
  std::optional<QuotientTower> tower = options.tower;
  if (method == CwMethod::Tower && !tower && spec.group.is_finite()) {
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < spec.group.generator_count(); ++i) images.push_back(spec.group.generator(i));
    tower = QuotientTower(spec.group, {Homomorphism(spec.group, spec.group, images)}, {"identity"});
  }
  if (method == CwMethod::Tower && !tower) {
    if (spec.group.kind() != Group::Kind::FreeAbelian) {
      throw Error(ErrorKind::InvalidArgument, "tower method needs an explicit tower for " + spec.group.describe());
    }
    tower = QuotientTower::standard(spec.group.parameter(), options.levels);
  }

  L2Report rep;
  for (std::size_t p = 0; p < lap.size(); ++p) {
    const auto& delta = lap[p];
    const double d = static_cast<double>(delta.rows());
    DegreeReport deg;
    deg.degree = p;
    deg.k_bound = k_bound(delta);
    SpectralDensity density;
    std::vector<double> values;
    if (delta.rows() == 0) {
      deg.method = "empty";
    } else if (method == CwMethod::Oracle && spec.group.is_finite()) {
      const auto e = finite_level_eigen(delta, LevelMethod::Auto, options.run.kernel_threshold, options.run.backend);
      density = density_from_eigs(e, d);
      deg.betti = betti(density);
      deg.logdet = log_det(e);
      values.push_back(deg.logdet);
      deg.method = "exact_finite";
    } else if (method == CwMethod::Oracle) {
      const auto e = torus_spectrum(delta, options.grid, options.run.kernel_threshold);
      density = density_from_eigs(e, d);
      deg.betti = betti(density);
      deg.logdet = log_det(e);
      values.push_back(deg.logdet);
      deg.method = "torus_oracle";
    } else {
      auto run = options.run;
      run.max_moment = 0;
      const auto levels = run_tower(delta, *tower, run);
      if (levels.empty()) throw Error(ErrorKind::InsufficientLevels, "tower has no levels");
      density = levels.back().density;
      deg.betti = levels.back().F0;
      deg.logdet = levels.back().logdet;
      for (const auto& l : levels) values.push_back(l.logdet);
      deg.method = "tower:" + levels.back().label;
    }
    deg.lower_bound = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    bool bound_ok = true;
    if (deg.k_bound > 0.0 && delta.rows() > 0) {
      bound_ok = density.log_integral(deg.k_bound) <= std::log(deg.k_bound) * (d - deg.betti) + options.tol;
    }
    deg.det_class = deg.lower_bound >= -options.tol && bound_ok;
    rep.l2_euler += (p % 2 == 0 ? 1.0 : -1.0) * deg.betti;
    rep.cellular_euler += (p % 2 == 0 ? 1L : -1L) * static_cast<long>(spec.dims[p]);
    rep.degrees.push_back(std::move(deg));
  }

  bool acyclic = true;
  for (const auto& deg : rep.degrees) acyclic = acyclic && deg.betti <= options.acyclic_tol;
  if (acyclic) {
    double t = 0.0;
    for (const auto& deg : rep.degrees) {
      t += (deg.degree % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(deg.degree) * deg.logdet;
    }
    rep.torsion = t;
  }
  return rep;
}

}  // namespace l2approx
