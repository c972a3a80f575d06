#include "convexkit/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convexkit/errors.hpp"
#include "convexkit/solvers.hpp"

namespace convexkit {

namespace {

double membership_threshold(const Vector& x, const ToleranceProfile& tol) {
  return tol.tol_mem * (1.0 + x.norm());
}

// Residual test against cone(columns of g) with an explicit threshold.
bool residual_member(const Matrix& g, const Vector& x, double threshold, int max_iter) {
  if (g.cols() == 0) return x.norm() <= threshold;
  const auto res = solvers::nnls(g, x, max_iter, threshold);
  if (res.residual_norm <= threshold) return true;
  if (!res.converged) throw IndeterminateError("cone membership: iteration limit reached");
  return false;
}

Matrix normalized_columns(const std::vector<Vector>& gens, Index dim, double& min_norm) {
  Matrix m(dim, static_cast<Index>(gens.size()));
  min_norm = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const double n = gens[j].norm();
    min_norm = std::min(min_norm, n);
    m.col(static_cast<Index>(j)) = gens[j] / n;
  }
  return m;
}

// If the minimum-norm point q of conv(normalized generators) is longer than
// this bound, no generator can pass the residual test for -g in C, so the
// cone is pointed at the membership tolerance.
struct PointednessProbe {
  Vector q;
  bool clearly_pointed = false;
};

PointednessProbe probe_pointedness(const PolyhedralCone& c, const ToleranceProfile& tol) {
  double min_norm = 0.0;
  const Matrix unit = normalized_columns(c.generators(), c.ambient_dim(), min_norm);
  const double bound = tol.tol_mem * (1.0 + 1.0 / min_norm) * 1.01 + 1e-12;
  const auto mn = solvers::min_norm_point(unit, tol.max_iter, bound);
  PointednessProbe p;
  p.q = mn.point;
  p.clearly_pointed = mn.point.norm() > bound;
  return p;
}

bool in_span(const Subspace& s, const Vector& v, const ToleranceProfile& tol) {
  if (s.rank() == 0) return false;
  return (v - project(s, v)).norm() <= tol.tol_rank * std::max(1.0, v.norm());
}

std::vector<Vector> pointed_projections(const PolyhedralCone& c, const Subspace& lineality,
                                        const ToleranceProfile& tol) {
  std::vector<Vector> out;
  for (const auto& g : c.generators()) {
    Vector p = g - project(lineality, g);
    if (p.norm() > tol.tol_rank * std::max(1.0, g.norm())) out.push_back(std::move(p));
  }
  return out;
}

double max_slack(const std::vector<Vector>& gens, const Vector& f) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& g : gens) worst = std::max(worst, f.dot(g));
  return worst;
}

void require_orthogonal_pointed(const Subspace& f, std::span<const Vector> v,
                                const ToleranceProfile& tol, const char* what) {
  for (const auto& g : v) {
    require_dim(g, f.ambient_dim(), what);
    for (Index k = 0; k < f.rank(); ++k) {
      if (std::abs(f.basis_vector(k).dot(g)) > tol.tol_ortho * std::max(1.0, g.norm())) {
        throw PreconditionError(std::string(what) + ": generator not orthogonal to the subspace");
      }
    }
  }
  const PolyhedralCone cv(f.ambient_dim(), {v.begin(), v.end()}, tol);
  if (!is_pointed(cv, tol)) {
    throw PreconditionError(std::string(what) + ": generator cone is not pointed");
  }
}

// Deterministic probes: +-e_i, +-normalized generators, their projections
// onto `complement`, and pairwise sums of those.
std::vector<Vector> structural_probes(Index d, std::span<const Vector> gens,
                                      const Subspace& complement) {
  std::vector<Vector> base;
  for (Index i = 0; i < d; ++i) {
    base.push_back(Vector::Unit(d, i));
    base.push_back(-Vector::Unit(d, i));
  }
  for (const auto& g : gens) {
    const double n = g.norm();
    if (n == 0.0) continue;
    base.push_back(g / n);
    base.push_back(-g / n);
  }
  std::vector<Vector> out = base;
  for (const auto& b : base) {
    const Vector p = project(complement, b);
    if (p.norm() > 0.0) out.push_back(p);
  }
  const std::size_t n0 = out.size();
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = i + 1; j < n0 && j < i + 8; ++j) out.push_back(out[i] + out[j]);
  }
  return out;
}

}  // namespace

PolyhedralCone::PolyhedralCone(Index ambient_dim, std::vector<Vector> generators,
                               const ToleranceProfile& tol)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim < 1) throw InvariantViolation("cone: ambient dimension must be positive");
  generators_.reserve(generators.size());
  for (auto& g : generators) {
    require_dim(g, ambient_dim, "cone generator");
    require_finite(g, "cone generator");
    if (g.norm() > tol.tol_rank) generators_.push_back(std::move(g));
  }
}

PolyhedralCone PolyhedralCone::from_subspace(const Subspace& s) {
  std::vector<Vector> gens;
  for (Index k = 0; k < s.rank(); ++k) {
    gens.push_back(s.basis_vector(k));
    gens.push_back(-s.basis_vector(k));
  }
  return PolyhedralCone(s.ambient_dim(), std::move(gens));
}

PolyhedralCone PolyhedralCone::negated() const {
  std::vector<Vector> gens;
  for (const auto& g : generators_) gens.push_back(-g);
  return PolyhedralCone(ambient_dim_, std::move(gens));
}

PolyhedralCone PolyhedralCone::sum(const PolyhedralCone& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("cone sum");
  std::vector<Vector> gens = generators_;
  gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
  return PolyhedralCone(ambient_dim_, std::move(gens));
}

HalfspaceCone::HalfspaceCone(Index ambient_dim, std::vector<Vector> normals)
    : ambient_dim_(ambient_dim), normals_(std::move(normals)) {
  if (ambient_dim < 1) throw InvariantViolation("halfspace cone: ambient dimension must be positive");
  for (const auto& n : normals_) {
    require_dim(n, ambient_dim, "halfspace normal");
    require_finite(n, "halfspace normal");
  }
}

StructuredCone::StructuredCone(Subspace lineality, std::vector<Vector> pointed_generators,
                               const ToleranceProfile& tol)
    : lineality_(std::move(lineality)), pointed_(std::move(pointed_generators)) {
  for (const auto& p : pointed_) {
    require_dim(p, lineality_.ambient_dim(), "pointed generator");
    require_finite(p, "pointed generator");
    for (Index k = 0; k < lineality_.rank(); ++k) {
      if (std::abs(lineality_.basis_vector(k).dot(p)) > tol.tol_ortho * std::max(1.0, p.norm())) {
        throw InvariantViolation("structured cone: pointed generator not orthogonal to lineality");
      }
    }
  }
  if (!is_pointed(pointed_part(), tol)) {
    throw InvariantViolation("structured cone: pointed part is not pointed");
  }
}

PolyhedralCone StructuredCone::pointed_part() const {
  return PolyhedralCone(ambient_dim(), pointed_);
}

PolyhedralCone StructuredCone::flattened() const {
  std::vector<Vector> gens;
  for (Index k = 0; k < lineality_.rank(); ++k) {
    gens.push_back(lineality_.basis_vector(k));
    gens.push_back(-lineality_.basis_vector(k));
  }
  gens.insert(gens.end(), pointed_.begin(), pointed_.end());
  return PolyhedralCone(ambient_dim(), std::move(gens));
}

bool cone_member(const PolyhedralCone& c, const Vector& x, const ToleranceProfile& tol) {
  require_dim(x, c.ambient_dim(), "cone_member");
  return residual_member(c.generator_matrix(), x, membership_threshold(x, tol), tol.max_iter);
}

Subspace lineality_space(const PolyhedralCone& c, const ToleranceProfile& tol) {
  const Index d = c.ambient_dim();
  if (c.empty() || probe_pointedness(c, tol).clearly_pointed) return Subspace(d);
  std::vector<Vector> found;
  Subspace span(d);
  for (const auto& g : c.generators()) {
    if (span.rank() == d) break;
    if (in_span(span, g, tol)) continue;
    if (cone_member(c, -g, tol)) {
      found.push_back(g);
      span = orthonormalize(d, found, tol);
    }
  }
  return span;
}

bool is_pointed(const PolyhedralCone& c, const ToleranceProfile& tol) {
  if (c.empty() || probe_pointedness(c, tol).clearly_pointed) return true;
  for (const auto& g : c.generators()) {
    if (cone_member(c, -g, tol)) return false;
  }
  return true;
}

std::optional<Vector> is_proper(const PolyhedralCone& c, const ToleranceProfile& tol) {
  const Index d = c.ambient_dim();
  if (c.empty()) return Vector::Unit(d, 0);

  const auto probe = probe_pointedness(c, tol);
  if (probe.clearly_pointed) {
    const Vector f = -probe.q.normalized();
    if (max_slack(c.generators(), f) <= tol.tol_mem) return f;
  }

  const Subspace lin = lineality_space(c, tol);
  if (lin.rank() == d) return std::nullopt;
  const Subspace comp = orthogonal_complement(lin);
  const auto pointed = pointed_projections(c, lin, tol);
  Vector f;
  if (pointed.empty()) {
    f = comp.basis_vector(0);
  } else {
    double min_norm = 0.0;
    const Matrix unit = normalized_columns(pointed, d, min_norm);
    const auto mn = solvers::min_norm_point(unit, tol.max_iter);
    if (!(mn.point.norm() > 0.0)) {
      throw IndeterminateError("is_proper: pointed part has no separating direction");
    }
    f = -mn.point.normalized();
  }
  if (max_slack(c.generators(), f) > tol.tol_mem) {
    throw IndeterminateError("is_proper: certificate fails the slack check");
  }
  return f;
}

HalfspaceCone polar(const PolyhedralCone& c) {
  return HalfspaceCone(c.ambient_dim(), c.generators());
}

bool halfspace_member(const HalfspaceCone& h, const Vector& x, const ToleranceProfile& tol) {
  require_dim(x, h.ambient_dim(), "halfspace_member");
  const double threshold = membership_threshold(x, tol);
  return std::all_of(h.normals().begin(), h.normals().end(),
                     [&](const Vector& n) { return n.dot(x) <= threshold; });
}

PolarGenerators polar_generators(const PolyhedralCone& c, const ToleranceProfile& tol,
                                 std::size_t max_subsets) {
  const Index d = c.ambient_dim();
  const auto& gens = c.generators();
  const Subspace span = orthonormalize(d, gens, tol);
  PolarGenerators pg{orthogonal_complement(span), {}, true};
  const Index r = span.rank();
  if (r == 0) return pg;

  auto admit = [&](const Vector& f) {
    for (const auto& g : gens) {
      if (g.dot(f) > tol.tol_mem * g.norm()) return;
    }
    for (const auto& existing : pg.rays) {
      if ((existing - f).norm() <= 1e-9) return;
    }
    pg.rays.push_back(f);
  };

  const std::size_t m = gens.size();
  const auto k = static_cast<std::size_t>(r - 1);
  // C(m, k) with early exit once the cap is passed.
  double count = 1.0;
  for (std::size_t i = 0; i < k; ++i) count = count * static_cast<double>(m - i) / static_cast<double>(i + 1);

  if (count <= static_cast<double>(max_subsets)) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Vector> chosen;
      for (auto i : idx) chosen.push_back(gens[i]);
      const Subspace q = orthonormalize(d, chosen, tol);
      if (q.rank() == r - 1) {
        const Matrix residual = span.basis() - (q.rank() > 0 ? Matrix(q.basis() * (q.basis().transpose() * span.basis()))
                                                             : Matrix::Zero(d, r));
        Index best = 0;
        residual.colwise().norm().maxCoeff(&best);
        Vector f = residual.col(best);
        f -= project(q, f);
        f.normalize();
        admit(f);
        admit(-f);
      }
      // Advance to the next k-subset in lexicographic order.
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return pg;
  }

  // Too many subsets: sample polar elements as residuals v - P_C v, which
  // always lie in the polar.
  pg.exhaustive = false;
  const Matrix g = c.generator_matrix();
  std::vector<Vector> seeds;
  for (Index i = 0; i < d; ++i) {
    seeds.push_back(Vector::Unit(d, i));
    seeds.push_back(-Vector::Unit(d, i));
  }
  for (const auto& gen : gens) seeds.push_back(-gen.normalized());
  for (const auto& v : seeds) {
    const auto res = solvers::nnls(g, v, tol.max_iter);
    Vector f = project(span, res.residual);
    if (f.norm() > tol.tol_rank) admit(f.normalized());
  }
  return pg;
}

bool double_polar_member(const PolarGenerators& pg, const Vector& x, const ToleranceProfile& tol) {
  require_dim(x, pg.lineality.ambient_dim(), "double_polar_member");
  const double threshold = membership_threshold(x, tol);
  for (Index k = 0; k < pg.lineality.rank(); ++k) {
    if (std::abs(pg.lineality.basis_vector(k).dot(x)) > threshold) return false;
  }
  return std::all_of(pg.rays.begin(), pg.rays.end(),
                     [&](const Vector& f) { return f.dot(x) <= threshold; });
}

bool double_polar_closure_check(const PolyhedralCone& c, std::span<const Vector> probes,
                                const ToleranceProfile& tol) {
  const auto pg = polar_generators(c, tol);
  for (const auto& x : probes) {
    if (double_polar_member(pg, x, tol) != cone_member(c, x, tol)) return false;
  }
  return true;
}

StructuredCone decompose(const PolyhedralCone& c, const ToleranceProfile& tol) {
  Subspace lin = lineality_space(c, tol);
  auto pointed = pointed_projections(c, lin, tol);
  return StructuredCone(std::move(lin), std::move(pointed), tol);
}

bool structured_member(const StructuredCone& s, const Vector& x, const ToleranceProfile& tol) {
  require_dim(x, s.ambient_dim(), "structured_member");
  const Vector y = x - project(s.lineality(), x);
  return residual_member(s.pointed_part().generator_matrix(), y, membership_threshold(x, tol),
                         tol.max_iter);
}

bool reconstruct_lineality_check(const Subspace& f_basis, std::span<const Vector> v_gens,
                                 const ToleranceProfile& tol) {
  require_orthogonal_pointed(f_basis, v_gens, tol, "reconstruct_lineality_check");
  const Index d = f_basis.ambient_dim();
  const PolyhedralCone v_cone(d, {v_gens.begin(), v_gens.end()}, tol);
  const StructuredCone original(f_basis, v_cone.generators(), tol);
  const PolyhedralCone flat = original.flattened();

  const Subspace lin = lineality_space(flat, tol);
  if (span_distance(lin, f_basis) >= tol.tol_fix) return false;

  const StructuredCone recovered = decompose(flat, tol);
  const PolyhedralCone regenerated = recovered.pointed_part();
  const Subspace comp = orthogonal_complement(f_basis);
  for (const auto& probe : structural_probes(d, v_gens, comp)) {
    const Vector p = project(comp, probe);
    if (cone_member(regenerated, p, tol) != cone_member(v_cone, p, tol)) return false;
  }
  return true;
}

bool structured_polar_member(const StructuredCone& s, const Vector& f, const ToleranceProfile& tol) {
  require_dim(f, s.ambient_dim(), "structured_polar_member");
  const double threshold = membership_threshold(f, tol);
  const Subspace& lin = s.lineality();
  for (Index k = 0; k < lin.rank(); ++k) {
    if (std::abs(lin.basis_vector(k).dot(f)) > threshold) return false;
  }
  const Vector inside = f - project(lin, f);
  return std::all_of(s.pointed_generators().begin(), s.pointed_generators().end(),
                     [&](const Vector& p) { return p.dot(inside) <= threshold; });
}

StructuredCone delta_construction(const Subspace& gamma, std::span<const Vector> psi_gens,
                                  const ToleranceProfile& tol) {
  require_orthogonal_pointed(gamma, psi_gens, tol, "delta_construction");
  StructuredCone delta(gamma, {psi_gens.begin(), psi_gens.end()}, tol);
  const HalfspaceCone flat_polar = polar(delta.flattened());
  const Subspace comp = orthogonal_complement(gamma);
  for (const auto& f : structural_probes(gamma.ambient_dim(), psi_gens, comp)) {
    if (structured_polar_member(delta, f, tol) != halfspace_member(flat_polar, f, tol)) {
      throw InvariantViolation("delta_construction: polar computed in the complement disagrees");
    }
  }
  return delta;
}

std::vector<Vector> default_probes(Index dim, std::span<const Vector> generators, Rng& rng,
                                   std::size_t random_count) {
  std::vector<Vector> probes;
  for (Index i = 0; i < dim; ++i) {
    probes.push_back(Vector::Unit(dim, i));
    probes.push_back(-Vector::Unit(dim, i));
  }
  std::vector<Vector> unit;
  for (const auto& g : generators) {
    if (g.norm() > 0.0) unit.push_back(g.normalized());
  }
  probes.insert(probes.end(), unit.begin(), unit.end());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    for (std::size_t j = i + 1; j < unit.size(); ++j) {
      const Vector s = unit[i] + unit[j];
      if (s.norm() > 1e-12) probes.push_back(s.normalized());
    }
  }
  for (std::size_t i = 0; i < random_count; ++i) probes.push_back(rng.unit_vector(dim));
  return probes;
}

}  // namespace convexkit
