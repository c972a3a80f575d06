#include "convexkit/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "convexkit/errors.hpp"
#include "convexkit/solvers.hpp"

namespace convexkit {

namespace {

std::size_t require_sample(const SampledSet& s, const Vector& x, const char* what) {
  require_dim(x, s.ambient_dim(), what);
  const auto idx = s.index_of(x);
  if (!idx) throw PreconditionError(std::string(what) + ": point is not in the sample");
  return *idx;
}

double raw_normal_slack(const SampledSet& s, const Vector& x, const Vector& z) {
  const Vector v = z - x;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : s.points()) worst = std::max(worst, v.dot(c - x));
  return worst;
}

}  // namespace

SampledSet::SampledSet(std::vector<Vector> points, const ToleranceProfile& tol, double resolution)
    : points_(std::move(points)), tol_(tol), resolution_(resolution) {
  tol_.validate();
  if (points_.empty()) throw InvariantViolation("sampled set: no points");
  if (!(resolution_ >= 0.0) || !std::isfinite(resolution_)) {
    throw InvariantViolation("sampled set: resolution must be finite and non-negative");
  }
  ambient_dim_ = points_.front().size();
  if (ambient_dim_ < 1) throw InvariantViolation("sampled set: ambient dimension must be positive");
  for (const auto& p : points_) {
    require_dim(p, ambient_dim_, "sampled set");
    require_finite(p, "sampled set");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if ((points_[i] - points_[j]).norm() <= tol_.tol_fix) {
        throw InvariantViolation("sampled set: duplicate points " + std::to_string(i) + " and " +
                                 std::to_string(j));
      }
    }
  }
}

std::optional<std::size_t> SampledSet::index_of(const Vector& x) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if ((points_[i] - x).norm() <= tol_.tol_fix) return i;
  }
  return std::nullopt;
}

ConvexBody::ConvexBody(SampledSet base, Vector interior_point)
    : base_(std::move(base)), interior_(std::move(interior_point)) {
  require_dim(interior_, base_.ambient_dim(), "convex body interior point");
  require_finite(interior_, "convex body interior point");
  if (!is_strictly_interior(base_, interior_)) {
    throw InvariantViolation("convex body: designated point is not interior to the hull");
  }
}

double hull_distance(const SampledSet& s, const Vector& y) {
  require_dim(y, s.ambient_dim(), "hull_distance");
  const double threshold = s.tol().tol_mem * (1.0 + y.norm());
  const Matrix shifted = s.point_matrix().colwise() - y;
  const auto mn = solvers::min_norm_point(shifted, s.tol().max_iter, threshold);
  const double dist = mn.point.norm();
  if (!mn.converged && dist > threshold) {
    throw IndeterminateError("hull_distance: iteration limit reached");
  }
  return dist;
}

bool hull_member(const SampledSet& s, const Vector& y) {
  return hull_distance(s, y) <= s.tol().tol_mem * (1.0 + y.norm());
}

std::vector<Vector> interior_probe_directions(Index dim) {
  std::vector<Vector> dirs;
  for (Index i = 0; i < dim; ++i) {
    dirs.push_back(Vector::Unit(dim, i));
    dirs.push_back(-Vector::Unit(dim, i));
  }
  if (dim > 1) {
    const Vector diag = Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
    dirs.push_back(diag);
    dirs.push_back(-diag);
  }
  return dirs;
}

bool is_strictly_interior(const SampledSet& s, const Vector& x) {
  require_dim(x, s.ambient_dim(), "is_strictly_interior");
  const double delta = 100.0 * s.tol().tol_mem;
  for (const auto& u : interior_probe_directions(s.ambient_dim())) {
    if (!hull_member(s, x + delta * u)) return false;
  }
  return true;
}

bool is_boundary_point(const SampledSet& s, const Vector& x) { return !is_strictly_interior(s, x); }

PolyhedralCone tangent_cone(const SampledSet& s, const Vector& x) {
  const std::size_t self = require_sample(s, x, "tangent_cone");
  std::vector<Vector> gens;
  gens.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != self) gens.push_back(s.points()[i] - x);
  }
  return PolyhedralCone(s.ambient_dim(), std::move(gens), s.tol());
}

HalfspaceCone normal_cone(const SampledSet& s, const Vector& x) { return polar(tangent_cone(s, x)); }

bool is_extreme_point(const SampledSet& s, const Vector& x) {
  return is_pointed(tangent_cone(s, x), s.tol());
}

std::optional<SupportCertificate> support_certificate(const SampledSet& s, const Vector& x) {
  const auto f = is_proper(tangent_cone(s, x), s.tol());
  if (!f) return std::nullopt;
  SupportCertificate cert{x, *f, 0.0};
  cert.slack = raw_normal_slack(s, x, x + *f);
  return cert;
}

Projection project_onto_hull(const SampledSet& s, const Vector& y) {
  require_dim(y, s.ambient_dim(), "project_onto_hull");
  const auto& tol = s.tol();
  const double threshold = tol.tol_mem * (1.0 + y.norm());
  const Matrix shifted = s.point_matrix().colwise() - y;
  const auto mn = solvers::min_norm_point(shifted, tol.max_iter, threshold);
  const double dist = mn.point.norm();
  if (dist <= threshold) return Projection{y, 0.0, std::nullopt};

  const Vector p = y + mn.point;
  const Vector out = y - p;
  const double vi_bound = tol.tol_mem * (1.0 + dist);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : s.points()) worst = std::max(worst, out.dot(c - p));
  if (worst > vi_bound) {
    throw IndeterminateError("project_onto_hull: variational inequality not met");
  }
  SupportCertificate cert{p, out / dist, worst / dist};
  if (cert.slack > tol.tol_mem) {
    throw IndeterminateError("project_onto_hull: certificate slack exceeds tolerance");
  }
  return Projection{p, dist, cert};
}

Projection project_onto_hull(const ConvexBody& b, const Vector& y) {
  return project_onto_hull(b.base(), y);
}

double translated_normal_violation(const SampledSet& s, const Vector& x, const Vector& z) {
  require_dim(x, s.ambient_dim(), "translated_normal_violation");
  require_dim(z, s.ambient_dim(), "translated_normal_violation");
  const Vector v = z - x;
  const double allowance = s.tol().tol_mem * (1.0 + v.norm());
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : s.points()) {
    const Vector d = c - x;
    worst = std::max(worst, v.dot(d) - s.resolution() * d.norm());
  }
  return worst - allowance;
}

bool in_translated_normal_cone(const SampledSet& s, const Vector& x, const Vector& z) {
  return translated_normal_violation(s, x, z) <= 0.0;
}

std::optional<AnfWitness> anf_membership(const SampledSet& s, const Vector& z) {
  require_dim(z, s.ambient_dim(), "anf_membership");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) dist[i] = (z - s.points()[i]).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  for (const auto i : order) {
    const Vector& x = s.points()[i];
    if (dist[i] <= s.tol().tol_fix) {
      if (support_certificate(s, x)) return AnfWitness{i, x};
      continue;
    }
    if (in_translated_normal_cone(s, x, z)) return AnfWitness{i, x};
  }
  return std::nullopt;
}

DisjointnessReport translated_normal_cones_disjoint(const SampledSet& s, const Vector& x1,
                                                    const Vector& x2,
                                                    std::span<const Vector> probes) {
  require_sample(s, x1, "translated_normal_cones_disjoint");
  require_sample(s, x2, "translated_normal_cones_disjoint");
  if ((x1 - x2).norm() <= s.tol().tol_fix) {
    throw PreconditionError("translated_normal_cones_disjoint: points coincide");
  }
  if (!support_certificate(s, x1) || !support_certificate(s, x2)) {
    throw PreconditionError("translated_normal_cones_disjoint: not a support point");
  }
  DisjointnessReport report;
  for (const auto& z : probes) {
    require_dim(z, s.ambient_dim(), "translated_normal_cones_disjoint");
    const double s1 = raw_normal_slack(s, x1, z);
    const double s2 = raw_normal_slack(s, x2, z);
    if (s1 <= 0.0 && s2 <= 0.0) {
      ++report.strict_violations;
    } else if (s1 <= s.tol().tol_mem * (1.0 + (z - x1).norm()) &&
               s2 <= s.tol().tol_mem * (1.0 + (z - x2).norm())) {
      ++report.ties;
    }
  }
  report.disjoint = report.strict_violations == 0;
  return report;
}

BodyConvexityReport convexity_check_body(const ConvexBody& b, std::span<const Vector> boundary_sample,
                                         std::span<const Vector> excluded_probes) {
  const SampledSet& base = b.base();
  BodyConvexityReport report;
  for (const auto& x : boundary_sample) {
    require_sample(base, x, "convexity_check_body");
    BoundaryPointResult r{x, is_strictly_interior(base, x), support_certificate(base, x)};
    if (!r.certificate) report.all_certified = false;
    report.points.push_back(std::move(r));
  }
  const double tol_mem = base.tol().tol_mem;
  for (std::size_t k = 0; k < report.points.size(); ++k) {
    const auto& cert = report.points[k].certificate;
    if (!cert) continue;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (cert->normal.dot(base.points()[i] - cert->point) > tol_mem) {
        report.halfspace_violations.emplace_back(k, i);
      }
    }
  }
  for (std::size_t j = 0; j < excluded_probes.size(); ++j) {
    const Vector& z = excluded_probes[j];
    require_dim(z, base.ambient_dim(), "convexity_check_body");
    const bool inside = std::all_of(report.points.begin(), report.points.end(), [&](const auto& r) {
      return !r.certificate || r.certificate->normal.dot(z - r.certificate->point) <= tol_mem;
    });
    if (inside) report.excluded_inside.push_back(j);
  }
  report.convex_consistent =
      report.all_certified && report.halfspace_violations.empty() && report.excluded_inside.empty();
  return report;
}

AnfConvexityReport convexity_check_anf(const SampledSet& s, std::span<const Vector> outside_probes) {
  for (std::size_t i = 0; i < outside_probes.size(); ++i) {
    require_dim(outside_probes[i], s.ambient_dim(), "convexity_check_anf");
    for (std::size_t j = i + 1; j < outside_probes.size(); ++j) {
      if ((outside_probes[i] - outside_probes[j]).norm() <= s.tol().tol_fix) {
        throw PreconditionError("convexity_check_anf: probes are not pairwise distinct");
      }
    }
  }
  AnfConvexityReport report;
  for (std::size_t i = 0; i < outside_probes.size(); ++i) {
    ProbeCoverage pc{outside_probes[i], hull_member(s, outside_probes[i]), std::nullopt};
    pc.witness = anf_membership(s, pc.probe);
    if (!pc.witness) report.uncovered.push_back(i);
    report.probes.push_back(std::move(pc));
  }
  report.covered = report.uncovered.empty();
  return report;
}

}  // namespace convexkit
