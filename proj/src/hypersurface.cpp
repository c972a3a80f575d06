#include "convexkit/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "convexkit/errors.hpp"
#include "convexkit/solvers.hpp"

namespace convexkit {

SphereSampling::SphereSampling(Index ambient_dim, std::vector<Vector> directions,
                               const ToleranceProfile& tol)
    : ambient_dim_(ambient_dim), directions_(std::move(directions)) {
  if (ambient_dim < 1) throw InvariantViolation("sphere sampling: ambient dimension must be positive");
  if (directions_.empty()) throw InvariantViolation("sphere sampling: no directions");
  for (const auto& u : directions_) {
    require_dim(u, ambient_dim, "sphere sampling");
    require_finite(u, "sphere sampling");
    if (std::abs(u.norm() - 1.0) > tol.tol_ortho) {
      throw InvariantViolation("sphere sampling: direction is not a unit vector");
    }
  }
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    for (std::size_t j = i + 1; j < directions_.size(); ++j) {
      if ((directions_[i] - directions_[j]).norm() <= tol.tol_fix) {
        throw InvariantViolation("sphere sampling: repeated direction");
      }
    }
  }
}

SphereSampling SphereSampling::circle(std::size_t k, double phase) {
  std::vector<Vector> dirs;
  dirs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
    dirs.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
  }
  return SphereSampling(2, std::move(dirs));
}

SphereSampling SphereSampling::fibonacci(std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vector> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    Vector u = Eigen::Vector3d(r * std::cos(a), r * std::sin(a), z);
    dirs.push_back(u.normalized());
  }
  return SphereSampling(3, std::move(dirs));
}

SphereSampling SphereSampling::random(Index ambient_dim, std::size_t n, Rng& rng) {
  std::vector<Vector> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dirs.push_back(rng.unit_vector(ambient_dim));
  return SphereSampling(ambient_dim, std::move(dirs));
}

std::size_t SphereSampling::nearest(const Vector& v) const {
  require_dim(v, ambient_dim_, "nearest direction");
  std::size_t best = 0;
  double best_dot = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    const double d = directions_[i].dot(v);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

double SphereSampling::angular_gap(std::span<const Vector> probes) const {
  double worst = 0.0;
  for (const auto& p : probes) {
    const Vector u = p.normalized();
    const double c = std::clamp(directions_[nearest(u)].dot(u), -1.0, 1.0);
    worst = std::max(worst, std::acos(c));
  }
  return worst;
}

bool SphereSampling::spans_angle(double degrees) const {
  const double cos_limit = std::cos(degrees * std::numbers::pi / 180.0);
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    for (std::size_t j = i + 1; j < directions_.size(); ++j) {
      if (directions_[i].dot(directions_[j]) < cos_limit) return true;
    }
  }
  return false;
}

SampledHypersurface::SampledHypersurface(SphereSampling sampling, std::vector<Vector> points,
                                         const ToleranceProfile& tol, double min_span_degrees)
    : sampling_(std::move(sampling)), points_(std::move(points)), tol_(tol) {
  if (points_.size() != sampling_.size()) {
    throw InvariantViolation("hypersurface: point count differs from direction count");
  }
  min_radius_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Vector& p = points_[i];
    require_dim(p, sampling_.ambient_dim(), "hypersurface point");
    require_finite(p, "hypersurface point");
    const double r = p.norm();
    if (!(r > 0.0)) throw InvariantViolation("hypersurface: point at the origin");
    if ((p - r * sampling_.directions()[i]).norm() > tol_.tol_fix * std::max(1.0, r)) {
      throw InvariantViolation("hypersurface: point " + std::to_string(i) + " is off its ray");
    }
    min_radius_ = std::min(min_radius_, r);
    max_radius_ = std::max(max_radius_, r);
  }
  if (!sampling_.spans_angle(min_span_degrees)) {
    throw InvariantViolation("hypersurface: directions confined to a cap (surface with boundary)");
  }
}

SampledHypersurface SampledHypersurface::from_radii(SphereSampling sampling,
                                                    std::span<const double> radii,
                                                    const ToleranceProfile& tol) {
  if (radii.size() != sampling.size()) throw InvariantViolation("hypersurface: radius count mismatch");
  std::vector<Vector> pts;
  pts.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) pts.push_back(radii[i] * sampling.directions()[i]);
  return SampledHypersurface(std::move(sampling), std::move(pts), tol);
}

std::vector<double> SampledHypersurface::radii() const {
  std::vector<double> r;
  r.reserve(points_.size());
  for (const auto& p : points_) r.push_back(p.norm());
  return r;
}

double ray_exit_parameter(const ConvexBody& b, const Vector& u) {
  const Index d = b.ambient_dim();
  require_dim(u, d, "ray_exit_parameter");
  if (std::abs(u.norm() - 1.0) > 1e-9) throw PreconditionError("ray_exit_parameter: direction is not a unit vector");
  const auto& pts = b.base().points();
  const auto n = static_cast<Index>(pts.size());
  const Vector& o = b.interior_point();

  // Variables (lambda_1..lambda_n, t): sum lambda_i (c_i - o) - t u = 0,
  // sum lambda_i = 1; maximize t.
  Matrix a = Matrix::Zero(d + 1, n + 1);
  double reach = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Vector rel = pts[static_cast<std::size_t>(i)] - o;
    a.col(i).head(d) = rel;
    a(d, i) = 1.0;
    reach = std::max(reach, rel.norm());
  }
  a.col(n).head(d) = -u;
  Vector rhs = Vector::Zero(d + 1);
  rhs(d) = 1.0;
  Vector cost = Vector::Zero(n + 1);
  cost(n) = 1.0;

  const auto lp = solvers::maximize(cost, a, rhs, b.base().tol().max_iter);
  switch (lp.status) {
    case solvers::LpStatus::kOptimal:
      break;
    case solvers::LpStatus::kIterationLimit:
      throw IndeterminateError("ray_exit_parameter: iteration limit reached");
    case solvers::LpStatus::kInfeasible:
      throw InvariantViolation("ray_exit_parameter: interior point is outside the hull");
    case solvers::LpStatus::kUnbounded:
      throw InvariantViolation("ray_exit_parameter: ray never leaves the hull");
  }
  const double t = lp.x(n);
  if (t > 2.0 * reach) throw InvariantViolation("ray_exit_parameter: exit beyond the sample bound");
  return t;
}

Vector ray_boundary_intersection(const ConvexBody& b, const Vector& u) {
  return b.interior_point() + ray_exit_parameter(b, u) * u;
}

SampledHypersurface radial_homeo(const ConvexBody& b, const SphereSampling& sampling) {
  if (sampling.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("radial_homeo");
  std::vector<Vector> pts;
  pts.reserve(sampling.size());
  for (const auto& u : sampling.directions()) pts.push_back(ray_exit_parameter(b, u) * u);
  return SampledHypersurface(sampling, std::move(pts), b.base().tol());
}

Vector radial_inverse(const Vector& z) {
  const double r = z.norm();
  if (!(r > 0.0)) throw PreconditionError("radial_inverse: zero vector");
  return z / r;
}

RadialMapTable::RadialMapTable(SphereSampling sampling, std::vector<double> gamma_norms,
                               double scale, std::optional<Vector> center)
    : sampling_(std::move(sampling)),
      gamma_norms_(std::move(gamma_norms)),
      scale_(scale),
      center_(center ? std::move(*center) : Vector::Zero(sampling_.ambient_dim())) {
  if (gamma_norms_.size() != sampling_.size()) {
    throw InvariantViolation("radial map: gamma norm count differs from direction count");
  }
  for (const double g : gamma_norms_) {
    if (!(g > 2.0) || !std::isfinite(g)) throw InvariantViolation("radial map: gamma norm must exceed 2");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InvariantViolation("radial map: scale must be positive");
  require_dim(center_, sampling_.ambient_dim(), "radial map center");
}

Vector RadialMapTable::gamma(const Vector& y) const {
  return gamma_norm(y) * (y / y.norm());
}

RadialMapTable make_radial_map(const ConvexBody& b, const SphereSampling& sampling) {
  const auto phi = radial_homeo(b, sampling);
  const double target = 2.0 * (1.0 + b.base().tol().tol_mem);
  const double scale = phi.min_radius() > target ? 1.0 : 1.25 * target / phi.min_radius();
  std::vector<double> gammas = phi.radii();
  for (auto& g : gammas) g *= scale;
  return RadialMapTable(sampling, std::move(gammas), scale, b.interior_point());
}

Vector psi_extend(const RadialMapTable& t, const Vector& y) {
  require_dim(y, t.sampling().ambient_dim(), "psi_extend");
  const double r = y.norm();
  if (r > 2.0 * (1.0 + 1e-12)) throw PreconditionError("psi_extend: point outside the radius-2 ball");
  if (r < 1.0) return y;
  const Vector u = y / r;
  return (r - 1.0) * t.gamma(y) + (2.0 - r) * u;
}

Vector psi_inverse(const RadialMapTable& t, const Vector& z) {
  require_dim(z, t.sampling().ambient_dim(), "psi_inverse");
  const double r = z.norm();
  if (r < 1.0) return z;
  const double g = t.gamma_norm(z);
  if (r > g * (1.0 + 1e-12)) throw PreconditionError("psi_inverse: point outside the image of psi");
  return (z / r) * (1.0 + (r - 1.0) / (g - 1.0));
}

Convexification convexify(const SampledHypersurface& phi) {
  const Index d = phi.ambient_dim();
  if (affine_hull_dim(phi.points(), phi.tol()) != d) {
    throw PreconditionError("convexify: hull of the hypersurface has empty interior");
  }
  const ConvexBody hull(SampledSet(phi.points(), phi.tol()), Vector::Zero(d));
  std::vector<Vector> pts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pts.reserve(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Vector& u = phi.sampling().directions()[i];
    pts.push_back(ray_exit_parameter(hull, u) * u);
    pairs.emplace_back(i, i);
  }
  return Convexification{SampledHypersurface(phi.sampling(), std::move(pts), phi.tol()),
                         std::move(pairs)};
}

HypersurfaceConvexityReport is_convex_hypersurface(const SampledHypersurface& phi) {
  const SampledSet set(phi.points(), phi.tol());
  HypersurfaceConvexityReport report;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    report.certificates.push_back(support_certificate(set, phi.points()[i]));
    if (!report.certificates.back()) report.unsupported.push_back(i);
  }
  report.convex = report.unsupported.empty();
  return report;
}

bool affine_extension_check(const SampledHypersurface& phi) {
  if (!is_convex_hypersurface(phi).convex) {
    throw PreconditionError("affine_extension_check: hypersurface is not convex");
  }
  return affine_hull_dim(phi.points(), phi.tol()) == phi.ambient_dim();
}

}  // namespace convexkit
