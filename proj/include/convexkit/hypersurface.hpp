#pragma once

// Closed hypersurfaces parameterized by sphere directions: ray/boundary
// intersection, the radial homeomorphism phi, its extension psi to the
// radius-2 ball, convexification and the affine-extension check.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "convexkit/linalg.hpp"
#include "convexkit/random.hpp"
#include "convexkit/support.hpp"

namespace convexkit {

// Pairwise distinct unit directions.
class SphereSampling {
 public:
  SphereSampling(Index ambient_dim, std::vector<Vector> directions, const ToleranceProfile& tol = {});

  // k equally spaced directions on the unit circle, starting at `phase`.
  static SphereSampling circle(std::size_t k, double phase = 0.0);
  // Fibonacci lattice on the unit 2-sphere.
  static SphereSampling fibonacci(std::size_t n);
  static SphereSampling random(Index ambient_dim, std::size_t n, Rng& rng);

  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& directions() const { return directions_; }
  std::size_t size() const { return directions_.size(); }

  // Index of the stored direction closest in angle to v (v != 0).
  std::size_t nearest(const Vector& v) const;
  // Largest angle, in radians, from any sampled direction in `probes` to its
  // nearest stored direction.
  double angular_gap(std::span<const Vector> probes) const;
  // Whether some pair of directions is more than `degrees` apart.
  bool spans_angle(double degrees) const;

 private:
  Index ambient_dim_;
  std::vector<Vector> directions_;
};

// points[i] lies on the ray of directions[i]; m <= ||points[i]|| <= M with m > 0.
class SampledHypersurface {
 public:
  // Rejects samplings confined to a cap (no pair of directions more than
  // `min_span_degrees` apart); those describe hypersurfaces with boundary.
  SampledHypersurface(SphereSampling sampling, std::vector<Vector> points,
                      const ToleranceProfile& tol = {}, double min_span_degrees = 150.0);

  static SampledHypersurface from_radii(SphereSampling sampling, std::span<const double> radii,
                                        const ToleranceProfile& tol = {});

  const SphereSampling& sampling() const { return sampling_; }
  const std::vector<Vector>& points() const { return points_; }
  const ToleranceProfile& tol() const { return tol_; }
  std::size_t size() const { return points_.size(); }
  Index ambient_dim() const { return sampling_.ambient_dim(); }
  std::vector<double> radii() const;
  double min_radius() const { return min_radius_; }
  double max_radius() const { return max_radius_; }

 private:
  SphereSampling sampling_;
  std::vector<Vector> points_;
  ToleranceProfile tol_;
  double min_radius_ = 0.0;
  double max_radius_ = 0.0;
};

// Largest t with interior_point + t u in the hull, solved as a linear
// program over convex weights. Throws InvariantViolation if the exit lies
// beyond twice the sample radius about the interior point.
double ray_exit_parameter(const ConvexBody& b, const Vector& u);
// interior_point + t* u.
Vector ray_boundary_intersection(const ConvexBody& b, const Vector& u);

// phi: direction -> boundary point, in coordinates centred at the body's
// interior point.
SampledHypersurface radial_homeo(const ConvexBody& b, const SphereSampling& sampling);
// phi^{-1}(z) = z / ||z||.
Vector radial_inverse(const Vector& z);

// gamma(u) = gamma_norms[i] * u along the nearest stored direction i, in a
// frame where the body is translated to its interior point and scaled by
// `scale` so that every gamma norm exceeds 2.
class RadialMapTable {
 public:
  RadialMapTable(SphereSampling sampling, std::vector<double> gamma_norms, double scale = 1.0,
                 std::optional<Vector> center = std::nullopt);

  const SphereSampling& sampling() const { return sampling_; }
  const std::vector<double>& gamma_norms() const { return gamma_norms_; }
  double scale() const { return scale_; }
  const Vector& center() const { return center_; }

  double gamma_norm(const Vector& y) const { return gamma_norms_[sampling_.nearest(y)]; }
  // gamma(y) on the ray of y.
  Vector gamma(const Vector& y) const;

  Vector to_normalized(const Vector& x) const { return scale_ * (x - center_); }
  Vector from_normalized(const Vector& y) const { return center_ + y / scale_; }

 private:
  SphereSampling sampling_;
  std::vector<double> gamma_norms_;
  double scale_;
  Vector center_;
};

// Samples phi on `sampling` and rescales so the smallest boundary radius
// exceeds 2 (1 + tol_mem).
RadialMapTable make_radial_map(const ConvexBody& b, const SphereSampling& sampling);

// psi(y) = (||y|| - 1) gamma(y) + (2 - ||y||) y / ||y|| for 1 <= ||y|| <= 2,
// identity inside the unit ball. Throws PreconditionError for ||y|| > 2.
Vector psi_extend(const RadialMapTable& t, const Vector& y);
// psi^{-1}(z) = z/||z|| (1 + (||z|| - 1) / (||gamma(z)|| - 1)) for ||z|| >= 1,
// identity inside the unit ball. Throws PreconditionError outside the image.
Vector psi_inverse(const RadialMapTable& t, const Vector& z);

struct Convexification {
  SampledHypersurface omega;
  std::vector<std::pair<std::size_t, std::size_t>> correspondence;
};

// Boundary of the hull of phi sampled along phi's own directions. The
// parameterization origin must be strictly inside the hull.
Convexification convexify(const SampledHypersurface& phi);

struct HypersurfaceConvexityReport {
  std::vector<std::optional<SupportCertificate>> certificates;
  std::vector<std::size_t> unsupported;
  bool convex = true;
};

HypersurfaceConvexityReport is_convex_hypersurface(const SampledHypersurface& phi);

// Whether the points affinely span the ambient space. Throws
// PreconditionError when phi is not a convex hypersurface.
bool affine_extension_check(const SampledHypersurface& phi);

}  // namespace convexkit
