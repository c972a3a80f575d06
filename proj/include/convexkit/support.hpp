#pragma once

// Tangent and normal cones of sampled closed sets, support certificates,
// minimum-norm projection onto hulls, the applied normal fan and the two
// convexity checks built on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convexkit/cone.hpp"
#include "convexkit/linalg.hpp"

namespace convexkit {

// Finite sample of a closed set. `resolution` is the covering radius of the
// sampled boundary (every boundary point lies within it of some sample);
// zero means the sample is taken as exact.
class SampledSet {
 public:
  explicit SampledSet(std::vector<Vector> points, const ToleranceProfile& tol = {},
                      double resolution = 0.0);

  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const ToleranceProfile& tol() const { return tol_; }
  double resolution() const { return resolution_; }
  Matrix point_matrix() const { return as_columns(points_, ambient_dim_); }

  // Index of the sample within tol_fix of x.
  std::optional<std::size_t> index_of(const Vector& x) const;

 private:
  Index ambient_dim_;
  std::vector<Vector> points_;
  ToleranceProfile tol_;
  double resolution_;
};

// A sampled set with a designated point strictly inside its hull.
class ConvexBody {
 public:
  ConvexBody(SampledSet base, Vector interior_point);

  const SampledSet& base() const { return base_; }
  const Vector& interior_point() const { return interior_; }
  Index ambient_dim() const { return base_.ambient_dim(); }

 private:
  SampledSet base_;
  Vector interior_;
};

struct SupportCertificate {
  Vector point;
  Vector normal;  // unit
  double slack = 0.0;  // max over samples of <normal, c - point>
};

// Euclidean distance from y to conv(samples); stops refining once the
// distance is known to be within the membership threshold.
double hull_distance(const SampledSet& s, const Vector& y);
// dist(y, conv(samples)) <= tol_mem (1 + ||y||).
bool hull_member(const SampledSet& s, const Vector& y);

// +-e_i and +-(1,...,1)/sqrt(d).
std::vector<Vector> interior_probe_directions(Index dim);

// x + delta u is a hull member for every probe direction u, delta = 100 tol_mem.
bool is_strictly_interior(const SampledSet& s, const Vector& x);
bool is_boundary_point(const SampledSet& s, const Vector& x);

PolyhedralCone tangent_cone(const SampledSet& s, const Vector& x);
HalfspaceCone normal_cone(const SampledSet& s, const Vector& x);

bool is_extreme_point(const SampledSet& s, const Vector& x);

std::optional<SupportCertificate> support_certificate(const SampledSet& s, const Vector& x);

struct Projection {
  Vector point;
  double distance = 0.0;
  std::optional<SupportCertificate> certificate;  // empty when y is in the hull
};

// Minimum-distance point of conv(samples) from y, validated by the
// variational inequality <y - p, c - p> <= tol_mem (1 + ||y - p||).
Projection project_onto_hull(const SampledSet& s, const Vector& y);
Projection project_onto_hull(const ConvexBody& b, const Vector& y);

// Largest violation of z - x in N(x): max over samples c of <z - x, c - x>
// minus the allowance tol_mem (1 + ||z - x||) + resolution ||c - x||.
// Non-positive means z lies in x + N(x).
double translated_normal_violation(const SampledSet& s, const Vector& x, const Vector& z);
bool in_translated_normal_cone(const SampledSet& s, const Vector& x, const Vector& z);

struct AnfWitness {
  std::size_t index;
  Vector point;
};

// Sample x with z in x + N(x); ties go to the smallest ||z - x||, then the
// lowest index. z equal to a sample counts only when that sample is a
// support point.
std::optional<AnfWitness> anf_membership(const SampledSet& s, const Vector& z);

struct DisjointnessReport {
  bool disjoint = true;
  std::size_t strict_violations = 0;  // probes in both cones with no slack
  std::size_t ties = 0;               // probes in both only within tolerance
};

// Throws PreconditionError when x1 == x2 or either is not a support point.
DisjointnessReport translated_normal_cones_disjoint(const SampledSet& s, const Vector& x1,
                                                    const Vector& x2,
                                                    std::span<const Vector> probes);

struct BoundaryPointResult {
  Vector point;
  bool hull_interior = false;  // strictly inside the hull of the samples
  std::optional<SupportCertificate> certificate;
};

struct BodyConvexityReport {
  std::vector<BoundaryPointResult> points;
  bool all_certified = true;
  // (certificate index, sample index) pairs where a sample leaves a
  // certified half-space.
  std::vector<std::pair<std::size_t, std::size_t>> halfspace_violations;
  // Excluded probes that nevertheless lie in every certified half-space.
  std::vector<std::size_t> excluded_inside;
  bool convex_consistent = true;
};

// Every listed boundary point must carry a support certificate, every
// sample must satisfy every certified half-space, and no excluded probe
// (a point known not to belong to the set) may lie in their intersection.
BodyConvexityReport convexity_check_body(const ConvexBody& b, std::span<const Vector> boundary_sample,
                                         std::span<const Vector> excluded_probes = {});

struct ProbeCoverage {
  Vector probe;
  bool inside_hull = false;  // informational; hull points outside the set still need a witness
  std::optional<AnfWitness> witness;
};

struct AnfConvexityReport {
  std::vector<ProbeCoverage> probes;
  std::vector<std::size_t> uncovered;  // indices into probes
  bool covered = true;
};

// Every probe is taken to lie outside the sampled set and must have an ANF
// witness. Throws PreconditionError when two probes coincide.
AnfConvexityReport convexity_check_anf(const SampledSet& s, std::span<const Vector> outside_probes);

}  // namespace convexkit
