#pragma once

// Finitely generated convex cones: membership, lineality, pointedness,
// properness, polarity and the orthogonal decomposition
//   C = lin(C) + P_{lin(C)^perp} C.

#include <optional>
#include <span>
#include <vector>

#include "convexkit/linalg.hpp"
#include "convexkit/random.hpp"

namespace convexkit {

// {sum a_i g_i : a_i >= 0}. Generators that are zero within tol_rank are
// dropped on construction.
class PolyhedralCone {
 public:
  PolyhedralCone(Index ambient_dim, std::vector<Vector> generators,
                 const ToleranceProfile& tol = {});

  // The subspace as the cone generated by +-basis.
  static PolyhedralCone from_subspace(const Subspace& s);

  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  Matrix generator_matrix() const { return as_columns(generators_, ambient_dim_); }

  PolyhedralCone negated() const;
  // Cone generated by the union of both generator lists (the Minkowski sum).
  PolyhedralCone sum(const PolyhedralCone& other) const;

 private:
  Index ambient_dim_;
  std::vector<Vector> generators_;
};

// {x : <n_i, x> <= 0 for all i}; the empty list is the whole space.
class HalfspaceCone {
 public:
  HalfspaceCone(Index ambient_dim, std::vector<Vector> normals);

  Index ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& normals() const { return normals_; }

 private:
  Index ambient_dim_;
  std::vector<Vector> normals_;
};

// lineality + cone(pointed_generators), with the pointed generators
// orthogonal to the lineality and generating a pointed cone.
class StructuredCone {
 public:
  StructuredCone(Subspace lineality, std::vector<Vector> pointed_generators,
                 const ToleranceProfile& tol = {});

  Index ambient_dim() const { return lineality_.ambient_dim(); }
  const Subspace& lineality() const { return lineality_; }
  const std::vector<Vector>& pointed_generators() const { return pointed_; }

  PolyhedralCone pointed_part() const;
  // {+-basis} followed by the pointed generators.
  PolyhedralCone flattened() const;

 private:
  Subspace lineality_;
  std::vector<Vector> pointed_;
};

// Decided by the nonnegative least-squares residual:
// true iff min ||sum a_i g_i - x|| <= tol_mem (1 + ||x||).
// Throws IndeterminateError when the solver hits max_iter first.
bool cone_member(const PolyhedralCone& c, const Vector& x, const ToleranceProfile& tol = {});

// Span of the generators g with -g in c.
Subspace lineality_space(const PolyhedralCone& c, const ToleranceProfile& tol = {});

bool is_pointed(const PolyhedralCone& c, const ToleranceProfile& tol = {});

// Unit f with <f, g_i> <= tol_mem for every generator, or nothing when the
// generators positively span the whole space.
std::optional<Vector> is_proper(const PolyhedralCone& c, const ToleranceProfile& tol = {});

HalfspaceCone polar(const PolyhedralCone& c);

// true iff <n_i, x> <= tol_mem (1 + ||x||) for every normal.
bool halfspace_member(const HalfspaceCone& h, const Vector& x, const ToleranceProfile& tol = {});

// Generators of the polar cone {f : <g_i, f> <= 0}: its lineality
// span(G)^perp plus unit extreme rays inside span(G). `exhaustive` is false
// when the ray enumeration exceeded `max_subsets` and the rays are a sample.
struct PolarGenerators {
  Subspace lineality;
  std::vector<Vector> rays;
  bool exhaustive = true;
};
PolarGenerators polar_generators(const PolyhedralCone& c, const ToleranceProfile& tol = {},
                                 std::size_t max_subsets = 200000);

// Membership in (C^p)^p through the polar generators.
bool double_polar_member(const PolarGenerators& pg, const Vector& x, const ToleranceProfile& tol = {});

// true iff (C^p)^p membership matches cone_member(c, x) on every probe.
bool double_polar_closure_check(const PolyhedralCone& c, std::span<const Vector> probes,
                                const ToleranceProfile& tol = {});

StructuredCone decompose(const PolyhedralCone& c, const ToleranceProfile& tol = {});

// x belongs iff P_{L^perp} x lies in the pointed generator cone.
bool structured_member(const StructuredCone& s, const Vector& x, const ToleranceProfile& tol = {});

// Rebuilds the cone span(F) + cone(V) and checks that decomposition
// recovers F as the lineality and cone(V) as the pointed part.
// Throws PreconditionError if V is not orthogonal to F or not pointed.
bool reconstruct_lineality_check(const Subspace& f_basis, std::span<const Vector> v_gens,
                                 const ToleranceProfile& tol = {});

// f is in the polar of s iff f is orthogonal to the lineality and
// <p, f> <= 0 for each pointed generator p.
bool structured_polar_member(const StructuredCone& s, const Vector& f,
                             const ToleranceProfile& tol = {});

// Delta = gamma + cone(psi). Verifies that the polar computed inside
// gamma^perp agrees with the polar of the flattened cone on a deterministic
// probe set; throws InvariantViolation otherwise.
StructuredCone delta_construction(const Subspace& gamma, std::span<const Vector> psi_gens,
                                  const ToleranceProfile& tol = {});

// +-e_i, normalized generators, normalized pairwise generator sums, then
// `random_count` uniform unit vectors from rng.
std::vector<Vector> default_probes(Index dim, std::span<const Vector> generators, Rng& rng,
                                   std::size_t random_count = 1000);

}  // namespace convexkit
