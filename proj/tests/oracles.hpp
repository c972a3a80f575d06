#pragma once

// Independent reference computations used only by the tests. None of these
// go through the NNLS or min-norm-point kernels the library uses for
// membership and projection.

#include <cstddef>
#include <vector>

#include "convexkit/linalg.hpp"
#include "convexkit/random.hpp"

namespace convexkit::oracles {

// Minimum L1 residual ||G a - x||_1 over a >= 0, solved as a linear program.
double lp_cone_residual(const std::vector<Vector>& gens, const Vector& x);
// Minimum L1 residual ||sum l_i p_i - x||_1 over convex weights l.
double lp_hull_residual(const std::vector<Vector>& pts, const Vector& x);

// Leave-one-out test: is pts[i] outside conv(pts without i)?
bool leave_one_out_extreme(const std::vector<Vector>& pts, std::size_t i, double tol);

// All sums sum k_i g_i with integer k_i in [0, max_coeff].
std::vector<Vector> lattice_combinations(const std::vector<Vector>& gens, int max_coeff);

// Exact distance from y to conv(pts) by enumerating every subset of at most
// d + 1 points and projecting onto its affine hull.
double face_enumeration_distance(const std::vector<Vector>& pts, const Vector& y);
// Minimum distance over barycentric grid points with denominator n.
double grid_hull_distance(const std::vector<Vector>& pts, const Vector& y, int n);
// Grid search with denominator n followed by pattern refinement along the
// simplex edge directions until the step falls below min_step.
double refined_grid_hull_distance(const std::vector<Vector>& pts, const Vector& y, int n,
                                  double min_step = 1e-12);

// Outer radial function of conv(pts) about the origin along u, computed
// from the support function on the given normal directions.
double support_radial(const std::vector<Vector>& pts, const Vector& u,
                      const std::vector<Vector>& normals);

// Boundary radius of the regular k-gon with circumradius r (first vertex on
// the x-axis) along angle theta.
double regular_polygon_radius(std::size_t k, double r, double theta);

// Rank by Gaussian elimination with partial pivoting.
int elimination_rank(Matrix m, double tol);

// Random cone in dimension d with m generators; when `with_pair` the first
// generator's negation is appended.
std::vector<Vector> random_generators(Rng& rng, Index d, int m, bool with_pair);

// Random point cloud with n Gaussian points.
std::vector<Vector> random_cloud(Rng& rng, Index d, int n);

}  // namespace convexkit::oracles
