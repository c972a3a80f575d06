#pragma once

// Feasibility and projection kernels behind the cone and hull predicates.

#include "convexkit/linalg.hpp"

namespace convexkit::solvers {

struct NnlsResult {
  Vector coefficients;  // alpha >= 0
  Vector residual;      // b - A alpha
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Lawson-Hanson active-set solver for min ||A alpha - b|| subject to
// alpha >= 0. Returns early, with converged = true, as soon as the residual
// norm drops to `stop_residual` or below.
NnlsResult nnls(const Matrix& a, const Vector& b, int max_iter, double stop_residual = 0.0);

struct MinNormResult {
  Vector point;    // minimum-norm point of conv(columns)
  Vector weights;  // convex weights, one per column
  int iterations = 0;
  bool converged = false;
};

// Wolfe's algorithm for the minimum-norm point of the convex hull of the
// columns of `points`. Stops early once the current iterate's norm is at or
// below `stop_norm`.
MinNormResult min_norm_point(const Matrix& points, int max_iter, double stop_norm = 0.0);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

// Two-phase dense tableau simplex for max c^T x s.t. A x = b, x >= 0.
// Dantzig pricing, falling back to Bland's rule after a run of degenerate
// pivots.
LpResult maximize(const Vector& c, const Matrix& a_eq, const Vector& b_eq, int max_iter);

}  // namespace convexkit::solvers
