#pragma once

// Dense real linear algebra shared by every other module: vectors,
// orthonormal subspace bases, orthogonal projections and the tolerance
// policy.

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace convexkit {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Numerical slack used by every membership, rank and round-trip decision.
struct ToleranceProfile {
  double tol_mem = 1e-7;    // membership slack
  double tol_ortho = 1e-9;  // orthonormality
  double tol_rank = 1e-8;   // relative singular-value cutoff
  double tol_fix = 1e-8;    // round-trip / fixed-point distance
  int max_iter = 10000;

  // Throws InvariantViolation unless every tolerance is positive and
  // max_iter >= 1.
  void validate() const;
};

void require_finite(const Vector& v, std::string_view what);
void require_dim(const Vector& v, Index dim, std::string_view what);

// Stacks vectors of equal dimension as the columns of a matrix.
Matrix as_columns(std::span<const Vector> vectors, Index dim);

// A linear subspace held as an orthonormal basis (columns of a d x k matrix).
class Subspace {
 public:
  explicit Subspace(Index ambient_dim);
  // `basis` columns must be orthonormal within tol.tol_ortho.
  Subspace(Matrix basis, const ToleranceProfile& tol);

  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index rank() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(Index i) const { return basis_.col(i); }

 private:
  Index ambient_dim_;
  Matrix basis_;
};

// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
// residual after deflation is below tol_rank times the largest input norm
// are dropped.
Subspace orthonormalize(Index ambient_dim, std::span<const Vector> vectors,
                        const ToleranceProfile& tol);

// Orthogonal projection of x onto span(s).
Vector project(const Subspace& s, const Vector& x);

Subspace orthogonal_complement(const Subspace& s);

// Largest residual of projecting each basis vector of one subspace onto the
// other, in both directions. Infinity when ranks differ.
double span_distance(const Subspace& a, const Subspace& b);

// Rank of {p_i - p_0}; singular values below tol_rank relative to the
// largest one count as zero.
int affine_hull_dim(std::span<const Vector> points, const ToleranceProfile& tol);

}  // namespace convexkit
