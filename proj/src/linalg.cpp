#include "convexkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "convexkit/errors.hpp"

namespace convexkit {

void ToleranceProfile::validate() const {
  if (!(tol_mem > 0) || !(tol_ortho > 0) || !(tol_rank > 0) || !(tol_fix > 0)) {
    throw InvariantViolation("tolerances must be strictly positive");
  }
  if (max_iter < 1) throw InvariantViolation("max_iter must be at least 1");
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) {
    throw InvariantViolation(std::string(what) + ": non-finite coordinate");
  }
}

void require_dim(const Vector& v, Index dim, std::string_view what) {
  if (v.size() != dim) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(dim) + ", got " +
                            std::to_string(v.size()));
  }
}

Matrix as_columns(std::span<const Vector> vectors, Index dim) {
  Matrix m(dim, static_cast<Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_dim(vectors[j], dim, "as_columns");
    m.col(static_cast<Index>(j)) = vectors[j];
  }
  return m;
}

Subspace::Subspace(Index ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {
  if (ambient_dim < 1) throw InvariantViolation("ambient dimension must be positive");
}

Subspace::Subspace(Matrix basis, const ToleranceProfile& tol)
    : ambient_dim_(basis.rows()), basis_(std::move(basis)) {
  if (ambient_dim_ < 1) throw InvariantViolation("ambient dimension must be positive");
  if (basis_.cols() > ambient_dim_) throw InvariantViolation("rank exceeds ambient dimension");
  if (!basis_.allFinite()) throw InvariantViolation("subspace basis: non-finite coordinate");
  const Matrix gram = basis_.transpose() * basis_;
  const Matrix defect = gram - Matrix::Identity(gram.rows(), gram.cols());
  if (defect.size() > 0 && defect.cwiseAbs().maxCoeff() > tol.tol_ortho) {
    throw InvariantViolation("subspace basis is not orthonormal");
  }
}

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim), ToleranceProfile{});
}

Subspace orthonormalize(Index ambient_dim, std::span<const Vector> vectors,
                        const ToleranceProfile& tol) {
  double scale = 0.0;
  for (const auto& v : vectors) {
    require_dim(v, ambient_dim, "orthonormalize");
    require_finite(v, "orthonormalize");
    scale = std::max(scale, v.norm());
  }
  const double cutoff = tol.tol_rank * scale;

  Matrix basis(ambient_dim, 0);
  for (const auto& v : vectors) {
    if (basis.cols() == ambient_dim) break;
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < basis.cols(); ++k) r -= basis.col(k).dot(r) * basis.col(k);
    }
    const double n = r.norm();
    if (n <= cutoff || n == 0.0) continue;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / n;
  }
  return Subspace(std::move(basis), tol);
}

Vector project(const Subspace& s, const Vector& x) {
  require_dim(x, s.ambient_dim(), "project");
  if (s.rank() == 0) return Vector::Zero(s.ambient_dim());
  return s.basis() * (s.basis().transpose() * x);
}

Subspace orthogonal_complement(const Subspace& s) {
  const Index d = s.ambient_dim();
  const Index k = s.rank();
  if (k == 0) return Subspace::full(d);
  if (k == d) return Subspace(d);
  Eigen::HouseholderQR<Matrix> qr(s.basis());
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return Subspace(q.rightCols(d - k), ToleranceProfile{});
}

double span_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("span_distance");
  if (a.rank() != b.rank()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Index i = 0; i < a.rank(); ++i) {
    worst = std::max(worst, (a.basis_vector(i) - project(b, a.basis_vector(i))).norm());
  }
  for (Index i = 0; i < b.rank(); ++i) {
    worst = std::max(worst, (b.basis_vector(i) - project(a, b.basis_vector(i))).norm());
  }
  return worst;
}

int affine_hull_dim(std::span<const Vector> points, const ToleranceProfile& tol) {
  if (points.empty()) throw PreconditionError("affine_hull_dim: empty input");
  const Index d = points.front().size();
  if (points.size() == 1) return 0;
  Matrix diffs(d, static_cast<Index>(points.size() - 1));
  double scale = points.front().norm();
  for (std::size_t i = 1; i < points.size(); ++i) {
    require_dim(points[i], d, "affine_hull_dim");
    diffs.col(static_cast<Index>(i - 1)) = points[i] - points.front();
    scale = std::max(scale, points[i].norm());
  }
  Eigen::JacobiSVD<Matrix> svd(diffs);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  // An absolute floor keeps numerically coincident clouds at dimension 0.
  const double cutoff = tol.tol_rank * std::max(top, scale);
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace convexkit
