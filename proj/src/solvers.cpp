#include "convexkit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "convexkit/errors.hpp"

namespace convexkit::solvers {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Matrix gather_columns(const Matrix& a, const std::vector<Index>& idx) {
  Matrix out(a.rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = a.col(idx[k]);
  return out;
}

// Affine weights (summing to one) of the minimum-norm point of aff(columns).
Vector affine_minimizer(const Matrix& q) {
  const Index k = q.cols();
  Vector w(k);
  if (k == 1) {
    w(0) = 1.0;
    return w;
  }
  Matrix diffs = q.rightCols(k - 1).colwise() - q.col(0);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(diffs);
  const Vector v = cod.solve(-q.col(0));
  w(0) = 1.0 - v.sum();
  w.tail(k - 1) = v;
  return w;
}

}  // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, int max_iter, double stop_residual) {
  const Index m = a.cols();
  NnlsResult res;
  res.coefficients = Vector::Zero(m);
  res.residual = b;
  res.residual_norm = b.norm();
  if (res.residual_norm <= stop_residual || m == 0) {
    res.converged = true;
    return res;
  }

  const double a_scale = a.cwiseAbs().maxCoeff();
  const double w_tol = 1e3 * kEps * std::max<double>(1.0, static_cast<double>(m)) * a_scale *
                       std::max(1.0, b.norm());
  std::vector<char> passive(static_cast<std::size_t>(m), 0);
  std::vector<char> blocked(static_cast<std::size_t>(m), 0);
  Vector& x = res.coefficients;

  for (;;) {
    const Vector w = a.transpose() * res.residual;
    Index t = -1;
    double best = w_tol;
    for (Index j = 0; j < m; ++j) {
      if (passive[j] || blocked[j]) continue;
      if (w(j) > best) {
        best = w(j);
        t = j;
      }
    }
    if (t < 0) {
      res.converged = true;
      return res;
    }
    passive[t] = 1;

    bool first_inner = true;
    for (;;) {
      if (++res.iterations > max_iter) return res;
      std::vector<Index> idx;
      for (Index j = 0; j < m; ++j) {
        if (passive[j]) idx.push_back(j);
      }
      const Matrix ap = gather_columns(a, idx);
      const Vector z = ap.colPivHouseholderQr().solve(b);

      bool all_positive = true;
      for (Index k = 0; k < z.size(); ++k) {
        if (!(z(k) > 0.0)) all_positive = false;
      }
      if (all_positive) {
        for (std::size_t k = 0; k < idx.size(); ++k) x(idx[k]) = z(static_cast<Index>(k));
        break;
      }
      if (first_inner) {
        // The entering coefficient should be positive; if rounding says
        // otherwise, block that column and price again.
        const auto pos = std::find(idx.begin(), idx.end(), t) - idx.begin();
        if (!(z(pos) > 0.0)) {
          passive[t] = 0;
          blocked[t] = 1;
          break;
        }
      }
      first_inner = false;

      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double zk = z(static_cast<Index>(k));
        const double xk = x(idx[k]);
        if (zk <= 0.0) alpha = std::min(alpha, xk / (xk - zk));
      }
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const Index j = idx[k];
        x(j) += alpha * (z(static_cast<Index>(k)) - x(j));
        if (x(j) <= 1e2 * kEps * std::max(1.0, std::abs(z(static_cast<Index>(k))))) {
          x(j) = 0.0;
          passive[j] = 0;
        }
      }
    }

    res.residual = b - a * x;
    res.residual_norm = res.residual.norm();
    if (res.residual_norm <= stop_residual) {
      res.converged = true;
      return res;
    }
    // A column blocked for a rounding reason may become useful after the
    // active set moves.
    if (!blocked[t]) std::fill(blocked.begin(), blocked.end(), 0);
  }
}

MinNormResult min_norm_point(const Matrix& points, int max_iter, double stop_norm) {
  const Index n = points.cols();
  if (n == 0) throw PreconditionError("min_norm_point: no points");
  MinNormResult res;
  res.weights = Vector::Zero(n);

  const Vector norms2 = points.colwise().squaredNorm().transpose();
  const double scale = norms2.maxCoeff();
  Index j0 = 0;
  norms2.minCoeff(&j0);

  std::vector<Index> active{j0};
  Vector lambda = Vector::Ones(1);
  Vector x = points.col(j0);
  const double gap_tol = 1e-13 * scale;
  const double weight_tol = 1e-13;
  double prev = std::numeric_limits<double>::infinity();

  auto finish = [&](bool converged) {
    res.point = x;
    res.weights.setZero();
    for (std::size_t k = 0; k < active.size(); ++k) res.weights(active[k]) = lambda(static_cast<Index>(k));
    res.converged = converged;
    return res;
  };

  for (;;) {
    const double xx = x.squaredNorm();
    if (std::sqrt(xx) <= stop_norm || scale == 0.0) return finish(true);
    if (!(xx < prev)) return finish(true);  // no progress left at this precision
    prev = xx;
    if (++res.iterations > max_iter) return finish(false);

    const Vector dots = points.transpose() * x;
    Index j = 0;
    dots.minCoeff(&j);
    if (xx - dots(j) <= gap_tol) return finish(true);
    if (std::find(active.begin(), active.end(), j) != active.end()) return finish(true);

    active.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    for (;;) {
      const Vector w = affine_minimizer(gather_columns(points, active));
      if ((w.array() > weight_tol).all()) {
        lambda = w;
        break;
      }
      double theta = 1.0;
      Index drop = -1;
      for (Index k = 0; k < w.size(); ++k) {
        if (w(k) > weight_tol) continue;
        const double denom = lambda(k) - w(k);
        if (denom <= 0.0) continue;
        const double ratio = lambda(k) / denom;
        if (ratio < theta) {
          theta = ratio;
          drop = k;
        }
      }
      lambda = theta * w + (1.0 - theta) * lambda;
      if (drop >= 0) lambda(drop) = 0.0;

      std::vector<Index> kept;
      std::vector<double> kept_lambda;
      for (Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) > weight_tol) {
          kept.push_back(active[static_cast<std::size_t>(k)]);
          kept_lambda.push_back(lambda(k));
        }
      }
      if (kept.empty()) {
        // Degenerate step; restart from the entering point alone.
        kept.push_back(j);
        kept_lambda.push_back(1.0);
      }
      active = std::move(kept);
      lambda = Eigen::Map<Vector>(kept_lambda.data(), static_cast<Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      if (active.size() == 1) break;
    }
    x = gather_columns(points, active) * lambda;
  }
}

namespace {

struct Tableau {
  Matrix t;  // rows 0..m-1 constraints, row m objective; last column rhs
  std::vector<Index> basis;
  Index rows() const { return static_cast<Index>(basis.size()); }
  Index rhs() const { return t.cols() - 1; }

  void pivot(Index r, Index c) {
    t.row(r) /= t(r, c);
    for (Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = c;
  }
};

// Runs primal simplex on the objective row (most negative reduced cost
// enters). Columns >= allowed_cols never enter.
LpStatus run_simplex(Tableau& tab, Index allowed_cols, int max_iter, int& iterations) {
  constexpr double kCostTol = 1e-11;
  constexpr double kPivotTol = 1e-11;
  const Index m = tab.rows();
  const Index obj = m;
  int degenerate_run = 0;
  bool bland = false;
  for (;;) {
    Index enter = -1;
    double best = -kCostTol;
    for (Index j = 0; j < allowed_cols; ++j) {
      const double rc = tab.t(obj, j);
      if (bland) {
        if (rc < -kCostTol) {
          enter = j;
          break;
        }
      } else if (rc < best) {
        best = rc;
        enter = j;
      }
    }
    if (enter < 0) return LpStatus::kOptimal;
    if (++iterations > max_iter) return LpStatus::kIterationLimit;

    Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const double a = tab.t(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(0.0, tab.t(i, tab.rhs())) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && leave >= 0 &&
           tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(leave)])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave < 0) return LpStatus::kUnbounded;
    if (best_ratio <= 1e-12) {
      if (++degenerate_run > 50) bland = true;
    } else {
      degenerate_run = 0;
    }
    tab.pivot(leave, enter);
  }
}

}  // namespace

LpResult maximize(const Vector& c, const Matrix& a_eq, const Vector& b_eq, int max_iter) {
  const Index m = a_eq.rows();
  const Index n = a_eq.cols();
  if (c.size() != n || b_eq.size() != m) throw DimensionMismatch("maximize: inconsistent LP shapes");

  LpResult res;
  Tableau tab;
  tab.t = Matrix::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const double sign = b_eq(i) < 0.0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * a_eq.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, tab.rhs()) = sign * b_eq(i);
    tab.basis[static_cast<std::size_t>(i)] = n + i;
  }

  // Phase one: maximize -sum(artificials).
  for (Index i = 0; i < m; ++i) {
    tab.t.row(m).head(n) -= tab.t.row(i).head(n);
    tab.t(m, tab.rhs()) -= tab.t(i, tab.rhs());
  }
  LpStatus st = run_simplex(tab, n + m, max_iter, res.iterations);
  if (st == LpStatus::kIterationLimit) {
    res.status = st;
    return res;
  }
  const double b_scale = std::max(1.0, b_eq.cwiseAbs().maxCoeff());
  if (-tab.t(m, tab.rhs()) > 1e-9 * b_scale) {
    res.status = LpStatus::kInfeasible;
    return res;
  }
  for (Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    Index col = -1;
    double best = 1e-9;
    for (Index j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > best) {
        best = std::abs(tab.t(i, j));
        col = j;
      }
    }
    if (col >= 0) tab.pivot(i, col);  // otherwise the row is redundant
  }

  // Phase two.
  tab.t.row(m).setZero();
  tab.t.row(m).head(n) = -c.transpose();
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<std::size_t>(i)];
    const double coef = tab.t(m, bj);
    if (coef != 0.0) tab.t.row(m) -= coef * tab.t.row(i);
  }
  st = run_simplex(tab, n, max_iter, res.iterations);
  res.status = st;
  res.x = Vector::Zero(n);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<std::size_t>(i)];
    if (bj < n) res.x(bj) = std::max(0.0, tab.t(i, tab.rhs()));
  }
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace convexkit::solvers
