#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "convexkit/solvers.hpp"

namespace convexkit::oracles {

namespace {

// min ||A w - x||_1 s.t. w >= 0 (and sum w = 1 when `convex`), via
// A w + s_plus - s_minus = x.
double l1_residual(const std::vector<Vector>& cols, const Vector& x, bool convex) {
  const Index d = x.size();
  const auto n = static_cast<Index>(cols.size());
  const Index rows = d + (convex ? 1 : 0);
  Matrix a = Matrix::Zero(rows, n + 2 * d);
  for (Index j = 0; j < n; ++j) {
    a.col(j).head(d) = cols[static_cast<std::size_t>(j)];
    if (convex) a(d, j) = 1.0;
  }
  a.block(0, n, d, d) = Matrix::Identity(d, d);
  a.block(0, n + d, d, d) = -Matrix::Identity(d, d);
  Vector b = Vector::Zero(rows);
  b.head(d) = x;
  if (convex) b(d) = 1.0;
  Vector c = Vector::Zero(n + 2 * d);
  c.tail(2 * d).setConstant(-1.0);
  const auto lp = solvers::maximize(c, a, b, 100000);
  if (lp.status != solvers::LpStatus::kOptimal) return std::numeric_limits<double>::infinity();
  return -lp.objective;
}

}  // namespace

double lp_cone_residual(const std::vector<Vector>& gens, const Vector& x) {
  return l1_residual(gens, x, false);
}

double lp_hull_residual(const std::vector<Vector>& pts, const Vector& x) {
  return l1_residual(pts, x, true);
}

bool leave_one_out_extreme(const std::vector<Vector>& pts, std::size_t i, double tol) {
  std::vector<Vector> rest;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j != i) rest.push_back(pts[j]);
  }
  return lp_hull_residual(rest, pts[i]) > tol;
}

std::vector<Vector> lattice_combinations(const std::vector<Vector>& gens, int max_coeff) {
  std::vector<Vector> out;
  if (gens.empty()) return out;
  const Index d = gens.front().size();
  std::vector<int> k(gens.size(), 0);
  for (;;) {
    Vector v = Vector::Zero(d);
    for (std::size_t i = 0; i < gens.size(); ++i) v += k[i] * gens[i];
    out.push_back(v);
    std::size_t pos = 0;
    while (pos < k.size() && k[pos] == max_coeff) k[pos++] = 0;
    if (pos == k.size()) break;
    ++k[pos];
  }
  return out;
}

double face_enumeration_distance(const std::vector<Vector>& pts, const Vector& y) {
  const Index d = y.size();
  const std::size_t n = pts.size();
  const std::size_t max_k = std::min<std::size_t>(n, static_cast<std::size_t>(d) + 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    if (!idx.empty()) {
      const std::size_t k = idx.size();
      // Affine weights: minimize ||p_0 + sum v_j (p_j - p_0) - y||.
      Vector w(static_cast<Index>(k));
      if (k == 1) {
        w(0) = 1.0;
      } else {
        Matrix m(d, static_cast<Index>(k - 1));
        for (std::size_t j = 1; j < k; ++j) m.col(static_cast<Index>(j - 1)) = pts[idx[j]] - pts[idx[0]];
        const Vector v = m.fullPivHouseholderQr().solve(y - pts[idx[0]]);
        w(0) = 1.0 - v.sum();
        w.tail(static_cast<Index>(k - 1)) = v;
      }
      if (w.minCoeff() >= -1e-12) {
        Vector p = Vector::Zero(d);
        for (std::size_t j = 0; j < k; ++j) p += w(static_cast<Index>(j)) * pts[idx[j]];
        best = std::min(best, (p - y).norm());
      }
    }
    if (idx.size() == max_k) return;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      recurse(i + 1);
      idx.pop_back();
    }
  };
  recurse(0);
  return best;
}

namespace {

// Barycentric weights of the closest grid point with denominator n.
std::vector<double> best_grid_weights(const std::vector<Vector>& pts, const Vector& y, int n) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> k(pts.size(), 0);
  std::vector<int> best_k = k;
  std::function<void(std::size_t, int)> recurse = [&](std::size_t pos, int left) {
    if (pos + 1 == pts.size()) {
      k[pos] = left;
      Vector p = Vector::Zero(y.size());
      for (std::size_t i = 0; i < pts.size(); ++i) p += (static_cast<double>(k[i]) / n) * pts[i];
      const double dist = (p - y).norm();
      if (dist < best) {
        best = dist;
        best_k = k;
      }
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[pos] = v;
      recurse(pos + 1, left - v);
    }
  };
  recurse(0, n);
  std::vector<double> w;
  for (int v : best_k) w.push_back(static_cast<double>(v) / n);
  return w;
}

}  // namespace

double grid_hull_distance(const std::vector<Vector>& pts, const Vector& y, int n) {
  const std::vector<double> w = best_grid_weights(pts, y, n);
  Vector p = Vector::Zero(y.size());
  for (std::size_t i = 0; i < pts.size(); ++i) p += w[i] * pts[i];
  return (p - y).norm();
}

double refined_grid_hull_distance(const std::vector<Vector>& pts, const Vector& y, int n, double gap_tol) {
  std::vector<double> w = best_grid_weights(pts, y, n);
  Vector p = Vector::Zero(y.size());
  for (std::size_t i = 0; i < pts.size(); ++i) p += w[i] * pts[i];
  // Pairwise steps move weight from the worst active point to the best point
  // by the exact minimizer along their difference. The Frank-Wolfe gap
  // <r, p> - min_i <r, pts[i]> bounds (||p - y||^2 - dist^2) / 2 from above.
  for (int iter = 0; iter < 1000000; ++iter) {
    const Vector r = p - y;
    std::size_t to = 0;
    std::size_t from = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = r.dot(pts[i]);
      if (v < lo) {
        lo = v;
        to = i;
      }
      if (w[i] > 0.0 && v > hi) {
        hi = v;
        from = i;
      }
    }
    if (r.dot(p) - lo <= gap_tol) break;
    const Vector e = pts[to] - pts[from];
    const double ee = e.squaredNorm();
    if (ee == 0.0) break;
    const double t = std::clamp(-r.dot(e) / ee, 0.0, w[from]);
    if (t == 0.0) break;
    p += t * e;
    w[to] += t;
    w[from] -= t;
  }
  return (p - y).norm();
}

double support_radial(const std::vector<Vector>& pts, const Vector& u,
                      const std::vector<Vector>& normals) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& nrm : normals) {
    const double c = nrm.dot(u);
    if (c <= 1e-12) continue;
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) h = std::max(h, nrm.dot(p));
    best = std::min(best, h / c);
  }
  return best;
}

double regular_polygon_radius(std::size_t k, double r, double theta) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(k);
  const double rel = theta - step * std::floor(theta / step);  // angle past the previous vertex
  return r * std::cos(step / 2.0) / std::cos(rel - step / 2.0);
}

int elimination_rank(Matrix m, double tol) {
  int rank = 0;
  const Index rows = m.rows();
  const Index cols = m.cols();
  for (Index c = 0; c < cols && rank < rows; ++c) {
    Index piv = rank;
    for (Index r = rank; r < rows; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    }
    if (std::abs(m(piv, c)) <= tol) continue;
    m.row(piv).swap(m.row(rank));
    for (Index r = rank + 1; r < rows; ++r) m.row(r) -= (m(r, c) / m(rank, c)) * m.row(rank);
    ++rank;
  }
  return rank;
}

std::vector<Vector> random_generators(Rng& rng, Index d, int m, bool with_pair) {
  std::vector<Vector> gens;
  for (int i = 0; i < m; ++i) gens.push_back(rng.gaussian(d));
  if (with_pair && !gens.empty()) gens.push_back(-gens.front());
  return gens;
}

std::vector<Vector> random_cloud(Rng& rng, Index d, int n) {
  std::vector<Vector> pts;
  for (int i = 0; i < n; ++i) pts.push_back(rng.gaussian(d));
  return pts;
}

}  // namespace convexkit::oracles
