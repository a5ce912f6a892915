#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "l22embed/error.hpp"
#include "l22embed/graph.hpp"
#include "l22embed/point_set.hpp"

namespace l22 {

struct SdpOptions {
  double tol = 1e-6;    // duality gap target and feasibility tolerance
  int max_iter = 5000;  // total Newton step budget
  double mu = 5.0;      // barrier parameter growth per outer round
};

struct SdpSolution {
  Eigen::MatrixXd gram;      // centered positive-semidefinite Gram matrix
  Eigen::MatrixXd dist;      // induced squared distances
  PointSet points;           // Gram factorization, principal columns first
  double objective = 0.0;    // (1/n^2) sum_{i != j} w_ij dist_ij
  double residual_triangle = 0.0;  // worst triangle violation, >= 0
  double residual_spread = 0.0;    // |sum dist - n^2|
  double gram_min_eig = 0.0;
  double duality_gap = 0.0;  // certified bound on objective minus optimum
  bool converged = false;
  int iterations = 0;
};

namespace detail {

// Symmetric matrices are handled as vectors over an upper-triangle basis
// scaled so that the dot product matches the Frobenius inner product.
struct SymBasis {
  int n = 0;
  int size = 0;
  Eigen::MatrixXi index;  // (i, j) -> coordinate

  explicit SymBasis(int n_) : n(n_), size(n_ * (n_ + 1) / 2), index(n_, n_) {
    int p = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i) {
        index(i, j) = p;
        index(j, i) = p;
        ++p;
      }
  }

  Eigen::VectorXd pack(const Eigen::MatrixXd& m) const {
    static const double kRt2 = std::sqrt(2.0);
    Eigen::VectorXd v(size);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i) v(index(i, j)) = (i == j) ? m(i, j) : kRt2 * m(i, j);
    return v;
  }

  Eigen::MatrixXd unpack(const Eigen::VectorXd& v) const {
    static const double kRt2 = std::sqrt(2.0);
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i) {
        const double x = (i == j) ? v(index(i, j)) : v(index(i, j)) / kRt2;
        m(i, j) = x;
        m(j, i) = x;
      }
    return m;
  }
};

// One triangle inequality d_ij + d_jk >= d_ik written on the Gram matrix:
// slack(B) = B_jj - B_ij - B_jk + B_ik >= 0, for i < k and middle j.
struct TriangleRow {
  int i, j, k;
  int pjj, pij, pjk, pik;  // packed coordinates
};

inline std::vector<TriangleRow> triangle_rows(int n, const SymBasis& basis) {
  std::vector<TriangleRow> rows;
  if (n < 3) return rows;
  rows.reserve(static_cast<size_t>(n) * (n - 1) * (n - 2) / 2);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        rows.push_back({i, j, k, basis.index(j, j), basis.index(i, j),
                        basis.index(j, k), basis.index(i, k)});
      }
  return rows;
}

inline double triangle_slack(const Eigen::MatrixXd& b, const TriangleRow& t) {
  return b(t.j, t.j) - b(t.i, t.j) - b(t.j, t.k) + b(t.i, t.k);
}

// Packed coefficient vector of a triangle row: the off-diagonal entries of
// the constraint matrix carry 1/2 each, which the sqrt(2) basis scaling
// turns into 1/sqrt(2).
inline void add_triangle(Eigen::VectorXd& v, const TriangleRow& t, double c) {
  static const double kInvRt2 = 1.0 / std::sqrt(2.0);
  v(t.pjj) += c;
  v(t.pij) -= c * kInvRt2;
  v(t.pjk) -= c * kInvRt2;
  v(t.pik) += c * kInvRt2;
}

inline double triangle_dot(const Eigen::VectorXd& v, const TriangleRow& t) {
  static const double kInvRt2 = 1.0 / std::sqrt(2.0);
  return v(t.pjj) - kInvRt2 * (v(t.pij) + v(t.pjk) - v(t.pik));
}

}  // namespace detail

// Solves the sparsest-cut relaxation
//   minimize (1/n^2) sum_{ij} w_ij d_ij
//   s.t. d_ij + d_jk >= d_ik, sum_{ij} d_ij = n^2, d of negative type
// over centered Gram matrices B (d_ij = B_ii + B_jj - 2 B_ij, B 1 = 0,
// tr B = n/2) with a primal barrier method. Newton centering runs on the
// packed symmetric coordinates with the two affine families (row sums,
// trace) kept as explicit equality constraints; the barrier covers the
// semidefinite cone through log det(B + 11^T/n) and every triangle through
// log slack. Iterates stay strictly feasible throughout, so the returned
// solution is feasible to machine precision and its objective exceeds the
// true optimum by at most the reported duality gap.
inline SdpSolution solve_gl_sdp(const Graph& g, const SdpOptions& opt = {}) {
  const int n = g.n;
  require(n >= 2, "InvalidInput", "the relaxation needs at least two vertices");
  require(n <= 32, "TooLarge", "the solver is capped at 32 vertices");
  require(opt.tol > 0.0 && opt.mu > 1.0 && opt.max_iter >= 1, "InvalidInput",
          "bad solver options");

  const detail::SymBasis basis(n);
  const int nv = basis.size;
  const std::vector<detail::TriangleRow> tris = triangle_rows(n, basis);
  const auto nt = static_cast<int>(tris.size());

  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd jmat = Eigen::MatrixXd::Identity(n, n) - ones;
  const Eigen::MatrixXd lap_w =
      Eigen::MatrixXd(g.degrees.asDiagonal()) - g.weights;
  const Eigen::VectorXd cvec = basis.pack((2.0 / (n * n)) * lap_w);

  // Equality rows: each row sum of B is zero, the trace is n/2.
  const int ne = n + 1;
  Eigen::MatrixXd aeq = Eigen::MatrixXd::Zero(ne, nv);
  Eigen::VectorXd beq = Eigen::VectorXd::Zero(ne);
  {
    static const double kInvRt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        aeq(i, basis.index(i, j)) += (i == j) ? 1.0 : kInvRt2;
    for (int i = 0; i < n; ++i) aeq(n, basis.index(i, i)) = 1.0;
    beq(n) = n / 2.0;
  }

  // Strictly feasible start: every triangle slack equals n/(2(n-1)) here.
  Eigen::MatrixXd b = (n / (2.0 * (n - 1))) * jmat;

  const double nu = n + nt;  // total barrier parameter
  const double obj0 = cvec.dot(basis.pack(b));
  const double gap_target = opt.tol * std::max(1.0, std::abs(obj0));

  const auto slack_of = [&](const Eigen::MatrixXd& m, std::vector<double>& s) {
    s.resize(static_cast<size_t>(nt));
    double mn = std::numeric_limits<double>::infinity();
    for (int t = 0; t < nt; ++t) {
      s[static_cast<size_t>(t)] = detail::triangle_slack(m, tris[static_cast<size_t>(t)]);
      mn = std::min(mn, s[static_cast<size_t>(t)]);
    }
    return mn;
  };

  // Barrier potential t*objective - log det(B + 11^T/n) - sum log slack;
  // +inf outside the strictly feasible region.
  const auto potential = [&](const Eigen::MatrixXd& m, double t) {
    std::vector<double> s;
    if (slack_of(m, s) <= 0.0) return std::numeric_limits<double>::infinity();
    Eigen::LLT<Eigen::MatrixXd> llt(m + ones);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double val = t * cvec.dot(basis.pack(m));
    val -= 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    for (double sv : s) val -= std::log(sv);
    return val;
  };

  double t = 1.0;
  int newton_total = 0;
  bool budget_ok = true;
  std::vector<double> slack;

  while (true) {
    for (int step = 0; step < 50; ++step) {
      if (newton_total >= opt.max_iter) {
        budget_ok = false;
        break;
      }
      ++newton_total;

      Eigen::LLT<Eigen::MatrixXd> llt(b + ones);
      if (llt.info() != Eigen::Success) {
        // Roundoff at an extreme barrier weight; stop with the last good
        // iterate rather than fail, the gap certificate reports the truth.
        budget_ok = false;
        break;
      }
      const Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));
      slack_of(b, slack);

      Eigen::VectorXd grad = t * cvec - basis.pack(ginv);
      for (int q = 0; q < nt; ++q)
        detail::add_triangle(grad, tris[static_cast<size_t>(q)],
                             -1.0 / slack[static_cast<size_t>(q)]);

      Eigen::MatrixXd hess(nv, nv);
      static const double kRt2 = std::sqrt(2.0);
      for (int pj = 0, p = 0; pj < n; ++pj)
        for (int pi = 0; pi <= pj; ++pi, ++p) {
          const double wp = (pi == pj) ? 1.0 : kRt2;
          for (int qj = 0, q = 0; qj < n; ++qj)
            for (int qi = 0; qi <= qj && q <= p; ++qi, ++q) {
              const double wq = (qi == qj) ? 1.0 : kRt2;
              const double v = 0.5 * wp * wq *
                               (ginv(pi, qi) * ginv(pj, qj) + ginv(pi, qj) * ginv(pj, qi));
              hess(p, q) = v;
              hess(q, p) = v;
            }
        }
      {
        // Each triangle adds a rank-one term touching four coordinates,
        // whose packed indices never collide within one row.
        static const double kInvRt2 = 1.0 / std::sqrt(2.0);
        const double co[4] = {1.0, -kInvRt2, -kInvRt2, kInvRt2};
        for (int q = 0; q < nt; ++q) {
          const auto& tq = tris[static_cast<size_t>(q)];
          const double sq = slack[static_cast<size_t>(q)];
          const double inv2 = 1.0 / (sq * sq);
          const int idx[4] = {tq.pjj, tq.pij, tq.pjk, tq.pik};
          for (int x = 0; x < 4; ++x)
            for (int y = 0; y < 4; ++y) hess(idx[x], idx[y]) += inv2 * co[x] * co[y];
        }
      }

      const Eigen::LDLT<Eigen::MatrixXd> hldlt(hess);
      const Eigen::VectorXd hig = hldlt.solve(grad);
      const Eigen::MatrixXd hia = hldlt.solve(aeq.transpose());
      const Eigen::VectorXd req = beq - aeq * basis.pack(b);
      const Eigen::MatrixXd ymat = aeq * hia;
      const Eigen::VectorXd y = ymat.ldlt().solve(-(aeq * hig) - req);
      const Eigen::VectorXd dx = -hig - hia * y;

      const double decrement = dx.dot(hess * dx);
      if (decrement <= 2e-10) break;

      // Longest feasible step against the triangle slacks, then backtrack.
      double alpha = 1.0;
      for (int q = 0; q < nt; ++q) {
        const double dd = detail::triangle_dot(dx, tris[static_cast<size_t>(q)]);
        if (dd < 0.0) alpha = std::min(alpha, -0.99 * slack[static_cast<size_t>(q)] / dd);
      }
      const Eigen::MatrixXd db = basis.unpack(dx);
      const double base = potential(b, t);
      const double slope = grad.dot(dx);
      bool moved = false;
      for (int h = 0; h < 60; ++h) {
        const Eigen::MatrixXd trial = b + alpha * db;
        if (potential(trial, t) <= base + 0.25 * alpha * slope) {
          b = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (!budget_ok || nu / t <= gap_target) break;
    t *= opt.mu;
  }

  // Snap the affine part exactly; the correction is at roundoff scale and
  // cannot push a strictly interior iterate out of the cone.
  b = jmat * b * jmat;
  b += ((n / 2.0 - b.trace()) / (n - 1)) * jmat;
  b = 0.5 * (b + b.transpose());

  SdpSolution sol;
  sol.gram = b;
  sol.duality_gap = nu / t;
  sol.converged = budget_ok && (nu / t <= gap_target);
  sol.iterations = newton_total;

  sol.dist.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sol.dist(i, j) = (i == j) ? 0.0 : b(i, i) + b(j, j) - 2.0 * b(i, j);
  sol.dist = 0.5 * (sol.dist + sol.dist.transpose()).eval();

  sol.objective = (g.weights.array() * sol.dist.array()).sum() / (static_cast<double>(n) * n);
  sol.residual_spread = std::abs(sol.dist.sum() - static_cast<double>(n) * n);
  double worst = 0.0;
  for (const auto& tr : tris) worst = std::max(worst, -detail::triangle_slack(b, tr));
  sol.residual_triangle = worst;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  require(es.info() == Eigen::Success, "SpectralFailure",
          "Gram eigendecomposition did not converge");
  sol.gram_min_eig = es.eigenvalues().minCoeff();
  int kept = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-10) ++kept;
  require(kept >= 1, "SpectralFailure", "Gram matrix collapsed to zero");
  Eigen::MatrixXd coords(n, kept);
  for (int c = 0; c < kept; ++c) {
    const int src = n - 1 - c;  // descending eigenvalue order
    coords.col(c) = es.eigenvectors().col(src) * std::sqrt(es.eigenvalues()(src));
  }
  sol.points = PointSet{n, kept, std::move(coords)};
  return sol;
}

}  // namespace l22
