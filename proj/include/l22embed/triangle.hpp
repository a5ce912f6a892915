#pragma once

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "l22embed/point_set.hpp"

namespace l22 {

// One violated triangle inequality: dist(i,k) exceeds dist(i,j) + dist(j,k)
// by slack. Each inequality is reported once, with i < k.
struct Violation {
  int i, j, k;
  double slack;
};

struct TriangleReport {
  bool exact_valid = true;
  std::vector<Violation> violating_triples;
  double beta = 1.0;
};

namespace detail {

inline int env_threads() {
  const char* s = std::getenv("L22_THREADS");
  if (!s || !*s) return 1;
  const long v = std::strtol(s, nullptr, 10);
  if (v <= 0) return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<long>(v, 256));
}

}  // namespace detail

// Shortest path distance from every source in the complete graph weighted by
// dist. Path costs accumulate left to right from the source, which keeps the
// values reproducible against direct path enumeration.
inline Eigen::MatrixXd all_pairs_shortest(const DistanceMatrix& dm) {
  const int n = dm.n;
  Eigen::MatrixXd sp(n, n);
  std::vector<char> done(n);
  for (int s = 0; s < n; ++s) {
    std::fill(done.begin(), done.end(), 0);
    Eigen::VectorXd dist = dm.dist.row(s);
    dist[s] = 0.0;
    for (int it = 0; it < n; ++it) {
      int u = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int v = 0; v < n; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      if (u < 0) break;
      done[u] = 1;
      for (int v = 0; v < n; ++v)
        if (!done[v]) dist[v] = std::min(dist[v], dist[u] + dm.dist(u, v));
    }
    sp.row(s) = dist;
  }
  return sp;
}

// Worst multiplicative shortcut: min over pairs of (shortest path / direct).
// 1 means every triangle inequality holds; an all-zero matrix is 1 by
// convention.
inline double approx_beta(const DistanceMatrix& dm) {
  const int n = dm.n;
  if (n < 2) return 1.0;
  bool any_positive = false;
  for (int i = 0; i < n && !any_positive; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dm.dist(i, j) > 0.0) {
        any_positive = true;
        break;
      }
  if (!any_positive) return 1.0;  // degenerate all-zero semimetric
  const Eigen::MatrixXd sp = all_pairs_shortest(dm);
  double beta = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dm.dist(i, j) > 0.0) beta = std::min(beta, sp(i, j) / dm.dist(i, j));
  return beta;
}

// Scans every triangle inequality on squared distances. A triple (i, j, k)
// violates when dist(i,j) + dist(j,k) < dist(i,k) beyond an absolute slack of
// 1e-9 * max dist. beta is filled from approx_beta so the report is complete.
inline TriangleReport check_l22(const DistanceMatrix& dm) {
  const int n = dm.n;
  TriangleReport rep;
  const double maxd = n > 0 ? dm.dist.maxCoeff() : 0.0;
  const double tol = 1e-9 * maxd;

  const int want = detail::env_threads();
  const int nthreads = std::max(1, std::min(want, n));
  std::vector<std::vector<Violation>> found(static_cast<size_t>(nthreads));

  auto scan = [&](int t) {
    auto& out = found[static_cast<size_t>(t)];
    for (int i = t; i < n; i += nthreads) {
      for (int k = i + 1; k < n; ++k) {
        const double dik = dm.dist(i, k);
        for (int j = 0; j < n; ++j) {
          if (j == i || j == k) continue;
          const double slack = dik - dm.dist(i, j) - dm.dist(j, k);
          if (slack > tol) out.push_back({i, j, k, slack});
        }
      }
    }
  };

  if (nthreads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(scan, t);
    for (auto& th : pool) th.join();
  }

  for (auto& part : found)
    rep.violating_triples.insert(rep.violating_triples.end(), part.begin(), part.end());
  std::sort(rep.violating_triples.begin(), rep.violating_triples.end(),
            [](const Violation& a, const Violation& b) {
              if (a.i != b.i) return a.i < b.i;
              if (a.k != b.k) return a.k < b.k;
              return a.j < b.j;
            });
  rep.exact_valid = rep.violating_triples.empty();
  rep.beta = rep.exact_valid ? 1.0 : approx_beta(dm);
  return rep;
}

}  // namespace l22
