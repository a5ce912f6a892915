#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <vector>

#include "l22embed/point_set.hpp"
#include "l22embed/subspace.hpp"

namespace l22 {

enum class Branch { dense_ball, proj_good, proj_bad, zero_spread, direct };
enum class DistanceKind { d, d_f };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::dense_ball: return "dense-ball";
    case Branch::proj_good: return "proj-good";
    case Branch::proj_bad: return "proj-bad";
    case Branch::zero_spread: return "zero-spread";
    case Branch::direct: return "direct";
  }
  return "?";
}

// One line of an l1 embedding: h(i) = distance from i to the witness set.
// Under a valid squared-euclidean metric the map is contractive; under d_f
// it is a certificate object (d_f is not itself a metric).
struct LineEmbedding {
  Eigen::VectorXd values;
  std::vector<int> witness;
  Branch branch = Branch::direct;
  DistanceKind distance_kind = DistanceKind::d;
};

namespace detail {

inline Eigen::VectorXd min_to_set(const Eigen::MatrixXd& dist, const std::vector<int>& s) {
  const int n = static_cast<int>(dist.rows());
  Eigen::VectorXd h(n);
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j : s) best = std::min(best, dist(i, j));
    h[i] = best;
  }
  return h;
}

inline void check_witness(int n, const std::vector<int>& s) {
  require(!s.empty(), "InvalidInput", "witness set must be nonempty");
  for (int j : s) require(j >= 0 && j < n, "InvalidInput", "witness index out of range");
}

}  // namespace detail

inline LineEmbedding frechet_line(const DistanceMatrix& dm, std::vector<int> s) {
  detail::check_witness(dm.n, s);
  std::sort(s.begin(), s.end());
  LineEmbedding e;
  e.values = detail::min_to_set(dm.dist, s);
  e.witness = std::move(s);
  e.branch = Branch::direct;
  e.distance_kind = DistanceKind::d;
  return e;
}

inline LineEmbedding frechet_line(const ProjectedDistances& pd, std::vector<int> s) {
  detail::check_witness(pd.n, s);
  std::sort(s.begin(), s.end());
  LineEmbedding e;
  e.values = detail::min_to_set(pd.df, s);
  e.witness = std::move(s);
  e.branch = Branch::direct;
  e.distance_kind = DistanceKind::d_f;
  return e;
}

// c such that |S| * sum_{i not in S} d(i, S) = c * n^2. A set with c > 0
// certifies average distortion at most 1/c for its Frechet line.
inline double sufficient_condition_value(const DistanceMatrix& dm, const std::vector<int>& s) {
  detail::check_witness(dm.n, s);
  const Eigen::VectorXd h = detail::min_to_set(dm.dist, s);
  return static_cast<double>(s.size()) * h.sum() /
         (static_cast<double>(dm.n) * static_cast<double>(dm.n));
}

struct DistortionReport {
  double avg_ratio = 1.0;
  double worst_ratio = 1.0;
  long contraction_violations = 0;
  bool degenerate = false;
};

// Compares the line embedding against the metric it is supposed to embed.
// avg_ratio = sum dist / sum |h_i - h_j|; a zero image of a nonzero metric
// reports +inf rather than throwing. Pairs at distance zero must map to the
// same value; anything else counts as a contraction violation.
inline DistortionReport distortion(const DistanceMatrix& dm, const LineEmbedding& e) {
  const int n = dm.n;
  require(e.values.size() == n, "InvalidInput", "embedding size does not match matrix");
  const double inf = std::numeric_limits<double>::infinity();
  const double maxd = dm.dist.maxCoeff();
  const double tol = 1e-9 * std::max(1.0, maxd);

  DistortionReport rep;
  double num = 0.0, den = 0.0, worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dm.dist(i, j);
      const double dh = std::abs(e.values[i] - e.values[j]);
      num += d;
      den += dh;
      if (d == 0.0) {
        if (dh > 0.0) ++rep.contraction_violations;
      } else {
        if (dh > d + tol) ++rep.contraction_violations;
        worst = std::max(worst, dh > 0.0 ? d / dh : inf);
      }
    }
  }
  rep.avg_ratio = den > 0.0 ? num / den : (num > 0.0 ? inf : 1.0);
  rep.worst_ratio = num > 0.0 ? worst : 1.0;
  rep.degenerate = maxd == 0.0;
  return rep;
}

}  // namespace l22
