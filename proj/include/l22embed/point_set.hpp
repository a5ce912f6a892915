#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "l22embed/error.hpp"

namespace l22 {

// n points in R^d, one per row.
struct PointSet {
  int n = 0;
  int d = 0;
  Eigen::MatrixXd coords;  // n x d
};

inline void validate(const PointSet& ps) {
  require(ps.n >= 1 && ps.d >= 1, "InvalidInput", "point set needs n >= 1 and d >= 1");
  require(ps.coords.rows() == ps.n && ps.coords.cols() == ps.d, "InvalidInput",
          "coordinate matrix shape does not match (n, d)");
  require(ps.coords.allFinite(), "InvalidInput", "coordinates must be finite");
}

// Squared euclidean distances. spread is the all-pairs mean (1/n^2) sum dist,
// counting ordered pairs and the zero diagonal.
struct DistanceMatrix {
  int n = 0;
  Eigen::MatrixXd dist;
  double spread = 0.0;
};

inline DistanceMatrix distances(const PointSet& ps) {
  validate(ps);
  const int n = ps.n;
  DistanceMatrix dm;
  dm.n = n;
  dm.dist.resize(n, n);
  const Eigen::VectorXd sq = ps.coords.rowwise().squaredNorm();
  dm.dist.noalias() = -2.0 * ps.coords * ps.coords.transpose();
  dm.dist.colwise() += sq;
  dm.dist.rowwise() += sq.transpose();
  // Clean up the rounding the expansion leaves behind: exact zeros on the
  // diagonal, symmetry, no negative entries.
  for (int i = 0; i < n; ++i) {
    dm.dist(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (dm.dist(i, j) + dm.dist(j, i));
      if (v < 0.0) v = 0.0;
      dm.dist(i, j) = dm.dist(j, i) = v;
    }
  }
  dm.spread = dm.dist.sum() / (static_cast<double>(n) * n);
  return dm;
}

// Wraps an externally supplied squared-distance (or general semimetric)
// matrix. Needed for distances induced by a Gram matrix and for inputs that
// are not generated by any point set.
inline DistanceMatrix distance_matrix_from(Eigen::MatrixXd m) {
  const int n = static_cast<int>(m.rows());
  require(n >= 1 && m.cols() == n, "InvalidInput", "distance matrix must be square");
  require(m.allFinite(), "InvalidInput", "distances must be finite");
  for (int i = 0; i < n; ++i) {
    require(m(i, i) == 0.0, "InvalidInput", "distance matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      require(m(i, j) >= 0.0 && m(j, i) >= 0.0, "InvalidInput", "distances must be nonnegative");
      require(std::abs(m(i, j) - m(j, i)) <= 1e-12 * std::max(1.0, std::abs(m(i, j))),
              "InvalidInput", "distance matrix must be symmetric");
      m(j, i) = m(i, j);
    }
  }
  DistanceMatrix dm;
  dm.n = n;
  dm.dist = std::move(m);
  dm.spread = dm.dist.sum() / (static_cast<double>(n) * n);
  return dm;
}

// Indices j with dist(center, j) <= radius, ascending. Contains center.
inline std::vector<int> ball(const DistanceMatrix& dm, int center, double radius) {
  std::vector<int> out;
  for (int j = 0; j < dm.n; ++j)
    if (dm.dist(center, j) <= radius) out.push_back(j);
  return out;
}

// Rescales coordinates so the all-pairs mean squared distance becomes 1.
// Returns the scaled set and the applied coordinate factor (distances shrink
// by its square). Two points at squared distance 2 are already normalized.
inline std::pair<PointSet, double> normalize(const PointSet& ps) {
  DistanceMatrix dm = distances(ps);
  require(dm.spread > 0.0, "ZeroSpread", "all points coincide; spread is zero");
  const double scale = 1.0 / std::sqrt(dm.spread);
  PointSet out = ps;
  out.coords *= scale;
  return {std::move(out), scale};
}

}  // namespace l22
