#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <vector>

#include "l22embed/point_set.hpp"

namespace l22 {

// Spectrum of the pair-difference matrix (columns x_i - x_j over ordered
// pairs) and the subspace it selects. r is the smallest projector rank whose
// captured squared-energy fraction reaches eta.
struct SubspaceReport {
  int r = 0;
  double eta = 0.0;
  double captured = 0.0;
  Eigen::MatrixXd basis;   // d x r, orthonormal columns
  Eigen::VectorXd sigma;   // min(n, d) singular values, descending
};

namespace detail {

// Centered data matrix and its SVD. The pair-difference energy identity
//   sum_{i,j} |P (x_i - x_j)|^2 = 2n sum_i |P (x_i - xbar)|^2
// lets us read the pair spectrum off the centered matrix scaled by
// sqrt(2n), instead of forming all n^2 difference columns.
inline Eigen::JacobiSVD<Eigen::MatrixXd> centered_svd(const PointSet& ps) {
  Eigen::MatrixXd c = ps.coords.rowwise() - ps.coords.colwise().mean();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

}  // namespace detail

inline Eigen::VectorXd singular_spectrum(const PointSet& ps) {
  validate(ps);
  const auto svd = detail::centered_svd(ps);
  return std::sqrt(2.0 * ps.n) * svd.singularValues();
}

inline SubspaceReport ssr(const PointSet& ps, double eta) {
  validate(ps);
  require(eta > 0.0 && eta <= 1.0, "InvalidInput", "eta must be in (0, 1]");
  const auto svd = detail::centered_svd(ps);
  Eigen::VectorXd sigma = std::sqrt(2.0 * ps.n) * svd.singularValues();
  const int m = static_cast<int>(sigma.size());

  // Values below 1e-12 of the top one are numerical zeros; they must not
  // inflate the rank when eta asks for everything.
  Eigen::VectorXd sq(m);
  const double floor_sv = m > 0 ? 1e-12 * sigma[0] : 0.0;
  for (int t = 0; t < m; ++t) sq[t] = sigma[t] <= floor_sv ? 0.0 : sigma[t] * sigma[t];
  const double total = sq.sum();
  require(total > 0.0, "ZeroSpread", "all points coincide; spectrum is zero");

  SubspaceReport rep;
  rep.eta = eta;
  double cum = 0.0;
  int r = m;
  for (int t = 0; t < m; ++t) {
    cum += sq[t];
    if (cum / total >= eta - 1e-12) {  // ties resolve toward smaller r
      r = t + 1;
      rep.captured = cum / total;
      break;
    }
  }
  rep.r = r;
  if (rep.captured == 0.0) rep.captured = 1.0;
  rep.basis = svd.matrixV().leftCols(r);
  rep.sigma = std::move(sigma);
  return rep;
}

// Squared distances between rank-r projections. df <= dist entrywise.
struct ProjectedDistances {
  int n = 0;
  Eigen::MatrixXd df;
};

inline ProjectedDistances project(const PointSet& ps, const SubspaceReport& rep) {
  validate(ps);
  require(rep.basis.rows() == ps.d, "InvalidInput", "basis dimension does not match points");
  PointSet proj{ps.n, static_cast<int>(rep.basis.cols()),
                ps.coords * rep.basis};
  DistanceMatrix dm = distances(proj);
  return ProjectedDistances{ps.n, std::move(dm.dist)};
}

inline double diam_of(const ProjectedDistances& pd, const std::vector<int>& s) {
  double diam = 0.0;
  for (size_t a = 0; a < s.size(); ++a)
    for (size_t b = a + 1; b < s.size(); ++b)
      diam = std::max(diam, pd.df(s[a], s[b]));
  return diam;
}

}  // namespace l22
