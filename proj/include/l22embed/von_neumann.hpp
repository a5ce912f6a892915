#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "l22embed/error.hpp"
#include "l22embed/graph.hpp"
#include "l22embed/sdp.hpp"
#include "l22embed/subspace.hpp"

namespace l22 {

struct VnReport {
  int r = 1;
  double lhs = 0.0;   // tail fraction of the pair-difference spectrum from index r
  double rhs = 0.0;   // objective over lambda_r / n
  bool holds = true;  // lhs <= rhs + 1e-6
};

// Tail singular-value mass of the solution's pair-difference matrix against
// the relaxation value scaled by the r-th normalized Laplacian eigenvalue.
// lambda_1 = 0 makes the bound vacuous at r = 1, reported as rhs = +inf.
inline VnReport von_neumann_check(const SdpSolution& sdp, const Graph& g, int r) {
  require(r >= 1 && r <= g.n, "InvalidInput", "rank out of range");
  require(sdp.points.n == g.n, "InvalidInput", "solution and graph sizes differ");

  VnReport rep;
  rep.r = r;

  const Eigen::VectorXd sigma = singular_spectrum(sdp.points);
  const Eigen::VectorXd energy = sigma.array().square();
  const double total = energy.sum();
  double tail = 0.0;
  for (int t = r - 1; t < energy.size(); ++t) tail += energy(t);
  rep.lhs = total > 0.0 ? tail / total : 0.0;

  const Spectrum spec = laplacian_spectrum(g);
  const double lam = spec.eigenvalues(r - 1);
  rep.rhs = lam > 1e-12 ? sdp.objective / (lam / g.n)
                        : std::numeric_limits<double>::infinity();
  rep.holds = rep.lhs <= rep.rhs + 1e-6;
  return rep;
}

}  // namespace l22
