#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "l22embed/point_set.hpp"
#include "l22embed/rng.hpp"
#include "l22embed/triangle.hpp"

namespace l22 {

// Deterministic fixture generators. Kinds:
//   hypercube         all 2^dim vertices of {0,1}^dim
//   hypercube-subset  count distinct vertices, sampled by seed
//   scaled-hypercube  hypercube times scale
//   simplex           count standard basis vectors (pairwise distance 2)
//   planted-low-rank  count points random on {0,1}^rank, embedded in dim
//                     coordinates with gaussian noise of size `noise` in the
//                     remaining directions; rejected while the measured beta
//                     stays below beta_floor
// copies > 1 post-processes any kind through duplicate_endpoints.
struct FixtureSpec {
  std::string kind = "hypercube";
  int dim = 3;
  int count = 0;
  int rank = 0;
  double scale = 1.0;
  double noise = 0.0;
  double beta_floor = 0.0;
  int copies = 1;
  std::uint64_t seed = 0;
  int max_retries = 64;
};

namespace detail {

inline PointSet hypercube_vertices(int dim, double scale) {
  require(dim >= 1 && dim <= 20, "InvalidInput", "hypercube dim must be in [1, 20]");
  const int n = 1 << dim;
  PointSet ps{n, dim, Eigen::MatrixXd(n, dim)};
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dim; ++b) ps.coords(v, b) = ((v >> b) & 1) ? scale : 0.0;
  return ps;
}

}  // namespace detail

// Appends copies-1 duplicates of each endpoint of a maximally distant pair
// (first such pair in lexicographic scan order). copies = 1 returns the
// input unchanged; the output has n + 2*(copies-1) points.
inline PointSet duplicate_endpoints(const PointSet& ps, int copies) {
  validate(ps);
  require(copies >= 1, "InvalidInput", "copies must be >= 1");
  if (copies == 1) return ps;
  require(ps.n >= 2, "InvalidInput", "need at least two points to pick endpoints");
  const DistanceMatrix dm = distances(ps);
  int bi = 0, bj = 1;
  double best = dm.dist(0, 1);
  for (int i = 0; i < ps.n; ++i)
    for (int j = i + 1; j < ps.n; ++j)
      if (dm.dist(i, j) > best) {
        best = dm.dist(i, j);
        bi = i;
        bj = j;
      }
  const int extra = copies - 1;
  PointSet out{ps.n + 2 * extra, ps.d, Eigen::MatrixXd(ps.n + 2 * extra, ps.d)};
  out.coords.topRows(ps.n) = ps.coords;
  for (int c = 0; c < extra; ++c) {
    out.coords.row(ps.n + 2 * c) = ps.coords.row(bi);
    out.coords.row(ps.n + 2 * c + 1) = ps.coords.row(bj);
  }
  return out;
}

inline PointSet generate(const FixtureSpec& spec, double* measured_beta = nullptr) {
  require(spec.copies >= 1, "InvalidInput", "copies must be >= 1");
  PointSet ps;
  double beta = 1.0;

  if (spec.kind == "hypercube") {
    ps = detail::hypercube_vertices(spec.dim, 1.0);
  } else if (spec.kind == "scaled-hypercube") {
    require(spec.scale > 0.0, "InvalidInput", "scale must be positive");
    ps = detail::hypercube_vertices(spec.dim, spec.scale);
  } else if (spec.kind == "hypercube-subset") {
    require(spec.dim >= 1 && spec.dim <= 20, "InvalidInput", "dim must be in [1, 20]");
    const std::int64_t total = std::int64_t{1} << spec.dim;
    require(spec.count >= 1 && spec.count <= total, "InvalidInput",
            "count must be in [1, 2^dim]");
    Rng rng(spec.seed);
    std::unordered_set<std::uint64_t> picked;
    std::vector<std::uint64_t> order;
    while (static_cast<int>(order.size()) < spec.count) {
      const std::uint64_t v = rng.uniform_below(static_cast<std::uint64_t>(total));
      if (picked.insert(v).second) order.push_back(v);
    }
    ps = PointSet{spec.count, spec.dim, Eigen::MatrixXd(spec.count, spec.dim)};
    for (int i = 0; i < spec.count; ++i)
      for (int b = 0; b < spec.dim; ++b) ps.coords(i, b) = (order[i] >> b) & 1 ? 1.0 : 0.0;
  } else if (spec.kind == "simplex") {
    require(spec.count >= 1, "InvalidInput", "simplex needs count >= 1");
    ps = PointSet{spec.count, spec.count, Eigen::MatrixXd::Identity(spec.count, spec.count)};
  } else if (spec.kind == "planted-low-rank") {
    require(spec.rank >= 1 && spec.rank <= 20, "InvalidInput", "rank must be in [1, 20]");
    require(spec.dim >= spec.rank, "InvalidInput", "dim must be >= rank");
    require(spec.count >= 2, "InvalidInput", "planted-low-rank needs count >= 2");
    bool accepted = false;
    for (int attempt = 0; attempt < spec.max_retries && !accepted; ++attempt) {
      Rng rng = Rng(spec.seed).substream(static_cast<std::uint64_t>(attempt));
      ps = PointSet{spec.count, spec.dim, Eigen::MatrixXd::Zero(spec.count, spec.dim)};
      for (int i = 0; i < spec.count; ++i) {
        const std::uint64_t v = rng.uniform_below(std::uint64_t{1} << spec.rank);
        for (int b = 0; b < spec.rank; ++b) ps.coords(i, b) = (v >> b) & 1 ? 1.0 : 0.0;
        for (int b = spec.rank; b < spec.dim; ++b) ps.coords(i, b) = spec.noise * rng.normal();
      }
      beta = approx_beta(distances(ps));
      accepted = beta >= spec.beta_floor;
    }
    require(accepted, "FixtureInfeasible",
            "no planted-low-rank draw reached beta_floor within max_retries");
  } else {
    fail("InvalidInput", "unknown fixture kind '" + spec.kind + "'");
  }

  if (spec.copies > 1) {
    ps = duplicate_endpoints(ps, spec.copies);
    if (spec.beta_floor > 0.0 || spec.kind == "planted-low-rank")
      beta = approx_beta(distances(ps));
  }
  if (measured_beta) *measured_beta = beta;
  return ps;
}

}  // namespace l22
