#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "l22embed/frechet.hpp"
#include "l22embed/point_set.hpp"
#include "l22embed/rng.hpp"
#include "l22embed/subspace.hpp"

namespace l22 {

// Random-direction search for two well separated, linear-size subsets.
// target_fraction <= 0 means derive it as min(eta * spread / 32, 1/8).
struct SearchConfig {
  int max_directions = 32;
  double delta_init = 0.25;
  double delta_decay = 0.5;
  int levels = 8;
  double target_fraction = 0.0;
  std::uint64_t seed = 0;
};

struct SeparatedPair {
  std::vector<int> left;
  std::vector<int> right;
  double delta = 0.0;            // exact min squared distance across the pair
  double fraction = 0.0;         // min(|L|, |R|) / n
  double target_fraction = 0.0;  // acceptance threshold actually used
  Eigen::VectorXd direction;     // unit vector the projections used
  int attempts = 0;
};

namespace detail {

struct SeparationSearch {
  std::optional<SeparatedPair> pair;
  std::vector<std::vector<int>> rejected_tails;  // candidate fallback sets
  int attempts = 0;
  double target_fraction = 0.0;
};

// One level-and-direction sweep. Projects onto a random unit direction in
// the basis column space, takes the two 2*beta quantile tails, then deletes
// the closest crossing pair while any pair sits below delta. Deleting a
// matched pair per step keeps both tails the same size.
inline SeparationSearch search_separated(const PointSet& ps, const SubspaceReport& rep,
                                         const SearchConfig& cfg) {
  validate(ps);
  const int n = ps.n;
  const int r = std::max(1, rep.r);
  require(rep.basis.rows() == ps.d && rep.basis.cols() >= 1, "InvalidInput",
          "subspace basis does not match points");

  const DistanceMatrix dm = distances(ps);
  double beta = cfg.target_fraction > 0.0
                    ? cfg.target_fraction
                    : std::min(rep.eta * dm.spread / 32.0, 0.125);
  beta = std::clamp(beta, 1e-9, 0.45);

  SeparationSearch out;
  out.target_fraction = beta;
  const int m = std::clamp(static_cast<int>(std::floor(2.0 * beta * n)), 1, n / 2);
  if (n < 2) return out;

  Rng root(cfg.seed);
  std::vector<int> order(n);

  for (int level = 0; level < cfg.levels; ++level) {
    const double delta = cfg.delta_init * std::pow(cfg.delta_decay, level) / std::sqrt(double(r));
    for (int t = 0; t < cfg.max_directions; ++t) {
      const int attempt = level * cfg.max_directions + t;
      ++out.attempts;
      Rng rng = root.substream(static_cast<std::uint64_t>(attempt));

      Eigen::VectorXd u;
      do {
        u = rep.basis * rng.gaussian(static_cast<int>(rep.basis.cols()));
      } while (u.norm() < 1e-12);
      u.normalize();

      const Eigen::VectorXd v = ps.coords * u;
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
      });
      std::vector<int> left(order.begin(), order.begin() + m);
      std::vector<int> right(order.end() - m, order.end());

      // Greedy matching deletion, closest violating pair first.
      while (!left.empty() && !right.empty()) {
        double best = std::numeric_limits<double>::infinity();
        size_t bi = 0, bj = 0;
        for (size_t a = 0; a < left.size(); ++a)
          for (size_t b = 0; b < right.size(); ++b)
            if (dm.dist(left[a], right[b]) < best) {
              best = dm.dist(left[a], right[b]);
              bi = a;
              bj = b;
            }
        if (best >= delta) break;
        left.erase(left.begin() + static_cast<long>(bi));
        right.erase(right.begin() + static_cast<long>(bj));
      }

      const double kept = static_cast<double>(std::min(left.size(), right.size()));
      if (!left.empty() && kept >= beta * n - 1e-12) {
        SeparatedPair pair;
        double cert = std::numeric_limits<double>::infinity();
        for (int i : left)
          for (int j : right) cert = std::min(cert, dm.dist(i, j));
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());
        pair.left = std::move(left);
        pair.right = std::move(right);
        pair.delta = cert;
        pair.fraction = kept / n;
        pair.target_fraction = beta;
        pair.direction = u;
        pair.attempts = out.attempts;
        out.pair = std::move(pair);
        return out;
      }
      if (!left.empty()) out.rejected_tails.push_back(std::move(left));
    }
  }
  return out;
}

}  // namespace detail

inline SeparatedPair find_separated_sets(const PointSet& ps, const SubspaceReport& rep,
                                         const SearchConfig& cfg = {}) {
  auto out = detail::search_separated(ps, rep, cfg);
  if (!out.pair)
    fail("NoSeparation", "no direction produced delta-separated tails of the target size");
  return std::move(*out.pair);
}

}  // namespace l22
