#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <vector>

#include "l22embed/error.hpp"

namespace l22 {

struct Graph {
  int n = 0;
  Eigen::MatrixXd weights;  // symmetric, nonnegative, zero diagonal
  Eigen::VectorXd degrees;
  bool regular = false;
};

inline Graph make_graph(int n, const Eigen::MatrixXd& w) {
  require(n >= 1, "InvalidInput", "graph needs at least one vertex");
  require(w.rows() == n && w.cols() == n, "InvalidInput", "weight matrix shape mismatch");
  require((w - w.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff()),
          "InvalidInput", "weight matrix must be symmetric");
  require(w.minCoeff() >= 0.0, "InvalidInput", "weights must be nonnegative");
  require(w.diagonal().cwiseAbs().maxCoeff() == 0.0, "InvalidInput", "self-loops are not allowed");

  Graph g;
  g.n = n;
  g.weights = 0.5 * (w + w.transpose());
  g.degrees = g.weights.rowwise().sum();
  require(g.degrees.maxCoeff() > 0.0, "InvalidInput", "graph must have a positive weight");
  g.regular = (g.degrees.maxCoeff() - g.degrees.minCoeff()) <= 1e-10;
  return g;
}

inline Graph graph_from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges) {
  require(n >= 1, "InvalidInput", "graph needs at least one vertex");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v, wt] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "InvalidInput", "edge endpoint out of range");
    require(u != v, "InvalidInput", "self-loops are not allowed");
    require(wt >= 0.0, "InvalidInput", "weights must be nonnegative");
    w(u, v) += wt;
    w(v, u) += wt;
  }
  return make_graph(n, w);
}

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, matching order
};

// Eigendecomposition of the normalized Laplacian I - D^{-1/2} W D^{-1/2}.
inline Spectrum laplacian_spectrum(const Graph& g) {
  require(g.degrees.minCoeff() > 0.0, "IsolatedVertex",
          "normalized Laplacian needs every degree positive");
  const Eigen::VectorXd dinv = g.degrees.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd lap =
      Eigen::MatrixXd::Identity(g.n, g.n) -
      dinv.asDiagonal() * g.weights * dinv.asDiagonal();
  lap = 0.5 * (lap + lap.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  require(es.info() == Eigen::Success, "SpectralFailure", "eigendecomposition did not converge");
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

inline bool connected(const Graph& g) {
  std::vector<char> seen(static_cast<size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < g.n; ++v)
      if (!seen[static_cast<size_t>(v)] && g.weights(u, v) > 0.0) {
        seen[static_cast<size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == g.n;
}

namespace detail {

inline std::vector<char> side_flags(const Graph& g, const std::vector<int>& side) {
  std::vector<char> in(static_cast<size_t>(g.n), 0);
  for (int v : side) {
    require(v >= 0 && v < g.n, "InvalidInput", "vertex index out of range");
    require(!in[static_cast<size_t>(v)], "InvalidInput", "duplicate vertex in cut side");
    in[static_cast<size_t>(v)] = 1;
  }
  return in;
}

}  // namespace detail

inline double cut_weight(const Graph& g, const std::vector<int>& side) {
  const std::vector<char> in = detail::side_flags(g, side);
  double cut = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (in[static_cast<size_t>(i)] != in[static_cast<size_t>(j)]) cut += g.weights(i, j);
  return cut;
}

// Cut weight over |S| |S-complement|.
inline double sparsity(const Graph& g, const std::vector<int>& side) {
  const auto k = static_cast<double>(side.size());
  require(k >= 1 && k <= g.n - 1, "EmptyOrFullCut", "cut side must be proper and nonempty");
  return cut_weight(g, side) / (k * (g.n - k));
}

// Cut weight over the smaller side's degree volume.
inline double conductance(const Graph& g, const std::vector<int>& side) {
  require(!side.empty() && static_cast<int>(side.size()) <= g.n - 1, "EmptyOrFullCut",
          "cut side must be proper and nonempty");
  double vol = 0.0;
  for (int v : side) vol += g.degrees(v);
  const double other = g.degrees.sum() - vol;
  const double m = std::min(vol, other);
  if (m <= 0.0) return std::numeric_limits<double>::infinity();
  return cut_weight(g, side) / m;
}

struct Cut {
  std::vector<int> side;
  double phi = 0.0;
};

// Exact sparsest cut by enumerating all proper subsets with vertex n-1
// pinned to the complement.
inline Cut brute_force_phi(const Graph& g) {
  require(g.n <= 20, "TooLarge", "brute force capped at 20 vertices");
  require(g.n >= 2, "InvalidInput", "cuts need at least two vertices");
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.weights(i, j) > 0.0) edges.emplace_back(i, j, g.weights(i, j));

  Cut best;
  best.phi = std::numeric_limits<double>::infinity();
  unsigned long best_mask = 0;
  const unsigned long top = 1ul << (g.n - 1);
  for (unsigned long mask = 1; mask < top; ++mask) {
    double cut = 0.0;
    for (const auto& [i, j, w] : edges)
      if (((mask >> i) & 1ul) != ((mask >> j) & 1ul)) cut += w;
    const auto k = static_cast<double>(__builtin_popcountl(mask));
    const double phi = cut / (k * (g.n - k));
    if (phi < best.phi) {
      best.phi = phi;
      best_mask = mask;
    }
  }
  for (int v = 0; v < g.n - 1; ++v)
    if ((best_mask >> v) & 1ul) best.side.push_back(v);
  return best;
}

namespace detail {

inline std::vector<int> sweep_order(const Eigen::VectorXd& values) {
  std::vector<int> order(static_cast<size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values(a) != values(b)) return values(a) < values(b);
    return a < b;
  });
  return order;
}

// Cut weights of every prefix of the sweep order, one incremental update
// per vertex.
inline std::vector<double> prefix_cuts(const Graph& g, const std::vector<int>& order) {
  std::vector<double> cuts(order.size());
  std::vector<char> in(static_cast<size_t>(g.n), 0);
  double cut = 0.0;
  for (size_t k = 0; k < order.size(); ++k) {
    const int v = order[k];
    double to_inside = 0.0;
    for (int u = 0; u < g.n; ++u)
      if (in[static_cast<size_t>(u)]) to_inside += g.weights(u, v);
    cut += g.degrees(v) - 2.0 * to_inside;
    in[static_cast<size_t>(v)] = 1;
    cuts[k] = cut;
  }
  return cuts;
}

}  // namespace detail

// Best of the n-1 threshold cuts along the value ordering, by sparsity.
inline Cut sweep_cut(const Graph& g, const Eigen::VectorXd& values) {
  require(values.size() == g.n, "InvalidInput", "one value per vertex required");
  require(values.maxCoeff() > values.minCoeff(), "ConstantValues",
          "sweep needs at least two distinct values");
  const std::vector<int> order = detail::sweep_order(values);
  const std::vector<double> cuts = detail::prefix_cuts(g, order);

  Cut best;
  best.phi = std::numeric_limits<double>::infinity();
  size_t best_k = 0;
  for (size_t k = 1; k <= order.size() - 1; ++k) {
    const double phi = cuts[k - 1] / (static_cast<double>(k) * (g.n - static_cast<double>(k)));
    if (phi < best.phi) {
      best.phi = phi;
      best_k = k;
    }
  }
  best.side.assign(order.begin(), order.begin() + static_cast<long>(best_k));
  std::sort(best.side.begin(), best.side.end());
  return best;
}

// Same sweep, scored by conductance instead.
inline Cut sweep_conductance(const Graph& g, const Eigen::VectorXd& values) {
  require(values.size() == g.n, "InvalidInput", "one value per vertex required");
  require(values.maxCoeff() > values.minCoeff(), "ConstantValues",
          "sweep needs at least two distinct values");
  const std::vector<int> order = detail::sweep_order(values);
  const std::vector<double> cuts = detail::prefix_cuts(g, order);
  const double total_vol = g.degrees.sum();

  Cut best;
  best.phi = std::numeric_limits<double>::infinity();
  size_t best_k = 0;
  double vol = 0.0;
  for (size_t k = 1; k <= order.size() - 1; ++k) {
    vol += g.degrees(order[k - 1]);
    const double m = std::min(vol, total_vol - vol);
    const double phi =
        m > 0.0 ? cuts[k - 1] / m : std::numeric_limits<double>::infinity();
    if (phi < best.phi) {
      best.phi = phi;
      best_k = k;
    }
  }
  best.side.assign(order.begin(), order.begin() + static_cast<long>(best_k));
  std::sort(best.side.begin(), best.side.end());
  return best;
}

}  // namespace l22
