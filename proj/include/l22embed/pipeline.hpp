#pragma once

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "l22embed/embedder.hpp"
#include "l22embed/error.hpp"
#include "l22embed/graph.hpp"
#include "l22embed/sdp.hpp"
#include "l22embed/subspace.hpp"
#include "l22embed/von_neumann.hpp"

namespace l22 {

// Spectral rounding for regular graphs: sweep the Fiedler vector, and when
// an SDP solution is supplied also sweep the Gram-factor coordinate that
// contributes most to the objective; return the sparser of the cuts.
inline Cut cheeger_round(const Graph& g, const SdpSolution* sdp = nullptr) {
  require(g.regular, "NotRegular", "spectral rounding assumes equal degrees");
  const Spectrum spec = laplacian_spectrum(g);
  Cut best = sweep_cut(g, spec.eigenvectors.col(1));

  if (sdp != nullptr) {
    require(sdp->points.n == g.n, "InvalidInput", "solution and graph sizes differ");
    int pick = -1;
    double top = -1.0;
    for (int c = 0; c < sdp->points.d; ++c) {
      const Eigen::VectorXd col = sdp->points.coords.col(c);
      double contrib = 0.0;
      for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
          const double diff = col(i) - col(j);
          contrib += g.weights(i, j) * diff * diff;
        }
      if (contrib > top) {
        top = contrib;
        pick = c;
      }
    }
    if (pick >= 0) {
      const Eigen::VectorXd col = sdp->points.coords.col(pick);
      if (col.maxCoeff() > col.minCoeff()) {
        const Cut other = sweep_cut(g, col);
        if (other.phi < best.phi) best = other;
      }
    }
  }
  return best;
}

struct PipelineOptions {
  double eta = 0.5;
  SdpOptions sdp;
  EmbedderConfig embed;
};

struct PipelineResult {
  Cut cut;                  // sparsest cut found
  double phi_sdp = 0.0;     // relaxation value (upper bound from the solver)
  Eigen::VectorXd lambda;   // normalized Laplacian spectrum, ascending
  SubspaceReport ssr_report;  // on the extracted solution points
  Branch branch = Branch::direct;
  double avg_ratio = 0.0;
  VnReport von_neumann;     // checked at rank ssr + 1
  bool sdp_converged = false;
  double sdp_gap = 0.0;
  Cut embedding_cut;        // sweep of the line embedding
  std::optional<Cut> spectral_cut;  // cheeger_round, regular graphs only
};

// Rounds the sparsest-cut relaxation through the line embedding: solve the
// SDP, embed its solution points, sweep the embedding, and keep the best
// cut among that sweep, a Fiedler sweep, and (for regular graphs) the
// Gram-coordinate sweep.
inline PipelineResult sparsest_cut_pipeline(const Graph& g, const PipelineOptions& opt = {}) {
  require(g.n >= 2, "InvalidInput", "cuts need at least two vertices");
  require(g.n <= 32, "TooLarge", "the pipeline is capped at 32 vertices");
  require(connected(g), "Disconnected", "the pipeline expects a connected graph");

  PipelineResult res;
  const SdpSolution sdp = solve_gl_sdp(g, opt.sdp);
  res.phi_sdp = sdp.objective;
  res.sdp_converged = sdp.converged;
  res.sdp_gap = sdp.duality_gap;

  const Spectrum spec = laplacian_spectrum(g);
  res.lambda = spec.eigenvalues;

  const EmbedResult emb = embed_case_dispatch(sdp.points, opt.eta, opt.embed);
  res.branch = emb.line.branch;
  res.avg_ratio = emb.report.avg_ratio;
  res.ssr_report = ssr(sdp.points, opt.eta);
  res.von_neumann = von_neumann_check(sdp, g, std::min(res.ssr_report.r + 1, g.n));

  std::optional<Cut> best;
  const auto consider = [&](const Cut& c) {
    if (!best || c.phi < best->phi) best = c;
  };

  if (emb.line.values.maxCoeff() > emb.line.values.minCoeff()) {
    res.embedding_cut = sweep_cut(g, emb.line.values);
    consider(res.embedding_cut);
  } else {
    // Degenerate line (all values equal); fall through to the spectral cuts.
    res.embedding_cut.phi = std::numeric_limits<double>::infinity();
  }

  if (g.regular) {
    res.spectral_cut = cheeger_round(g, &sdp);
    consider(*res.spectral_cut);
  } else {
    consider(sweep_cut(g, spec.eigenvectors.col(1)));
  }

  res.cut = *best;
  return res;
}

}  // namespace l22
