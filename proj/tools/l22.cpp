#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "l22embed/l22embed.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json to_array(const Eigen::VectorXd& v) {
  auto a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json to_array_1based(const std::vector<int>& idx) {
  auto a = ordered_json::array();
  for (int i : idx) a.push_back(static_cast<std::int64_t>(i) + 1);
  return a;
}

ordered_json to_matrix(const Eigen::MatrixXd& m) {
  auto rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct GlobalOpts {
  std::uint64_t seed = 0;
  double tol = 1e-6;
  bool pretty = false;
  std::string out;
};

// Results go to stdout byte-for-byte reproducibly; the human echo with the
// timestamp stays on stderr.
void emit(const GlobalOpts& g, const std::string& command, ordered_json config,
          ordered_json result) {
  ordered_json doc;
  doc["meta"] = {{"tool", "l22"},
                 {"version", l22::kVersion},
                 {"command", command},
                 {"seed", g.seed},
                 {"config", std::move(config)}};
  for (auto& [key, value] : result.items()) doc[key] = std::move(value);

  const std::string text = l22::dump_json(doc, g.pretty ? 2 : -1);
  std::fputs(text.c_str(), stdout);
  if (!g.out.empty()) l22::write_text_atomic(g.out, text);

  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  std::fprintf(stderr, "[l22] %s v%s seed=%llu %s\n", command.c_str(), l22::kVersion,
               static_cast<unsigned long long>(g.seed), stamp);
}

ordered_json ssr_block(const l22::SubspaceReport& rep, bool full) {
  ordered_json j;
  j["r"] = rep.r;
  j["eta"] = rep.eta;
  j["captured"] = rep.captured;
  j["sigma"] = to_array(rep.sigma);
  if (full) j["basis"] = to_matrix(rep.basis);
  return j;
}

ordered_json report_block(const l22::DistortionReport& rep) {
  ordered_json j;
  j["avg_ratio"] = rep.avg_ratio;
  j["worst_ratio"] = rep.worst_ratio;
  j["contraction_violations"] = rep.contraction_violations;
  j["degenerate"] = rep.degenerate;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"average-distortion l1 embeddings of l2^2 point sets and sparsest-cut rounding"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for every randomized step");
  app.add_option("--tol", g.tol, "solver tolerance");
  app.add_flag("--pretty", g.pretty, "indent the JSON output");
  app.add_option("-o,--out", g.out, "also write the JSON result to this file");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a point-set fixture");
  l22::FixtureSpec fspec;
  gen->add_option("--kind", fspec.kind,
                  "hypercube | scaled-hypercube | hypercube-subset | simplex | planted-low-rank")
      ->required();
  gen->add_option("--dim", fspec.dim, "ambient dimension");
  gen->add_option("--count", fspec.count, "number of points (subset and planted kinds)");
  gen->add_option("--rank", fspec.rank, "planted subspace rank");
  gen->add_option("--scale", fspec.scale, "coordinate scale");
  gen->add_option("--noise", fspec.noise, "off-subspace noise level");
  gen->add_option("--beta-floor", fspec.beta_floor, "reject fixtures measuring below this beta");
  gen->add_option("--copies", fspec.copies, "duplicate the farthest pair this many times");

  // check
  auto* check = app.add_subcommand("check", "test l2^2 triangle inequalities");
  std::string in_points;
  bool full = false;
  check->add_option("-i,--input", in_points, "point file (JSON or CSV)")->required();
  check->add_flag("--full", full, "emit every violating triple");

  // ssr
  auto* ssr_cmd = app.add_subcommand("ssr", "eta-subspace rank of a point set");
  double eta = 0.5;
  ssr_cmd->add_option("-i,--input", in_points, "point file (JSON or CSV)")->required();
  ssr_cmd->add_option("--eta", eta, "energy fraction in (0, 1]");
  ssr_cmd->add_flag("--full", full, "include the basis");

  // embed
  auto* embed = app.add_subcommand("embed", "line embedding by case dispatch");
  double beta_floor = 0.5;
  embed->add_option("-i,--input", in_points, "point file (JSON or CSV)")->required();
  embed->add_option("--eta", eta, "energy fraction in (0, 1]");
  embed->add_option("--beta-floor", beta_floor, "reject inputs measuring below this beta");
  embed->add_flag("--full", full, "include diagnostics");

  // distortion
  auto* dist_cmd = app.add_subcommand("distortion", "measure a stored embedding");
  std::string in_embedding;
  dist_cmd->add_option("-i,--input", in_points, "point file (JSON or CSV)")->required();
  dist_cmd->add_option("-e,--embedding", in_embedding,
                       "embed output JSON, or a bare array of values")
      ->required();

  // sdp
  auto* sdp_cmd = app.add_subcommand("sdp", "solve the sparsest-cut relaxation");
  std::string in_graph;
  int max_iter = 5000;
  sdp_cmd->add_option("-i,--input", in_graph, "graph edge list")->required();
  sdp_cmd->add_option("--max-iter", max_iter, "Newton step budget");
  sdp_cmd->add_flag("--full", full, "include dist, gram, and extracted points");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "normalized Laplacian eigenvalues");
  spec_cmd->add_option("-i,--input", in_graph, "graph edge list")->required();
  spec_cmd->add_flag("--full", full, "include eigenvectors");

  // cut
  auto* cut_cmd = app.add_subcommand("cut", "sparsest-cut pipeline");
  cut_cmd->add_option("-i,--input", in_graph, "graph edge list")->required();
  cut_cmd->add_option("--eta", eta, "energy fraction in (0, 1]");
  cut_cmd->add_option("--max-iter", max_iter, "Newton step budget");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact sparsest cut by enumeration");
  oracle->add_option("-i,--input", in_graph, "graph edge list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw l22::Error("UsageError", e.what());
  }

  if (gen->parsed()) {
    fspec.seed = g.seed;
    double beta = 1.0;
    const l22::PointSet ps = l22::generate(fspec, &beta);
    ordered_json cfg{{"kind", fspec.kind}, {"dim", fspec.dim},   {"count", fspec.count},
                     {"rank", fspec.rank}, {"scale", fspec.scale}, {"noise", fspec.noise},
                     {"beta_floor", fspec.beta_floor}, {"copies", fspec.copies}};
    ordered_json res;
    res["n"] = ps.n;
    res["d"] = ps.d;
    res["beta"] = beta;
    res["points"] = l22::points_to_json(ps)["points"];
    emit(g, "gen", std::move(cfg), std::move(res));
    return 0;
  }

  if (check->parsed()) {
    const l22::PointSet ps = l22::load_points(in_points);
    const l22::DistanceMatrix dm = l22::distances(ps);
    const l22::TriangleReport rep = l22::check_l22(dm);
    ordered_json res;
    res["n"] = ps.n;
    res["spread"] = dm.spread;
    res["exact_valid"] = rep.exact_valid;
    res["beta"] = rep.beta;
    res["violation_count"] = rep.violating_triples.size();
    auto arr = ordered_json::array();
    const size_t cap = full ? rep.violating_triples.size()
                            : std::min<size_t>(rep.violating_triples.size(), 100);
    for (size_t t = 0; t < cap; ++t) {
      const auto& v = rep.violating_triples[t];
      arr.push_back({{"i", v.i + 1}, {"j", v.j + 1}, {"k", v.k + 1}, {"slack", v.slack}});
    }
    res["violations"] = std::move(arr);
    emit(g, "check", ordered_json{{"input", in_points}, {"full", full}}, std::move(res));
    return 0;
  }

  if (ssr_cmd->parsed()) {
    const l22::PointSet ps = l22::load_points(in_points);
    const l22::SubspaceReport rep = l22::ssr(ps, eta);
    emit(g, "ssr", ordered_json{{"input", in_points}, {"eta", eta}, {"full", full}},
         ssr_block(rep, full));
    return 0;
  }

  if (embed->parsed()) {
    const l22::PointSet ps = l22::load_points(in_points);
    l22::EmbedderConfig cfg;
    cfg.beta_floor = beta_floor;
    cfg.search.seed = g.seed;
    const l22::EmbedResult r = l22::embed_case_dispatch(ps, eta, cfg);
    ordered_json res;
    res["branch"] = to_string(r.line.branch);
    res["distance_kind"] = r.line.distance_kind == l22::DistanceKind::d ? "d" : "d_f";
    res["witness"] = to_array_1based(r.line.witness);
    res["values"] = to_array(r.line.values);
    if (r.pair) {
      res["delta"] = r.pair->delta;
      res["direction"] = to_array(r.pair->direction);
    }
    res["report"] = report_block(r.report);
    res["measured_beta"] = r.measured_beta;
    if (full) {
      ordered_json diag;
      diag["eta"] = r.eta;
      diag["scale"] = r.scale;
      diag["ssr_rank"] = r.ssr_rank;
      diag["captured"] = r.captured;
      diag["center"] = r.center >= 0 ? ordered_json(r.center + 1) : ordered_json(nullptr);
      diag["outer_set"] = to_array_1based(r.outer_set);
      diag["witness_sum"] = r.witness_sum;
      diag["split_value"] = r.split_value;
      diag["split_threshold"] = r.split_threshold;
      diag["c_value"] = r.c_value;
      diag["search_fell_back"] = r.search_fell_back;
      if (r.pair) {
        diag["pair"] = {{"left", to_array_1based(r.pair->left)},
                        {"right", to_array_1based(r.pair->right)},
                        {"delta", r.pair->delta},
                        {"fraction", r.pair->fraction},
                        {"target_fraction", r.pair->target_fraction},
                        {"attempts", r.pair->attempts}};
      }
      res["diagnostics"] = std::move(diag);
    }
    emit(g, "embed",
         ordered_json{{"input", in_points}, {"eta", eta}, {"beta_floor", beta_floor}},
         std::move(res));
    return 0;
  }

  if (dist_cmd->parsed()) {
    const l22::PointSet ps = l22::load_points(in_points);
    const std::string text = l22::read_text(in_embedding);
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const std::exception& e) {
      l22::fail("ParseError", std::string("bad embedding JSON: ") + e.what());
    }
    const ordered_json* vals = nullptr;
    if (j.is_array()) vals = &j;
    else if (j.is_object() && j.contains("values")) vals = &j["values"];
    l22::require(vals != nullptr, "ParseError", "embedding file needs a values array");
    l22::require(static_cast<int>(vals->size()) == ps.n, "InvalidInput",
                 "value count disagrees with the point count");
    l22::LineEmbedding emb;
    emb.values.resize(ps.n);
    for (int i = 0; i < ps.n; ++i) emb.values(i) = (*vals)[static_cast<size_t>(i)].get<double>();
    emb.branch = l22::Branch::direct;
    const l22::DistortionReport rep = l22::distortion(l22::distances(ps), emb);
    emit(g, "distortion", ordered_json{{"input", in_points}, {"embedding", in_embedding}},
         report_block(rep));
    return 0;
  }

  if (sdp_cmd->parsed()) {
    const l22::Graph gr = l22::load_graph(in_graph);
    l22::SdpOptions opt;
    opt.tol = g.tol;
    opt.max_iter = max_iter;
    const l22::SdpSolution sol = l22::solve_gl_sdp(gr, opt);
    ordered_json res;
    res["n"] = gr.n;
    res["objective"] = sol.objective;
    res["duality_gap"] = sol.duality_gap;
    res["converged"] = sol.converged;
    res["iterations"] = sol.iterations;
    res["residuals"] = {{"triangle", sol.residual_triangle},
                        {"spread", sol.residual_spread},
                        {"gram_min_eig", sol.gram_min_eig}};
    if (full) {
      res["dist"] = to_matrix(sol.dist);
      res["gram"] = to_matrix(sol.gram);
      res["points"] = to_matrix(sol.points.coords);
    }
    emit(g, "sdp",
         ordered_json{{"input", in_graph}, {"tol", g.tol}, {"max_iter", max_iter}},
         std::move(res));
    return 0;
  }

  if (spec_cmd->parsed()) {
    const l22::Graph gr = l22::load_graph(in_graph);
    const l22::Spectrum spec = l22::laplacian_spectrum(gr);
    ordered_json res;
    res["n"] = gr.n;
    res["regular"] = gr.regular;
    res["connected"] = l22::connected(gr);
    res["lambda"] = to_array(spec.eigenvalues);
    if (full) res["eigenvectors"] = to_matrix(spec.eigenvectors);
    emit(g, "spectrum", ordered_json{{"input", in_graph}, {"full", full}}, std::move(res));
    return 0;
  }

  if (cut_cmd->parsed()) {
    const l22::Graph gr = l22::load_graph(in_graph);
    l22::PipelineOptions opt;
    opt.eta = eta;
    opt.sdp.tol = g.tol;
    opt.sdp.max_iter = max_iter;
    opt.embed.search.seed = g.seed;
    const l22::PipelineResult r = l22::sparsest_cut_pipeline(gr, opt);
    ordered_json res;
    res["phi"] = r.cut.phi;
    res["cut"] = to_array_1based(r.cut.side);
    res["phi_sdp"] = r.phi_sdp;
    res["lambda"] = to_array(r.lambda);
    res["ssr"] = ssr_block(r.ssr_report, false);
    res["branch"] = to_string(r.branch);
    res["avg_ratio"] = r.avg_ratio;
    res["von_neumann"] = {{"r", r.von_neumann.r},
                          {"lhs", r.von_neumann.lhs},
                          {"rhs", r.von_neumann.rhs},
                          {"holds", r.von_neumann.holds}};
    res["sdp_converged"] = r.sdp_converged;
    res["sdp_gap"] = r.sdp_gap;
    emit(g, "cut", ordered_json{{"input", in_graph}, {"eta", eta}, {"tol", g.tol}},
         std::move(res));
    return 0;
  }

  if (oracle->parsed()) {
    const l22::Graph gr = l22::load_graph(in_graph);
    const l22::Cut c = l22::brute_force_phi(gr);
    ordered_json res;
    res["phi"] = c.phi;
    res["cut"] = to_array_1based(c.side);
    emit(g, "oracle", ordered_json{{"input", in_graph}}, std::move(res));
    return 0;
  }

  return 1;  // unreachable, require_subcommand guards
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const l22::Error& e) {
    const ordered_json err{{"error", e.kind()}, {"detail", e.detail()}};
    std::fputs(l22::dump_json(err).c_str(), stderr);
    const std::string k = e.kind();
    return (k == "InternalCaseFailure" || k == "SpectralFailure") ? 1 : 2;
  } catch (const std::exception& e) {
    const ordered_json err{{"error", "Internal"}, {"detail", e.what()}};
    std::fputs(l22::dump_json(err).c_str(), stderr);
    return 1;
  }
}
