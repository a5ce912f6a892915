// Embeds hypercubes of growing dimension into a line and prints how the
// average distortion tracks sqrt(d).

#include <cmath>
#include <cstdio>

#include "l22embed/l22embed.hpp"

int main() {
  std::printf("%4s %6s %10s %12s %12s %s\n", "dim", "n", "ssr", "avg_ratio", "ratio/sqrt",
              "branch");
  for (int dim = 2; dim <= 7; ++dim) {
    l22::FixtureSpec spec;
    spec.kind = "hypercube";
    spec.dim = dim;
    const l22::PointSet ps = l22::generate(spec);

    const l22::EmbedResult r = l22::embed_case_dispatch(ps, 0.5);
    std::printf("%4d %6d %10d %12.4f %12.4f %s\n", dim, ps.n, r.ssr_rank, r.report.avg_ratio,
                r.report.avg_ratio / std::sqrt(static_cast<double>(dim)),
                to_string(r.line.branch));
  }
  return 0;
}
