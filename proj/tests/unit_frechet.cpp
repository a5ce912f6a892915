#include <catch2/catch_amalgamated.hpp>

#include "l22embed/fixtures.hpp"
#include "l22embed/frechet.hpp"
#include "oracles.hpp"

using namespace l22;

namespace {

PointSet unit_square() {
  PointSet ps{4, 2, Eigen::MatrixXd(4, 2)};
  ps.coords << 0, 0, 1, 0, 0, 1, 1, 1;
  return ps;
}

}  // namespace

TEST_CASE("distance to the origin of a hypercube is the bit count", "[frechet]") {
  FixtureSpec spec;
  spec.kind = "hypercube";
  spec.dim = 3;
  const PointSet ps = generate(spec);
  const LineEmbedding e = frechet_line(distances(ps), {0});
  for (int v = 0; v < 8; ++v)
    CHECK(e.values[v] == static_cast<double>(__builtin_popcount(static_cast<unsigned>(v))));
  CHECK(e.witness == std::vector<int>{0});
  CHECK(e.distance_kind == DistanceKind::d);
}

TEST_CASE("sufficient condition value of hand examples", "[frechet]") {
  FixtureSpec spec;
  spec.kind = "hypercube";
  spec.dim = 3;
  const DistanceMatrix dm = distances(generate(spec));
  // |S| = 1 and the bit counts sum to 12 over 8 vertices: 12 / 64.
  CHECK(sufficient_condition_value(dm, {0}) == Catch::Approx(0.1875).margin(1e-12));

  // Two tight clusters at squared distance 2: |S| * sum = 4 * 8 over 64.
  PointSet two{8, 1, Eigen::MatrixXd::Zero(8, 1)};
  two.coords.bottomRows(4).setConstant(std::sqrt(2.0));
  CHECK(sufficient_condition_value(distances(two), {0, 1, 2, 3}) ==
        Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("distortion of the square against a corner witness", "[frechet]") {
  const DistanceMatrix dm = distances(unit_square());
  const LineEmbedding e = frechet_line(dm, {0});
  const DistortionReport rep = distortion(dm, e);
  // h = {0, 1, 1, 2}: distances sum to 8, image gaps to 6.
  CHECK(rep.avg_ratio == Catch::Approx(4.0 / 3.0).margin(1e-12));
  CHECK(rep.contraction_violations == 0);
  // The pair (1, 2) is at distance 2 but maps to the same value.
  CHECK(std::isinf(rep.worst_ratio));
  CHECK_FALSE(rep.degenerate);
}

TEST_CASE("average ratio is bounded by the sufficient condition", "[frechet]") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_below(8));
    PointSet ps{n, 3, Eigen::MatrixXd(n, 3)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) ps.coords(i, j) = rng.normal();
    auto [normed, scale] = normalize(ps);
    const DistanceMatrix dm = distances(normed);

    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (rng.uniform() < 0.4) s.push_back(i);
    if (s.empty() || static_cast<int>(s.size()) == n) continue;

    const double c = sufficient_condition_value(dm, s);
    const LineEmbedding e = frechet_line(dm, s);
    const DistortionReport rep = distortion(dm, e);
    CHECK(rep.avg_ratio == Catch::Approx(oracle::avg_ratio(dm.dist, e.values)).epsilon(1e-12));
    if (c > 1e-9) CHECK(rep.avg_ratio <= 1.0 / c + 1e-6);
  }
}

TEST_CASE("frechet lines never stretch a negative-type metric", "[frechet]") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    FixtureSpec spec;
    spec.kind = "hypercube-subset";
    spec.dim = 6;
    spec.count = 8 + static_cast<int>(rng.uniform_below(24));
    spec.seed = rng.next_u64();
    const DistanceMatrix dm = distances(generate(spec));
    const int k = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(spec.count)));
    std::vector<int> s;
    for (int i = 0; i < k; ++i) s.push_back(i);
    CHECK(distortion(dm, frechet_line(dm, s)).contraction_violations == 0);
  }
}

TEST_CASE("degenerate and empty-witness cases", "[frechet]") {
  PointSet same{3, 1, Eigen::MatrixXd::Zero(3, 1)};
  const DistanceMatrix dm = distances(same);
  const DistortionReport rep = distortion(dm, frechet_line(dm, {0}));
  CHECK(rep.degenerate);
  CHECK(rep.avg_ratio == 1.0);
  CHECK_THROWS_AS(frechet_line(dm, {}), Error);
  CHECK_THROWS_AS(frechet_line(dm, {7}), Error);
}

TEST_CASE("witness indices are reported sorted", "[frechet]") {
  const DistanceMatrix dm = distances(unit_square());
  const LineEmbedding e = frechet_line(dm, {3, 1});
  CHECK(e.witness == std::vector<int>{1, 3});
}
