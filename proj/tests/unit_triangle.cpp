#include <catch2/catch_amalgamated.hpp>

#include "l22embed/fixtures.hpp"
#include "l22embed/rng.hpp"
#include "l22embed/triangle.hpp"
#include "oracles.hpp"

using namespace l22;

TEST_CASE("collinear triple violates the squared triangle inequality", "[triangle]") {
  PointSet ps{3, 1, Eigen::MatrixXd(3, 1)};
  ps.coords << 0, 1, 2;
  const TriangleReport rep = check_l22(distances(ps));
  CHECK_FALSE(rep.exact_valid);
  REQUIRE(rep.violating_triples.size() == 1);
  CHECK(rep.violating_triples[0].i == 0);
  CHECK(rep.violating_triples[0].j == 1);
  CHECK(rep.violating_triples[0].k == 2);
  CHECK(rep.violating_triples[0].slack == Catch::Approx(2.0));  // 4 - (1 + 1)
  CHECK(rep.beta == Catch::Approx(0.5));
}

TEST_CASE("hypercubes carry exact squared-euclidean metrics", "[triangle]") {
  FixtureSpec spec;
  spec.kind = "hypercube";
  for (int dim : {2, 3, 4}) {
    spec.dim = dim;
    const TriangleReport rep = check_l22(distances(generate(spec)));
    CHECK(rep.exact_valid);
    CHECK(rep.violating_triples.empty());
    CHECK(rep.beta == 1.0);
  }
}

TEST_CASE("simplices carry exact squared-euclidean metrics", "[triangle]") {
  FixtureSpec spec;
  spec.kind = "simplex";
  spec.count = 7;
  const TriangleReport rep = check_l22(distances(generate(spec)));
  CHECK(rep.exact_valid);
  CHECK(rep.beta == 1.0);
}

TEST_CASE("approx_beta equals exhaustive simple-path enumeration", "[triangle]") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_below(4));  // up to 6
    const Eigen::MatrixXd d = oracle::random_semimetric(rng, n);
    const double lib = approx_beta(distance_matrix_from(d));
    const double ref = oracle::beta(d);
    CHECK(lib == ref);
  }
}

TEST_CASE("approx_beta is one exactly on negative-type fixtures", "[triangle]") {
  FixtureSpec subset;
  subset.kind = "hypercube-subset";
  subset.dim = 6;
  subset.count = 20;
  subset.seed = 4;
  CHECK(approx_beta(distances(generate(subset))) == 1.0);

  FixtureSpec planted;
  planted.kind = "planted-low-rank";
  planted.rank = 3;
  planted.dim = 7;
  planted.count = 15;
  planted.noise = 0.0;
  CHECK(approx_beta(distances(generate(planted))) == 1.0);
}

TEST_CASE("generic point clouds are not negative type", "[triangle]") {
  // Squared euclidean distances of arbitrary points violate the squared
  // triangle inequality; only structured sets like hypercubes satisfy it.
  Rng rng(4);
  PointSet ps{8, 3, Eigen::MatrixXd(8, 3)};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 3; ++j) ps.coords(i, j) = rng.normal();
  const TriangleReport rep = check_l22(distances(ps));
  CHECK_FALSE(rep.exact_valid);
  CHECK(rep.beta < 1.0);
  CHECK(rep.beta > 0.0);
}

TEST_CASE("violation slack tolerance scales with the largest distance", "[triangle]") {
  // A tiny relative slack must not be reported at 1e-9 scale.
  Eigen::MatrixXd d(3, 3);
  const double eps = 1e-12;
  d << 0, 1, 2 + eps, 1, 0, 1, 2 + eps, 1, 0;
  const TriangleReport rep = check_l22(distance_matrix_from(d));
  CHECK(rep.exact_valid);
  d(0, 2) = d(2, 0) = 2.1;
  CHECK_FALSE(check_l22(distance_matrix_from(d)).exact_valid);
}
