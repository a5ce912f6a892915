#include <catch2/catch_amalgamated.hpp>

#include "l22embed/fixtures.hpp"
#include "l22embed/point_set.hpp"

using namespace l22;

namespace {

PointSet unit_square() {
  PointSet ps{4, 2, Eigen::MatrixXd(4, 2)};
  ps.coords << 0, 0, 1, 0, 0, 1, 1, 1;
  return ps;
}

}  // namespace

TEST_CASE("squared distances of the unit square", "[point_set]") {
  const DistanceMatrix dm = distances(unit_square());
  CHECK(dm.dist(0, 1) == 1.0);
  CHECK(dm.dist(0, 2) == 1.0);
  CHECK(dm.dist(0, 3) == Catch::Approx(2.0).margin(1e-12));
  CHECK(dm.dist(1, 2) == Catch::Approx(2.0).margin(1e-12));
  CHECK(dm.dist.diagonal().isZero(0.0));
  CHECK(dm.dist.isApprox(dm.dist.transpose(), 1e-15));
  CHECK(dm.spread == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("normalize pins the spread to one", "[point_set]") {
  PointSet ps = unit_square();
  ps.coords *= 7.0;
  auto [normed, scale] = normalize(ps);
  CHECK(distances(normed).spread == Catch::Approx(1.0).margin(1e-12));
  CHECK(scale == Catch::Approx(1.0 / 7.0).margin(1e-12));
  CHECK_THROWS_AS(normalize(PointSet{2, 1, Eigen::MatrixXd::Zero(2, 1)}), Error);
}

TEST_CASE("scaling coordinates scales squared distances quadratically", "[point_set]") {
  const PointSet ps = unit_square();
  PointSet scaled = ps;
  scaled.coords *= 3.0;
  const DistanceMatrix a = distances(ps);
  const DistanceMatrix b = distances(scaled);
  CHECK(b.dist.isApprox(9.0 * a.dist, 1e-12));
}

TEST_CASE("ball collects points within the radius", "[point_set]") {
  const DistanceMatrix dm = distances(unit_square());
  CHECK(ball(dm, 0, 0.5) == std::vector<int>{0});
  CHECK(ball(dm, 0, 1.0) == std::vector<int>{0, 1, 2});
  CHECK(ball(dm, 0, 2.5) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("validate rejects malformed point sets", "[point_set]") {
  CHECK_THROWS_AS(validate(PointSet{0, 1, Eigen::MatrixXd(0, 1)}), Error);
  PointSet bad{1, 1, Eigen::MatrixXd(1, 1)};
  bad.coords(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("distance_matrix_from validates shape and symmetry", "[point_set]") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  const DistanceMatrix dm = distance_matrix_from(m);
  CHECK(dm.spread == Catch::Approx(0.5));
  m(0, 1) = 2.0;
  CHECK_THROWS_AS(distance_matrix_from(m), Error);
}

TEST_CASE("hypercube fixture enumerates all vertices", "[point_set]") {
  FixtureSpec spec;
  spec.kind = "hypercube";
  spec.dim = 3;
  const PointSet ps = generate(spec);
  REQUIRE(ps.n == 8);
  REQUIRE(ps.d == 3);
  const DistanceMatrix dm = distances(ps);
  CHECK(dm.dist(0, 7) == 3.0);  // squared distance counts differing bits
  CHECK(dm.dist.maxCoeff() == 3.0);
}

TEST_CASE("simplex fixture has all pairs at squared distance two", "[point_set]") {
  FixtureSpec spec;
  spec.kind = "simplex";
  spec.count = 5;
  const DistanceMatrix dm = distances(generate(spec));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(dm.dist(i, j) == (i == j ? 0.0 : 2.0));
}

TEST_CASE("hypercube-subset draws distinct vertices deterministically", "[point_set]") {
  FixtureSpec spec;
  spec.kind = "hypercube-subset";
  spec.dim = 5;
  spec.count = 12;
  spec.seed = 3;
  const PointSet a = generate(spec);
  const PointSet b = generate(spec);
  REQUIRE(a.n == 12);
  CHECK(a.coords == b.coords);
  const DistanceMatrix dm = distances(a);
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) CHECK(dm.dist(i, j) >= 1.0);  // vertices distinct
}

TEST_CASE("duplicate_endpoints copies the first farthest pair", "[point_set]") {
  FixtureSpec spec;
  spec.kind = "hypercube";
  spec.dim = 2;
  const PointSet base = generate(spec);
  const PointSet dup = duplicate_endpoints(base, 3);
  REQUIRE(dup.n == 8);
  // Vertices 0 and 3 are the first maximally distant pair in scan order.
  CHECK(dup.coords.row(4) == base.coords.row(0));
  CHECK(dup.coords.row(5) == base.coords.row(3));
  CHECK(dup.coords.row(6) == base.coords.row(0));
  CHECK(dup.coords.row(7) == base.coords.row(3));
  CHECK(duplicate_endpoints(base, 1).n == 4);
  CHECK_THROWS_AS(duplicate_endpoints(base, 0), Error);
}

TEST_CASE("planted-low-rank with zero noise is exactly low rank", "[point_set]") {
  FixtureSpec spec;
  spec.kind = "planted-low-rank";
  spec.rank = 2;
  spec.dim = 6;
  spec.count = 10;
  spec.noise = 0.0;
  const PointSet ps = generate(spec);
  REQUIRE(ps.n == 10);
  REQUIRE(ps.d == 6);
  CHECK(ps.coords.rightCols(4).isZero(0.0));
}
