#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "l22embed/fixtures.hpp"
#include "l22embed/io.hpp"

using namespace l22;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("l22_io_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("json reals survive a parse round trip bit for bit", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 1234.5678901234567}) {
    const std::string s = json_real(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(json_real(std::numeric_limits<double>::infinity()) == "null");
  CHECK(json_real(std::numeric_limits<double>::quiet_NaN()) == "null");
}

TEST_CASE("dump_json preserves insertion order and escapes", "[io]") {
  nlohmann::ordered_json j;
  j["zebra"] = 1;
  j["alpha"] = "line\nbreak \"quoted\"";
  j["nested"] = nlohmann::ordered_json::array({1, 2.5, true, nullptr});
  const std::string s = dump_json(j);
  CHECK(s == "{\"zebra\":1,\"alpha\":\"line\\nbreak \\\"quoted\\\"\",\"nested\":[1,2.5,true,null]}\n");
  const std::string pretty = dump_json(j, 2);
  CHECK(pretty.find("  \"zebra\": 1") != std::string::npos);
}

TEST_CASE("point sets round trip through JSON files unchanged", "[io]") {
  TempDir tmp;
  FixtureSpec spec;
  spec.kind = "planted-low-rank";
  spec.rank = 2;
  spec.dim = 5;
  spec.count = 9;
  spec.noise = 0.3;
  spec.seed = 6;
  const PointSet ps = generate(spec);
  const std::string path = tmp.file("pts.json");
  save_points(ps, path);
  const PointSet back = load_points(path);
  REQUIRE(back.n == ps.n);
  REQUIRE(back.d == ps.d);
  CHECK(back.coords == ps.coords);  // bit-identical through %.17g
}

TEST_CASE("extra JSON keys are tolerated when loading points", "[io]") {
  TempDir tmp;
  const std::string path = tmp.file("extra.json");
  write_text_atomic(path,
                    "{\"meta\": {\"tool\": \"x\"}, \"n\": 2, \"d\": 1, \"points\": [[0], [1.5]]}");
  const PointSet ps = load_points(path);
  CHECK(ps.n == 2);
  CHECK(ps.coords(1, 0) == 1.5);
}

TEST_CASE("csv points accept commas semicolons and tabs", "[io]") {
  TempDir tmp;
  const std::string path = tmp.file("pts.csv");
  write_text_atomic(path, "0,0\n1;0\n0\t1\n");
  const PointSet ps = load_points(path);
  REQUIRE(ps.n == 3);
  REQUIRE(ps.d == 2);
  CHECK(ps.coords(1, 0) == 1.0);
  CHECK(ps.coords(2, 1) == 1.0);
}

TEST_CASE("malformed point files are rejected with ParseError", "[io]") {
  TempDir tmp;
  const auto expect_parse_error = [&](const std::string& name, const std::string& text) {
    const std::string path = tmp.file(name);
    write_text_atomic(path, text);
    try {
      load_points(path);
      FAIL("expected ParseError for " << name);
    } catch (const Error& e) {
      CHECK(std::string(e.kind()) == "ParseError");
    }
  };
  expect_parse_error("ragged.csv", "0,0\n1\n");
  expect_parse_error("alpha.csv", "0,zero\n1,1\n");
  expect_parse_error("badjson.json", "{\"n\": 2, \"d\": 1}");
  expect_parse_error("mismatch.json", "{\"n\": 3, \"d\": 1, \"points\": [[0],[1]]}");
  expect_parse_error("notnum.json", "{\"n\": 1, \"d\": 1, \"points\": [[\"x\"]]}");
}

TEST_CASE("atomic writes leave no temporary behind", "[io]") {
  TempDir tmp;
  const std::string path = tmp.file("out.txt");
  write_text_atomic(path, "first");
  write_text_atomic(path, "second");
  CHECK(read_text(path) == "second");
  CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_CASE("graph files parse comments weights and repeats", "[io]") {
  TempDir tmp;
  const std::string path = tmp.file("g.edges");
  write_text_atomic(path,
                    "# weighted triangle\n"
                    "graph 3\n"
                    "\n"
                    "1 2 0.5\n"
                    "2 3\n"
                    "1 2 0.25  # accumulates\n"
                    "3 1 2.0\n");
  const Graph g = load_graph(path);
  CHECK(g.n == 3);
  CHECK(g.weights(0, 1) == Catch::Approx(0.75));
  CHECK(g.weights(1, 2) == Catch::Approx(1.0));
  CHECK(g.weights(2, 0) == Catch::Approx(2.0));
}

TEST_CASE("malformed graph files are rejected with line numbers", "[io]") {
  TempDir tmp;
  const auto expect_error = [&](const std::string& name, const std::string& text,
                                const std::string& kind) {
    const std::string path = tmp.file(name);
    write_text_atomic(path, text);
    try {
      load_graph(path);
      FAIL("expected " << kind << " for " << name);
    } catch (const Error& e) {
      CHECK(std::string(e.kind()) == kind);
    }
  };
  expect_error("noheader.edges", "1 2\n", "ParseError");
  expect_error("range.edges", "graph 2\n1 5\n", "ParseError");
  expect_error("selfloop.edges", "graph 3\n2 2\n", "ParseError");
  expect_error("negative.edges", "graph 2\n1 2 -1\n", "ParseError");
  expect_error("zerovert.edges", "graph 2\n0 1\n", "ParseError");  // ids are 1-based
}

TEST_CASE("points_to_json reports shape before data", "[io]") {
  PointSet ps{2, 2, Eigen::MatrixXd::Zero(2, 2)};
  const nlohmann::ordered_json j = points_to_json(ps);
  auto it = j.begin();
  CHECK(it.key() == "n");
  ++it;
  CHECK(it.key() == "d");
  ++it;
  CHECK(it.key() == "points");
}
