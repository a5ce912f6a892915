#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "l22embed/error.hpp"
#include "l22embed/graph.hpp"
#include "l22embed/point_set.hpp"

namespace l22 {

// 17 significant digits: enough to reproduce any double bit for bit.
inline std::string json_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void json_escape_to(const std::string& s, std::string& out) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

inline void dump_json_to(const nlohmann::ordered_json& v, std::string& out, int indent,
                         int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out.push_back('\n');
      out.append(static_cast<size_t>(indent * d), ' ');
    }
  };
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, val] : v.items()) {
        if (!first) out.push_back(',');
        first = false;
        pad(depth + 1);
        json_escape_to(key, out);
        out.push_back(':');
        if (indent >= 0) out.push_back(' ');
        dump_json_to(val, out, indent, depth + 1);
      }
      pad(depth);
      out.push_back('}');
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        pad(depth + 1);
        dump_json_to(item, out, indent, depth + 1);
      }
      pad(depth);
      out.push_back(']');
      return;
    }
    case nlohmann::ordered_json::value_t::string:
      json_escape_to(v.get_ref<const std::string&>(), out);
      return;
    case nlohmann::ordered_json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case nlohmann::ordered_json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case nlohmann::ordered_json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case nlohmann::ordered_json::value_t::number_float:
      out += json_real(v.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace detail

// Serializes with insertion order preserved and reals at 17 significant
// digits; non-finite reals become null. indent < 0 emits one line.
inline std::string dump_json(const nlohmann::ordered_json& v, int indent = -1) {
  std::string out;
  detail::dump_json_to(v, out, indent, 0);
  out.push_back('\n');
  return out;
}

inline void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(f.good(), "IoError", "cannot open for writing: " + tmp);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    require(f.good(), "IoError", "write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  require(!ec, "IoError", "cannot rename " + tmp + " to " + path);
}

inline std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), "IoError", "cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline nlohmann::ordered_json points_to_json(const PointSet& ps) {
  nlohmann::ordered_json j;
  j["n"] = ps.n;
  j["d"] = ps.d;
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < ps.n; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int k = 0; k < ps.d; ++k) row.push_back(ps.coords(i, k));
    rows.push_back(std::move(row));
  }
  j["points"] = std::move(rows);
  return j;
}

inline void save_points(const PointSet& ps, const std::string& path) {
  validate(ps);
  write_text_atomic(path, dump_json(points_to_json(ps)));
}

namespace detail {

inline PointSet points_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream fields(line);
    std::vector<double> row;
    double x;
    while (fields >> x) row.push_back(x);
    std::string rest;
    fields.clear();
    require(!(fields >> rest), "ParseError", "non-numeric field in CSV row");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  require(!rows.empty(), "ParseError", "no points in CSV input");
  const size_t d = rows.front().size();
  for (const auto& row : rows)
    require(row.size() == d, "ParseError", "ragged CSV rows");
  PointSet ps{static_cast<int>(rows.size()), static_cast<int>(d),
              Eigen::MatrixXd(static_cast<int>(rows.size()), static_cast<int>(d))};
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < d; ++k) ps.coords(static_cast<int>(i), static_cast<int>(k)) = rows[i][k];
  validate(ps);
  return ps;
}

}  // namespace detail

// JSON {"n", "d", "points"} or CSV with one point per row; the format is
// chosen by sniffing for a leading brace.
inline PointSet load_points(const std::string& path) {
  const std::string text = read_text(path);
  const size_t first = text.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, "ParseError", "empty point file: " + path);
  if (text[first] != '{') return detail::points_from_csv(text);

  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail("ParseError", std::string("bad JSON: ") + e.what());
  }
  require(j.contains("n") && j.contains("d") && j.contains("points"), "ParseError",
          "point JSON needs n, d, points");
  const int n = j["n"].get<int>();
  const int d = j["d"].get<int>();
  require(n >= 1 && d >= 1, "ParseError", "n and d must be positive");
  const auto& rows = j["points"];
  require(rows.is_array() && static_cast<int>(rows.size()) == n, "ParseError",
          "points array length disagrees with n");
  PointSet ps{n, d, Eigen::MatrixXd(n, d)};
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    require(row.is_array() && static_cast<int>(row.size()) == d, "ParseError",
            "point row length disagrees with d");
    for (int k = 0; k < d; ++k) {
      require(row[static_cast<size_t>(k)].is_number(), "ParseError",
              "point coordinates must be numbers");
      ps.coords(i, k) = row[static_cast<size_t>(k)].get<double>();
    }
  }
  validate(ps);
  return ps;
}

// Whitespace edge list with a "graph <n>" header; vertex ids are 1-based,
// "i j" lines default the weight to 1, repeated pairs accumulate.
inline Graph load_graph(const std::string& path) {
  std::istringstream lines(read_text(path));
  std::string line;
  int n = -1;
  std::vector<std::tuple<int, int, double>> edges;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    if (n < 0) {
      std::string word;
      if (!(fields >> word)) continue;  // leading blank lines
      require(word == "graph", "ParseError", "expected 'graph <n>' header");
      require(static_cast<bool>(fields >> n) && n >= 1, "ParseError",
              "bad vertex count in header");
      continue;
    }
    int u, v;
    if (!(fields >> u)) continue;  // blank line
    require(static_cast<bool>(fields >> v), "ParseError",
            "edge line needs two vertex ids (line " + std::to_string(lineno) + ")");
    double w = 1.0;
    if (fields >> w) {
      require(std::isfinite(w) && w >= 0.0, "ParseError",
              "bad edge weight (line " + std::to_string(lineno) + ")");
    }
    require(u >= 1 && u <= n && v >= 1 && v <= n, "ParseError",
            "vertex id out of range (line " + std::to_string(lineno) + ")");
    require(u != v, "ParseError",
            "self-loops are not allowed (line " + std::to_string(lineno) + ")");
    edges.emplace_back(u - 1, v - 1, w);
  }
  require(n >= 1, "ParseError", "missing 'graph <n>' header: " + path);
  return graph_from_edges(n, edges);
}

}  // namespace l22
