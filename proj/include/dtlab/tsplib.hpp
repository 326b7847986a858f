#pragma once

// TSPLIB-style files. Planar instances use NODE_COORD_SECTION with
// EDGE_WEIGHT_TYPE EUC_2D or HEX_2D (no integer rounding, unlike classic
// TSPLIB); anything else is written as EXPLICIT / FULL_MATRIX.

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

inline void write_tsplib(std::ostream& os, const MetricInstance& m, const std::string& name,
                         const std::string& comment = {}) {
  const std::size_t n = m.size();
  os << "NAME : " << name << '\n';
  if (!comment.empty()) os << "COMMENT : " << comment << '\n';
  os << "TYPE : TSP\n";
  os << "DIMENSION : " << n << '\n';
  if (m.is_planar()) {
    os << "EDGE_WEIGHT_TYPE : " << (m.kind() == MetricKind::hexagonal ? "HEX_2D" : "EUC_2D") << '\n';
    os << "NODE_COORD_SECTION\n";
    const auto pts = m.points();
    // Coordinates round-trip exactly.
    for (std::size_t i = 0; i < n; ++i)
      os << i + 1 << ' ' << format_real(pts[i].x, 17) << ' ' << format_real(pts[i].y, 17) << '\n';
  } else {
    os << "EDGE_WEIGHT_TYPE : EXPLICIT\n";
    os << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
    os << "EDGE_WEIGHT_SECTION\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << format_real(m(i, j), 12);
      os << '\n';
    }
  }
  os << "EOF\n";
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool is_section_keyword(const std::string& s) {
  return s == "NODE_COORD_SECTION" || s == "EDGE_WEIGHT_SECTION" || s == "DISPLAY_DATA_SECTION" ||
         s == "TOUR_SECTION" || s == "EOF";
}

}  // namespace detail

inline MetricInstance read_tsplib(std::istream& is) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) lines.push_back(line);

  std::optional<std::size_t> dimension;
  std::string weight_type, weight_format;
  std::vector<Point2D> coords;
  std::vector<double> matrix;
  bool have_coords = false, have_matrix = false;

  auto need_dimension = [&](std::size_t line_no) {
    if (!dimension) throw ParseError("section before DIMENSION", line_no);
    return *dimension;
  };

  std::size_t k = 0;
  while (k < lines.size()) {
    const std::size_t line_no = k + 1;
    const std::string text = detail::trim(lines[k]);
    ++k;
    if (text.empty()) continue;
    if (text == "EOF") break;

    if (text == "NODE_COORD_SECTION") {
      const std::size_t n = need_dimension(line_no);
      std::vector<bool> seen(n, false);
      coords.assign(n, {});
      std::size_t count = 0;
      while (k < lines.size()) {
        const std::string row = detail::trim(lines[k]);
        if (row.empty()) {
          ++k;
          continue;
        }
        if (detail::is_section_keyword(row) || row.find(':') != std::string::npos) break;
        std::istringstream ls(row);
        long long id;
        double x, y;
        std::string extra;
        if (!(ls >> id >> x >> y) || (ls >> extra))
          throw ParseError("expected `id x y` in NODE_COORD_SECTION", k + 1);
        if (id < 1 || static_cast<std::size_t>(id) > n)
          throw ParseError("node id " + std::to_string(id) + " outside 1..DIMENSION (" +
                               std::to_string(n) + ")", k + 1);
        if (seen[id - 1]) throw ParseError("duplicate node id " + std::to_string(id), k + 1);
        seen[id - 1] = true;
        coords[id - 1] = {x, y};
        ++count;
        ++k;
      }
      if (count != n)
        throw ParseError("NODE_COORD_SECTION has " + std::to_string(count) +
                             " entries but DIMENSION is " + std::to_string(n), k < lines.size() ? k + 1 : k);
      have_coords = true;
      continue;
    }

    if (text == "EDGE_WEIGHT_SECTION") {
      const std::size_t n = need_dimension(line_no);
      matrix.clear();
      matrix.reserve(n * n);
      while (k < lines.size() && matrix.size() < n * n) {
        const std::string row = detail::trim(lines[k]);
        if (detail::is_section_keyword(row)) break;
        std::istringstream ls(row);
        std::string tok;
        while (ls >> tok) {
          try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            matrix.push_back(v);
          } catch (const std::logic_error&) {
            throw ParseError("bad matrix entry `" + tok + "`", k + 1);
          }
        }
        ++k;
      }
      if (matrix.size() != n * n)
        throw ParseError("EDGE_WEIGHT_SECTION has " + std::to_string(matrix.size()) +
                             " entries, expected " + std::to_string(n * n), k);
      have_matrix = true;
      continue;
    }

    if (detail::is_section_keyword(text))
      throw UnsupportedFormat("section " + text + " is not supported");

    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected `KEY : VALUE`", line_no);
    const std::string key = detail::trim(text.substr(0, colon));
    const std::string value = detail::trim(text.substr(colon + 1));
    if (key == "DIMENSION") {
      try {
        std::size_t used = 0;
        const long long d = std::stoll(value, &used);
        if (used != value.size() || d < 1) throw std::invalid_argument(value);
        dimension = static_cast<std::size_t>(d);
      } catch (const std::logic_error&) {
        throw ParseError("bad DIMENSION `" + value + "`", line_no);
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = value;
      if (value != "EUC_2D" && value != "HEX_2D" && value != "EXPLICIT")
        throw UnsupportedFormat("EDGE_WEIGHT_TYPE " + value + " is not supported");
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      weight_format = value;
      if (value != "FULL_MATRIX")
        throw UnsupportedFormat("EDGE_WEIGHT_FORMAT " + value + " is not supported");
    } else if (key == "TYPE") {
      if (value != "TSP") throw UnsupportedFormat("TYPE " + value + " is not supported");
    }
    // NAME, COMMENT and unknown keys are ignored.
  }

  if (!dimension) throw ParseError("missing DIMENSION", 0);
  if (weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE", 0);
  if (weight_type == "EXPLICIT") {
    if (weight_format.empty()) throw ParseError("missing EDGE_WEIGHT_FORMAT", 0);
    if (!have_matrix) throw ParseError("missing EDGE_WEIGHT_SECTION", 0);
    return MetricInstance::from_matrix(*dimension, std::move(matrix));
  }
  if (!have_coords) throw ParseError("missing NODE_COORD_SECTION", 0);
  return weight_type == "HEX_2D" ? MetricInstance::hexagonal(std::move(coords))
                                 : MetricInstance::euclidean(std::move(coords));
}

inline MetricInstance read_tsplib(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_tsplib(in);
}

inline void write_tsplib(const std::string& path, const MetricInstance& m, const std::string& name,
                         const std::string& comment = {}) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  write_tsplib(out, m, name, comment);
}

}  // namespace dtlab
