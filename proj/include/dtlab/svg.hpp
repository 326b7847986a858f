#pragma once

// SVG 1.1 drawings of an instance: one <circle> per point, tree edges as solid
// lines, non-tree edges of the source graph (if any) dotted, and one closed
// <path> per tour.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/instances.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

struct DrawnEdge {
  std::string layer;  // "tree", "graph", "tour0", "tour1", ...
  NodeId a = 0;
  NodeId b = 0;

  friend auto operator<=>(const DrawnEdge&, const DrawnEdge&) = default;
};

/// Everything the renderer draws, as sorted endpoint pairs per layer.
inline std::vector<DrawnEdge> drawn_edges(const InstanceBundle& b, const RootedTree* tree,
                                          const std::vector<Tour>& tours) {
  std::vector<DrawnEdge> out;
  auto add = [&](const std::string& layer, NodeId u, NodeId v) {
    out.push_back({layer, std::min(u, v), std::max(u, v)});
  };
  if (tree)
    for (NodeId v = 0; v < tree->size(); ++v)
      if (v != tree->root()) add("tree", tree->parent(v), v);
  if (b.graph && tree)
    for (const auto& e : b.graph->edges)
      if (tree->parent(e.u) != e.v && tree->parent(e.v) != e.u) add("graph", e.u, e.v);
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const auto& order = tours[k].order;
    for (std::size_t i = 0; i < order.size() && order.size() > 1; ++i)
      add("tour" + std::to_string(k), order[i], order[(i + 1) % order.size()]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::string svg_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline constexpr std::array<const char*, 4> kTourColors{"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};

}  // namespace detail

inline std::string render_svg(const InstanceBundle& b, const RootedTree* tree,
                              const std::vector<Tour>& tours, double width = 800.0) {
  const auto& pts = b.layout;
  const std::size_t n = b.metric.size();
  if (pts.size() != n) throw InvalidInput("instance has no layout to draw");
  for (const auto& t : tours)
    if (t.order.size() != n) throw InvalidInput("tour does not match the instance");

  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double margin = 20.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double scale = (width - 2 * margin) / span;
  const double height = (hi_y - lo_y) * scale + 2 * margin;
  auto X = [&](NodeId v) { return detail::svg_num(margin + (pts[v].x - lo_x) * scale); };
  auto Y = [&](NodeId v) { return detail::svg_num(margin + (hi_y - pts[v].y) * scale); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::svg_num(width)
     << "\" height=\"" << detail::svg_num(height) << "\">\n";

  for (const auto& e : drawn_edges(b, tree, {})) {
    os << "<line x1=\"" << X(e.a) << "\" y1=\"" << Y(e.a) << "\" x2=\"" << X(e.b) << "\" y2=\"" << Y(e.b)
       << "\" stroke=\"black\" stroke-width=\"1.5\"";
    if (e.layer == "graph") os << " stroke-dasharray=\"2,3\"";
    os << "/>\n";
  }
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const auto& order = tours[k].order;
    if (order.empty()) continue;
    os << "<path d=\"M " << X(order[0]) << ' ' << Y(order[0]);
    for (std::size_t i = 1; i < order.size(); ++i) os << " L " << X(order[i]) << ' ' << Y(order[i]);
    os << " Z\" fill=\"none\" stroke=\"" << detail::kTourColors[k % detail::kTourColors.size()]
       << "\" stroke-width=\"1\" stroke-opacity=\"0.8\"/>\n";
  }
  for (NodeId v = 0; v < n; ++v)
    os << "<circle cx=\"" << X(v) << "\" cy=\"" << Y(v) << "\" r=\"3\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dtlab
