#pragma once

// An instance on disk is a TSPLIB file plus an optional JSON sidecar next to
// it (same stem, .json) holding what TSPLIB cannot: family, root, reference
// tour, analytic facts, and for graph metrics the source graph and a layout.

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/instances.hpp"
#include "dtlab/tsplib.hpp"

namespace dtlab {

inline nlohmann::json bundle_sidecar(const InstanceBundle& b) {
  nlohmann::json j;
  j["family"] = b.family;
  j["metric"] = to_string(b.metric.kind());
  j["n"] = b.metric.size();
  j["root"] = b.root;
  j["params"] = b.params;
  j["analytic"] = b.analytic;
  j["reference_tour"] = {{"order", b.reference_tour.order}, {"weight", b.reference_tour.weight}};
  j["expected_mst"] = b.expected_mst;
  if (!b.metric.is_planar()) {
    auto& layout = j["layout"] = nlohmann::json::array();
    for (const auto& p : b.layout) layout.push_back({p.x, p.y});
  }
  if (b.graph) {
    auto& edges = j["graph_edges"] = nlohmann::json::array();
    for (const auto& e : b.graph->edges) edges.push_back({e.u, e.v, e.w});
  }
  return j;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& tsp) {
  auto p = tsp;
  return p.replace_extension(".json");
}

/// Writes `path` (TSPLIB) and its sidecar.
inline void write_bundle(const std::filesystem::path& path, const InstanceBundle& b) {
  write_tsplib(path.string(), b.metric, path.stem().string(), b.family);
  std::ofstream out(sidecar_path(path));
  if (!out) throw InvalidInput("cannot write " + sidecar_path(path).string());
  out << bundle_sidecar(b).dump(2) << '\n';
}

/// Reads a TSPLIB file and, when present, its sidecar. Without a sidecar the
/// bundle has family "unknown", root 0 and no reference tour.
inline InstanceBundle read_bundle(const std::filesystem::path& path) {
  InstanceBundle b;
  b.metric = read_tsplib(path.string());
  b.family = "unknown";
  if (b.metric.is_planar()) b.layout.assign(b.metric.points().begin(), b.metric.points().end());

  const auto side = sidecar_path(path);
  if (!std::filesystem::exists(side)) return b;
  std::ifstream in(side);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.at("n").get<std::size_t>() != b.metric.size())
      throw ParseError("sidecar node count disagrees with " + path.string(), 0);
    b.family = j.at("family").get<std::string>();
    b.root = j.at("root").get<NodeId>();
    b.params = j.value("params", std::map<std::string, double>{});
    b.analytic = j.value("analytic", std::map<std::string, double>{});
    if (j.contains("expected_mst")) b.expected_mst = j["expected_mst"].get<EdgeList>();
    if (j.contains("reference_tour")) {
      const auto order = j["reference_tour"].at("order").get<std::vector<NodeId>>();
      if (!order.empty()) b.reference_tour = make_tour(order, b.metric);
    }
    if (j.contains("layout")) {
      b.layout.clear();
      for (const auto& p : j["layout"]) b.layout.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    if (j.contains("graph_edges")) {
      WeightedGraph g;
      g.node_count = b.metric.size();
      for (const auto& e : j["graph_edges"])
        g.add_edge(e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<double>());
      b.graph = std::move(g);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(side.string() + ": " + e.what(), 0);
  }
  if (b.root >= b.metric.size()) throw ParseError("sidecar root out of range", 0);
  return b;
}

}  // namespace dtlab
