#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtlab/doubletree.hpp"
#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

inline constexpr std::size_t kMaxExactMatching = 18;

struct MultiEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 0.0;
  std::size_t multiplicity = 1;
};

class Multigraph {
 public:
  explicit Multigraph(std::size_t node_count) : n_(node_count) {}

  // Parallel copies of an existing edge raise its multiplicity.
  void add_edge(NodeId u, NodeId v, double w, std::size_t multiplicity = 1) {
    if (u >= n_ || v >= n_) throw InvalidInput("edge endpoint out of range");
    const auto key = std::minmax(u, v);
    for (auto& e : edges_)
      if (std::minmax(e.u, e.v) == key) {
        e.multiplicity += multiplicity;
        return;
      }
    edges_.push_back({u, v, w, multiplicity});
  }

  std::size_t node_count() const noexcept { return n_; }
  const std::vector<MultiEdge>& edges() const noexcept { return edges_; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (const auto& e : edges_) {
      deg[e.u] += e.multiplicity;
      deg[e.v] += e.multiplicity;
    }
    return deg;
  }

 private:
  std::size_t n_;
  std::vector<MultiEdge> edges_;
};

/// Nodes of odd tree degree, ascending.
inline std::vector<NodeId> odd_degree_nodes(const RootedTree& t) {
  std::vector<NodeId> odd;
  for (NodeId v = 0; v < t.size(); ++v)
    if (t.degree(v) % 2 == 1) odd.push_back(v);
  return odd;
}

/// Exact minimum-weight perfect matching by DP over subsets: the lowest
/// unmatched node is paired with every remaining candidate.
inline std::vector<std::pair<NodeId, NodeId>> exact_min_matching(const std::vector<NodeId>& nodes,
                                                                 const MetricInstance& m) {
  const std::size_t k = nodes.size();
  if (k % 2 != 0) throw InvalidInput("matching needs an even number of nodes");
  if (k > kMaxExactMatching) throw Infeasible("matching too large for exact solver");
  if (k == 0) return {};
  const std::size_t subsets = std::size_t{1} << k;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(subsets, inf);
  std::vector<std::uint8_t> partner(subsets, 0);
  best[0] = 0.0;
  // best[S]: lightest matching of the nodes in S.
  for (std::size_t S = 1; S < subsets; ++S) {
    if (std::popcount(S) % 2) continue;
    const auto low = static_cast<std::size_t>(std::countr_zero(S));
    const std::size_t rest = S & ~(std::size_t{1} << low);
    for (std::size_t j = low + 1; j < k; ++j) {
      if (!(rest >> j & 1)) continue;
      const double cand = best[rest & ~(std::size_t{1} << j)] + m(nodes[low], nodes[j]);
      if (cand < best[S]) {
        best[S] = cand;
        partner[S] = static_cast<std::uint8_t>(j);
      }
    }
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t S = subsets - 1; S;) {
    const auto low = static_cast<std::size_t>(std::countr_zero(S));
    const std::size_t j = partner[S];
    pairs.emplace_back(nodes[low], nodes[j]);
    S &= ~(std::size_t{1} << low);
    S &= ~(std::size_t{1} << j);
  }
  return pairs;
}

/// Hierholzer's algorithm. Adjacency follows edge insertion order and the
/// walk starts at the smallest node with an edge. Returns a closed walk.
inline std::vector<NodeId> euler_tour(const Multigraph& g) {
  const std::size_t n = g.node_count();
  const auto deg = g.degrees();
  for (NodeId v = 0; v < n; ++v)
    if (deg[v] % 2) throw InvalidInput("node " + std::to_string(v) + " has odd degree");
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> adj(n);  // (neighbor, edge copy id)
  std::size_t copies = 0;
  for (const auto& e : g.edges())
    for (std::size_t r = 0; r < e.multiplicity; ++r, ++copies) {
      adj[e.u].emplace_back(e.v, copies);
      adj[e.v].emplace_back(e.u, copies);
    }
  if (copies == 0) {
    if (n == 1) return {0};
    throw InvalidInput("graph has no edges");
  }
  NodeId start = 0;
  while (deg[start] == 0) ++start;

  std::vector<bool> used(copies, false);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<NodeId> stack{start};
  std::vector<NodeId> walk;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    auto& it = cursor[v];
    while (it < adj[v].size() && used[adj[v][it].second]) ++it;
    if (it == adj[v].size()) {
      walk.push_back(v);
      stack.pop_back();
    } else {
      used[adj[v][it].second] = true;
      stack.push_back(adj[v][it].first);
    }
  }
  if (walk.size() != copies + 1) throw InvalidInput("graph not connected");
  std::reverse(walk.begin(), walk.end());
  return walk;
}

struct ChristofidesResult {
  Tour tour;
  RootedTree tree;
  std::vector<std::pair<NodeId, NodeId>> matching;
  std::vector<NodeId> euler_walk;
  double walk_weight = 0.0;
};

/// MST + exact matching on odd nodes -> Euler tour -> first-occurrence
/// shortcutting, keeping the intermediate objects.
inline ChristofidesResult christofides(const MetricInstance& m, NodeId root = 0) {
  ChristofidesResult r;
  r.tree = prim_mst(m, root);
  const std::size_t n = m.size();
  if (n == 1) {
    r.euler_walk = {0};
    r.tour = make_tour(r.euler_walk, m);
    return r;
  }
  r.matching = exact_min_matching(odd_degree_nodes(r.tree), m);
  Multigraph g(n);
  for (NodeId v = 0; v < n; ++v)
    if (v != r.tree.root()) g.add_edge(r.tree.parent(v), v, m(r.tree.parent(v), v));
  for (auto [a, b] : r.matching) g.add_edge(a, b, m(a, b));
  r.euler_walk = euler_tour(g);
  r.walk_weight = walk_weight(r.euler_walk, m);
  r.euler_walk.pop_back();
  r.tour = make_tour(shortcut_first_occurrence(r.euler_walk, n), m);
  r.euler_walk.push_back(r.euler_walk.front());
  if (r.tour.weight > r.walk_weight + kDistanceTolerance)
    throw std::logic_error("shortcutting increased the walk weight; input is not a metric");
  return r;
}

inline Tour christofides_tour(const MetricInstance& m, NodeId root = 0) {
  return christofides(m, root).tour;
}

}  // namespace dtlab
