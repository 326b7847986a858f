#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "dtlab/metric.hpp"
#include "dtlab/spanning.hpp"

namespace testing_support {

using dtlab::MetricInstance;
using dtlab::NodeId;
using dtlab::Point2D;

inline MetricInstance random_euclidean(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return MetricInstance::euclidean(std::move(pts));
}

// Closure of random positive weights under Floyd-Warshall: a random metric.
inline MetricInstance random_matrix_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.0, 10.0);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = u(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return MetricInstance::from_matrix(n, std::move(d));
}

inline std::vector<double> floyd_warshall(const dtlab::WeightedGraph& g) {
  const std::size_t n = g.node_count;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : g.edges) {
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.w);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

inline double kruskal_weight(const MetricInstance& m) {
  const std::size_t n = m.size();
  struct E {
    double w;
    NodeId a, b;
  };
  std::vector<E> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({m(i, j), i, j});
  std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double total = 0.0;
  for (const auto& e : edges) {
    const NodeId ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    total += e.w;
  }
  return total;
}

// Gauge of v for the regular hexagon with vertices at 30 + 60k degrees,
// computed as min{lambda : v in lambda * H} by bisection on the vertex-hull
// membership test (v inside iff on the inner side of all six edges).
inline double hexagon_gauge_bisection(double x, double y) {
  if (x == 0.0 && y == 0.0) return 0.0;
  const double pi = std::acos(-1.0);
  std::vector<Point2D> verts;
  for (int k = 0; k < 6; ++k) {
    const double a = (30.0 + 60.0 * k) * pi / 180.0;
    verts.push_back({std::cos(a), std::sin(a)});
  }
  auto inside = [&](double lambda) {
    for (int k = 0; k < 6; ++k) {
      const Point2D p{lambda * verts[k].x, lambda * verts[k].y};
      const Point2D q{lambda * verts[(k + 1) % 6].x, lambda * verts[(k + 1) % 6].y};
      const double cross = (q.x - p.x) * (y - p.y) - (q.y - p.y) * (x - p.x);
      if (cross < 0.0) return false;
    }
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (!inside(hi)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Random rooted tree on n nodes: each node attaches to a random earlier node
// of a random permutation.
inline dtlab::RootedTree random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<NodeId> parent(n);
  parent[order[0]] = order[0];
  for (std::size_t k = 1; k < n; ++k) parent[order[k]] = order[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
  return dtlab::RootedTree(order[0], std::move(parent));
}

}  // namespace testing_support
