#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtlab/error.hpp"

namespace dtlab {

using NodeId = std::size_t;

// Absolute tolerance used for distance comparisons throughout the library.
inline constexpr double kDistanceTolerance = 1e-9;

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

inline bool is_finite(const Point2D& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline double euclidean_distance(const Point2D& p, const Point2D& q) {
  return std::hypot(q.x - p.x, q.y - p.y);
}

/// Minkowski gauge of the regular hexagon with circumradius 1 and vertices at
/// polar angles 30 + 60k degrees. The hexagon is the intersection of three
/// symmetric slabs |v . u_k| <= sqrt(3)/2 with u_k at 0, 60 and 120 degrees.
inline double hexagonal_distance(const Point2D& p, const Point2D& q) {
  constexpr double half_sqrt3 = std::numbers::sqrt3 / 2.0;
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  const double s0 = std::abs(dx);
  const double s1 = std::abs(0.5 * dx + half_sqrt3 * dy);
  const double s2 = std::abs(-0.5 * dx + half_sqrt3 * dy);
  return std::max({s0, s1, s2}) / half_sqrt3;
}

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 0.0;
};

struct WeightedGraph {
  std::size_t node_count = 0;
  std::vector<WeightedEdge> edges;

  void add_edge(NodeId u, NodeId v, double w) { edges.push_back({u, v, w}); }

  // Throws InvalidInput on self-loops, nonpositive weights or bad indices.
  void validate() const {
    if (node_count == 0) throw InvalidInput("graph has no nodes");
    for (const auto& e : edges) {
      if (e.u >= node_count || e.v >= node_count)
        throw InvalidInput("edge endpoint out of range");
      if (e.u == e.v) throw InvalidInput("self-loop on node " + std::to_string(e.u));
      if (!(e.w > 0.0) || !std::isfinite(e.w))
        throw InvalidInput("edge weight must be positive and finite");
    }
  }
};

enum class MetricKind { euclidean, hexagonal, explicit_matrix };

inline const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::hexagonal: return "hexagonal";
    case MetricKind::explicit_matrix: return "explicit";
  }
  return "?";
}

/// A finite point universe with a symmetric distance function. Planar
/// instances keep their points; every instance also carries the dense
/// distance matrix, which is what the algorithms read.
class MetricInstance {
 public:
  MetricInstance() = default;

  static MetricInstance euclidean(std::vector<Point2D> points) {
    return planar(MetricKind::euclidean, std::move(points), &euclidean_distance);
  }

  static MetricInstance hexagonal(std::vector<Point2D> points) {
    return planar(MetricKind::hexagonal, std::move(points), &hexagonal_distance);
  }

  static MetricInstance planar(MetricKind kind, std::vector<Point2D> points) {
    if (kind == MetricKind::hexagonal) return hexagonal(std::move(points));
    if (kind == MetricKind::euclidean) return euclidean(std::move(points));
    throw InvalidInput("planar metric kind required");
  }

  // Row-major n x n matrix. Entries must be finite and nonnegative; the matrix
  // is not required to be a metric (see verify_metric).
  static MetricInstance from_matrix(std::size_t n, std::vector<double> matrix) {
    if (matrix.size() != n * n) throw InvalidInput("distance matrix is not n x n");
    for (double d : matrix)
      if (!std::isfinite(d) || d < 0.0) throw InvalidInput("distance must be finite and >= 0");
    MetricInstance m;
    m.kind_ = MetricKind::explicit_matrix;
    m.n_ = n;
    m.dist_ = std::move(matrix);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  MetricKind kind() const noexcept { return kind_; }
  bool is_planar() const noexcept { return kind_ != MetricKind::explicit_matrix; }
  std::span<const Point2D> points() const noexcept { return points_; }
  std::span<const double> matrix() const noexcept { return dist_; }

  double operator()(NodeId i, NodeId j) const noexcept { return dist_[i * n_ + j]; }
  std::span<const double> row(NodeId i) const noexcept { return {dist_.data() + i * n_, n_}; }

 private:
  static MetricInstance planar(MetricKind kind, std::vector<Point2D> points,
                               double (*fn)(const Point2D&, const Point2D&)) {
    for (const auto& p : points)
      if (!is_finite(p)) throw InvalidInput("non-finite coordinate");
    MetricInstance m;
    m.kind_ = kind;
    m.n_ = points.size();
    m.points_ = std::move(points);
    m.dist_.assign(m.n_ * m.n_, 0.0);
    for (std::size_t i = 0; i < m.n_; ++i)
      for (std::size_t j = i + 1; j < m.n_; ++j) {
        const double d = fn(m.points_[i], m.points_[j]);
        m.dist_[i * m.n_ + j] = d;
        m.dist_[j * m.n_ + i] = d;
      }
    return m;
  }

  MetricKind kind_ = MetricKind::explicit_matrix;
  std::size_t n_ = 0;
  std::vector<Point2D> points_;
  std::vector<double> dist_;
};

namespace detail {

using Adjacency = std::vector<std::vector<std::pair<NodeId, double>>>;

inline Adjacency adjacency(const WeightedGraph& g) {
  Adjacency adj(g.node_count);
  for (const auto& e : g.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  return adj;
}

inline std::vector<double> dijkstra(const Adjacency& adj, NodeId source) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(adj.size(), inf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u])
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
  }
  return dist;
}

}  // namespace detail

/// Single-source shortest path weights; unreachable nodes get +infinity.
inline std::vector<double> dijkstra(const WeightedGraph& g, NodeId source) {
  g.validate();
  if (source >= g.node_count) throw InvalidInput("source out of range");
  return detail::dijkstra(detail::adjacency(g), source);
}

/// All-pairs shortest path metric of a connected positively weighted graph,
/// by repeated Dijkstra.
inline MetricInstance shortest_path_metric(const WeightedGraph& g) {
  g.validate();
  const std::size_t n = g.node_count;
  const auto adj = detail::adjacency(g);
  std::vector<double> matrix(n * n);
  for (NodeId s = 0; s < n; ++s) {
    const auto dist = detail::dijkstra(adj, s);
    for (NodeId v = 0; v < n; ++v) {
      if (!std::isfinite(dist[v])) throw InvalidInput("graph not connected");
      matrix[s * n + v] = dist[v];
    }
  }
  // Runs from i and from j may round differently on long paths.
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      const double d = std::min(matrix[i * n + j], matrix[j * n + i]);
      matrix[i * n + j] = matrix[j * n + i] = d;
    }
  return MetricInstance::from_matrix(n, std::move(matrix));
}

struct MetricReport {
  bool ok = true;
  std::string failure;                                 // empty when ok
  std::optional<std::array<NodeId, 3>> violating_triple;  // (i, k, j): d(i,j) > d(i,k) + d(k,j)

  explicit operator bool() const noexcept { return ok; }
};

/// Checks zero diagonal, symmetry and the triangle inequality. The triangle
/// check is exhaustive up to n = 64 and sampled beyond that.
inline MetricReport verify_metric(const MetricInstance& m, std::size_t sample_budget = 100000,
                                  std::uint64_t seed = 0x5eed) {
  MetricReport report;
  const std::size_t n = m.size();
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.failure = std::move(msg);
    return report;
  };
  for (NodeId i = 0; i < n; ++i)
    if (std::abs(m(i, i)) > kDistanceTolerance)
      return fail("nonzero diagonal at " + std::to_string(i));
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > kDistanceTolerance)
        return fail("asymmetric pair (" + std::to_string(i) + "," + std::to_string(j) + ")");

  auto check = [&](NodeId i, NodeId k, NodeId j) {
    if (m(i, j) > m(i, k) + m(k, j) + kDistanceTolerance) {
      report.violating_triple = std::array<NodeId, 3>{i, k, j};
      return false;
    }
    return true;
  };
  auto triangle_fail = [&] {
    const auto& t = *report.violating_triple;
    return fail("triangle inequality violated: d(" + std::to_string(t[0]) + "," +
                std::to_string(t[2]) + ") > d(" + std::to_string(t[0]) + "," +
                std::to_string(t[1]) + ") + d(" + std::to_string(t[1]) + "," +
                std::to_string(t[2]) + ")");
  };

  if (n <= 64) {
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = 0; j < n; ++j)
        for (NodeId k = 0; k < n; ++k)
          if (!check(i, k, j)) return triangle_fail();
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  for (std::size_t s = 0; s < sample_budget; ++s)
    if (!check(pick(rng), pick(rng), pick(rng))) return triangle_fail();
  return report;
}

}  // namespace dtlab
