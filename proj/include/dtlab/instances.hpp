#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

/// A generated lower-bound instance together with its canonical root, the
/// spanning tree the construction expects, a reference tour (an upper bound on
/// the optimum) and closed-form weight facts.
struct InstanceBundle {
  std::string family;
  MetricInstance metric;
  NodeId root = 0;
  EdgeList expected_mst;  // sorted (min, max) pairs; empty when not supplied
  Tour reference_tour;
  std::map<std::string, double> analytic;
  std::map<std::string, double> params;
  std::optional<WeightedGraph> graph;  // source graph of shortest-path instances
  std::vector<Point2D> layout;         // drawing coordinates, one per node
};

inline EdgeList sorted_edges(EdgeList edges) {
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace detail {

// 1/n, except at n = 2 where that would hit the eps < 1/2 bound.
inline double default_epsilon(std::size_t n, std::optional<double> eps) {
  if (eps) return *eps;
  return n > 2 ? 1.0 / static_cast<double>(n) : 0.25;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Depth-first comb.
//
// Node order: top row (i,1) for i = 0..n at indices 0..n, bottom row (i,0) at
// n+1..2n+1, top offsets (i+eps,1) for i < n at 2n+2..3n+1. Tops precede
// bottoms so every bottom attaches through its tooth; bottoms precede offsets
// so a depth-first walk descends a tooth before moving right. Root: (0,1).

inline InstanceBundle gen_comb(std::size_t n, std::optional<double> eps_opt = std::nullopt,
                               MetricKind kind = MetricKind::euclidean) {
  if (n < 2) throw InvalidInput("comb needs n >= 2");
  const double eps = detail::default_epsilon(n, eps_opt);
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("comb needs 0 < eps < 1/2");
  auto top = [&](std::size_t i) { return i; };
  auto bottom = [&](std::size_t i) { return n + 1 + i; };
  auto offset = [&](std::size_t i) { return 2 * n + 2 + i; };

  std::vector<Point2D> pts(3 * n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    pts[top(i)] = {static_cast<double>(i), 1.0};
    pts[bottom(i)] = {static_cast<double>(i), 0.0};
  }
  for (std::size_t i = 0; i < n; ++i) pts[offset(i)] = {static_cast<double>(i) + eps, 1.0};

  InstanceBundle b;
  b.family = "comb";
  b.params = {{"n", static_cast<double>(n)}, {"eps", eps}};
  b.layout = pts;
  b.metric = MetricInstance::planar(kind, pts);
  b.root = top(0);

  EdgeList mst;
  for (std::size_t i = 0; i <= n; ++i) mst.emplace_back(top(i), bottom(i));
  for (std::size_t i = 0; i < n; ++i) {
    mst.emplace_back(top(i), offset(i));
    mst.emplace_back(offset(i), top(i + 1));
  }
  b.expected_mst = sorted_edges(std::move(mst));

  // Perimeter: bottom left to right, then the top row right to left.
  std::vector<NodeId> perimeter;
  for (std::size_t i = 0; i <= n; ++i) perimeter.push_back(bottom(i));
  perimeter.push_back(top(n));
  for (std::size_t i = n; i-- > 0;) {
    perimeter.push_back(offset(i));
    perimeter.push_back(top(i));
  }
  b.reference_tour = make_tour(perimeter, b.metric);

  const double nn = static_cast<double>(n);
  if (kind == MetricKind::euclidean) {
    b.analytic["mst_weight"] = 2.0 * nn + 1.0;
    b.analytic["reference_weight"] = 2.0 * nn + 2.0;
    // top(i) -> bottom(i) -> offset(i) -> top(i+1) for every column, then the
    // last tooth and the long edge back to the root.
    b.analytic["depth_first_weight"] =
        nn * (1.0 + std::hypot(eps, 1.0) + (1.0 - eps)) + 1.0 + std::hypot(nn, 1.0);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Christofides comb: the spine alternates between the rows, so the only odd
// tree nodes are (0,0) and (n,1).
//
// Column j has an arrival node a_j (where the spine enters it) and the other
// node z_j: a_0 = (0,1), a_j = (j,1) for odd j, a_j = (j,0) for even j >= 2.
// Indices: a_j -> n - j, z_j -> n + 1 + j, offsets -> 2n + 2 + i. With
// arrivals ordered right to left and the others left to right, Prim's
// lexicographic tie-break attaches every z_j through its tooth.

inline InstanceBundle gen_christofides_comb(std::size_t n, std::optional<double> eps_opt = std::nullopt,
                                            MetricKind kind = MetricKind::euclidean) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("christofides comb needs an even n >= 2");
  const double eps = detail::default_epsilon(n, eps_opt);
  if (!(eps > 0.0 && eps < 0.5)) throw InvalidInput("christofides comb needs 0 < eps < 1/2");

  auto arrival_is_top = [](std::size_t j) { return j == 0 || j % 2 == 1; };
  auto top = [&](std::size_t j) { return arrival_is_top(j) ? n - j : n + 1 + j; };
  auto bottom = [&](std::size_t j) { return arrival_is_top(j) ? n + 1 + j : n - j; };
  auto offset = [&](std::size_t i) { return 2 * n + 2 + i; };
  auto offset_on_top = [](std::size_t i) { return i % 2 == 0; };

  std::vector<Point2D> pts(3 * n + 2);
  for (std::size_t j = 0; j <= n; ++j) {
    pts[top(j)] = {static_cast<double>(j), 1.0};
    pts[bottom(j)] = {static_cast<double>(j), 0.0};
  }
  for (std::size_t i = 0; i < n; ++i)
    pts[offset(i)] = {static_cast<double>(i) + eps, offset_on_top(i) ? 1.0 : 0.0};

  InstanceBundle b;
  b.family = "christofides-comb";
  b.params = {{"n", static_cast<double>(n)}, {"eps", eps}};
  b.layout = pts;
  b.metric = MetricInstance::planar(kind, pts);
  b.root = top(0);

  EdgeList mst;
  for (std::size_t j = 0; j <= n; ++j) mst.emplace_back(top(j), bottom(j));
  for (std::size_t i = 0; i < n; ++i) {
    if (offset_on_top(i)) {
      mst.emplace_back(top(i), offset(i));
      mst.emplace_back(offset(i), top(i + 1));
    } else {
      mst.emplace_back(bottom(i), offset(i));
      mst.emplace_back(offset(i), bottom(i + 1));
    }
  }
  b.expected_mst = sorted_edges(std::move(mst));

  std::vector<NodeId> perimeter;
  for (std::size_t i = 0; i <= n; ++i) {
    perimeter.push_back(bottom(i));
    if (i < n && !offset_on_top(i)) perimeter.push_back(offset(i));
  }
  for (std::size_t i = n + 1; i-- > 0;) {
    perimeter.push_back(top(i));
    if (i > 0 && offset_on_top(i - 1)) perimeter.push_back(offset(i - 1));
  }
  b.reference_tour = make_tour(perimeter, b.metric);

  const double nn = static_cast<double>(n);
  if (kind == MetricKind::euclidean) {
    b.analytic["mst_weight"] = 2.0 * nn + 1.0;
    b.analytic["reference_weight"] = 2.0 * nn + 2.0;
    // Tree plus the single matching edge between (0,0) and (n,1).
    b.analytic["christofides_weight"] = 2.0 * nn + 1.0 + std::hypot(nn, 1.0);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Twin trees in the shortest-path metric.
//
// T_n (n = 2^k) is a root with a single child that branches into a complete
// binary tree with n/2 leaves. Copy A uses indices 0..n-1 with 0 the root and
// heap numbering below it (node t has children 2t, 2t+1); copy B is copy A
// shifted by n. Unit tree edges, a unit root edge (0, n) and a cross edge of
// weight 1 + eps between t and n + t for every non-root t.

namespace detail {

inline std::size_t heap_depth(std::size_t t) {
  std::size_t d = 0;
  while (t > 1) {
    t /= 2;
    ++d;
  }
  return d;
}

// Path length inside T_n between heap nodes (0 denotes the root).
inline std::size_t twin_tree_distance(std::size_t a, std::size_t b) {
  if (a == b) return 0;
  if (a == 0) return heap_depth(b) + 1;
  if (b == 0) return heap_depth(a) + 1;
  std::size_t steps = 0;
  while (a != b) {
    if (a > b)
      a /= 2;
    else
      b /= 2;
    ++steps;
  }
  return steps;
}

inline void inorder_heap(std::size_t t, std::size_t n, std::vector<std::size_t>& out) {
  if (t >= n) return;
  inorder_heap(2 * t, n, out);
  out.push_back(t);
  inorder_heap(2 * t + 1, n, out);
}

// Hamiltonian path over the twin subtree at heap node t (height h >= 2),
// starting at t in the copy at offset `from`. It ends at a leaf of the other
// copy when `to_other`, else at a leaf of the starting copy. Shape: left twin
// subtree, jump from its last leaf up to t's twin, then the right twin subtree.
inline void twin_path(std::size_t t, std::size_t h, bool to_other, std::size_t from, std::size_t n,
                      std::vector<NodeId>& out) {
  const std::size_t other = n - from;
  const std::size_t l = 2 * t, r = 2 * t + 1;
  if (h == 2) {
    if (to_other)
      out.insert(out.end(), {from + t, from + l, from + r, other + r, other + t, other + l});
    else
      out.insert(out.end(), {from + t, from + l, other + l, other + t, other + r, from + r});
    return;
  }
  out.push_back(from + t);
  twin_path(l, h - 1, true, from, n, out);
  out.push_back(other + t);
  twin_path(r, h - 1, !to_other, other, n, out);
}

// Weight of twin_path as (unit part, multiple of eps) for both end types.
struct TwinPathWeight {
  double unit = 0.0;
  double eps = 0.0;
};

inline std::pair<TwinPathWeight, TwinPathWeight> twin_path_weight(std::size_t h) {
  TwinPathWeight y{6, 1}, w{5, 2};
  for (std::size_t level = 3; level <= h; ++level) {
    const double jump = static_cast<double>(level + 1);
    const TwinPathWeight ny{y.unit + w.unit + jump, y.eps + w.eps};
    const TwinPathWeight nw{2 * y.unit + jump, 2 * y.eps};
    y = ny;
    w = nw;
  }
  return {y, w};
}

}  // namespace detail

inline WeightedGraph twin_trees_graph(std::size_t k, double eps) {
  const std::size_t n = std::size_t{1} << k;
  WeightedGraph g;
  g.node_count = 2 * n;
  for (std::size_t copy = 0; copy < 2; ++copy) {
    const std::size_t s = copy * n;
    g.add_edge(s + 0, s + 1, 1.0);
    for (std::size_t t = 1; 2 * t < n; ++t) {
      g.add_edge(s + t, s + 2 * t, 1.0);
      g.add_edge(s + t, s + 2 * t + 1, 1.0);
    }
  }
  g.add_edge(0, n, 1.0);
  for (std::size_t t = 1; t < n; ++t) g.add_edge(t, n + t, 1.0 + eps);
  return g;
}

inline InstanceBundle gen_twin_trees(std::size_t k, std::optional<double> eps_opt = std::nullopt) {
  if (k < 2 || k > 12) throw InvalidInput("twin trees need 2 <= k <= 12");
  const std::size_t n = std::size_t{1} << k;
  const double eps = detail::default_epsilon(n, eps_opt);
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("twin trees need 0 < eps < 1");

  InstanceBundle b;
  b.family = "twin-trees";
  b.params = {{"k", static_cast<double>(k)}, {"n", static_cast<double>(n)}, {"eps", eps}};
  b.graph = twin_trees_graph(k, eps);
  b.metric = shortest_path_metric(*b.graph);
  b.root = 0;

  EdgeList mst;
  for (const auto& e : b.graph->edges)
    if (e.w == 1.0) mst.emplace_back(e.u, e.v);
  b.expected_mst = sorted_edges(std::move(mst));

  // Drawing: in-order column, depth row; copy B mirrored below copy A.
  std::vector<std::size_t> inorder;
  detail::inorder_heap(1, n, inorder);
  b.layout.assign(2 * n, {});
  const double levels = static_cast<double>(k + 1);
  for (std::size_t col = 0; col < inorder.size(); ++col) {
    const std::size_t t = inorder[col];
    const double y = levels - static_cast<double>(detail::heap_depth(t));
    b.layout[t] = {static_cast<double>(col + 1), 2.0 + y};
    b.layout[n + t] = {static_cast<double>(col + 1), -2.0 - y};
  }
  b.layout[0] = {0.0, 1.0};
  b.layout[n] = {0.0, -1.0};

  // Root, then one path through both copies ending at a leaf of copy B, which
  // returns to B's root along the tree and closes over the root edge.
  std::vector<NodeId> order{0};
  detail::twin_path(1, k, true, 0, n, order);
  order.push_back(n);
  b.reference_tour = make_tour(order, b.metric);
  const auto y = detail::twin_path_weight(k).first;
  const double ref = y.unit + static_cast<double>(k + 2) + y.eps * eps;
  if (std::abs(b.reference_tour.weight - ref) > 1e-6 * ref)
    throw std::logic_error("twin trees reference weight disagrees with its formula");

  b.analytic["mst_weight"] = 2.0 * static_cast<double>(n) - 1.0;
  b.analytic["reference_weight"] = ref;
  b.analytic["min_dt_lower_bound"] = 4.0 * static_cast<double>(n) - 4.0 * (2.0 * k + 2.0);
  return b;
}

// ---------------------------------------------------------------------------
// Three-armed star with 6n + 1 points.
//
// Index 0 is the centre. Arm k (k = 0, 1, 2) points at 30 + 120k degrees and
// has its inner point at index 1 + k (radius r_inner) and its origin at 4 + k
// (radius r_outer). From each origin two rows of n - 1 unit-spaced points
// leave in directions arm + 60 ("left") and arm - 60 ("right"); row point d
// (1..n-1) of side s (0 left, 1 right) of arm k has index
// 7 + 2k(n-1) + s(n-1) + (d-1). Left row of arm k is parallel to the right row
// of arm k+1.

struct StarIndex {
  std::size_t n;
  NodeId center() const { return 0; }
  NodeId inner(std::size_t arm) const { return 1 + arm; }
  NodeId origin(std::size_t arm) const { return 4 + arm; }
  NodeId row(std::size_t arm, std::size_t side, std::size_t d) const {
    return 7 + 2 * arm * (n - 1) + side * (n - 1) + (d - 1);
  }
  std::size_t point_count() const { return 6 * n + 1; }
};

inline std::vector<Point2D> star_points(std::size_t n, double r_inner, double r_outer) {
  const StarIndex idx{n};
  std::vector<Point2D> pts(idx.point_count());
  auto polar = [](double r, double deg) {
    const double a = deg * std::numbers::pi / 180.0;
    return Point2D{r * std::cos(a), r * std::sin(a)};
  };
  pts[idx.center()] = {0.0, 0.0};
  for (std::size_t arm = 0; arm < 3; ++arm) {
    const double angle = 30.0 + 120.0 * static_cast<double>(arm);
    pts[idx.inner(arm)] = polar(r_inner, angle);
    const Point2D o = polar(r_outer, angle);
    pts[idx.origin(arm)] = o;
    for (std::size_t side = 0; side < 2; ++side) {
      const Point2D dir = polar(1.0, side == 0 ? angle + 60.0 : angle - 60.0);
      for (std::size_t d = 1; d < n; ++d)
        pts[idx.row(arm, side, d)] = {o.x + static_cast<double>(d) * dir.x,
                                      o.y + static_cast<double>(d) * dir.y};
    }
  }
  return pts;
}

inline InstanceBundle gen_star(std::size_t n, MetricKind kind = MetricKind::euclidean,
                               double r_inner = 0.5, double r_outer = 1.0) {
  if (n < 2) throw InvalidInput("star needs n >= 2");
  if (!(r_inner > 0.0 && r_inner < r_outer)) throw InvalidInput("star needs 0 < r_inner < r_outer");
  if (kind == MetricKind::explicit_matrix) throw InvalidInput("star is a planar instance");
  const StarIndex idx{n};
  auto pts = star_points(n, r_inner, r_outer);

  InstanceBundle b;
  b.family = "star";
  b.params = {{"n", static_cast<double>(n)}, {"r_inner", r_inner}, {"r_outer", r_outer}};
  b.layout = pts;
  b.metric = MetricInstance::planar(kind, pts);
  b.root = idx.center();

  EdgeList mst;
  for (std::size_t arm = 0; arm < 3; ++arm) {
    mst.emplace_back(idx.center(), idx.inner(arm));
    mst.emplace_back(idx.inner(arm), idx.origin(arm));
    for (std::size_t side = 0; side < 2; ++side)
      for (std::size_t d = 1; d < n; ++d)
        mst.emplace_back(d == 1 ? idx.origin(arm) : idx.row(arm, side, d - 1), idx.row(arm, side, d));
  }
  b.expected_mst = sorted_edges(std::move(mst));

  // Adjacent parallel rows are joined at their far ends; the core is visited
  // once, between arm 2 and the left row of arm 2 (which is entered at its
  // near end).
  std::vector<NodeId> order;
  auto row_out = [&](std::size_t arm, std::size_t side) {
    for (std::size_t d = 1; d < n; ++d) order.push_back(idx.row(arm, side, d));
  };
  auto row_in = [&](std::size_t arm, std::size_t side) {
    for (std::size_t d = n - 1; d >= 1; --d) order.push_back(idx.row(arm, side, d));
  };
  row_in(1, 1);
  order.push_back(idx.origin(1));
  row_out(1, 0);
  row_in(2, 1);
  order.push_back(idx.origin(2));
  order.push_back(idx.inner(2));
  order.push_back(idx.center());
  order.push_back(idx.inner(1));
  order.push_back(idx.inner(0));
  row_out(2, 0);
  row_in(0, 1);
  order.push_back(idx.origin(0));
  row_out(0, 0);
  b.reference_tour = make_tour(order, b.metric);

  // Closed forms. The row directions are hexagon vertex directions, so unit
  // steps and the radial core edges keep their Euclidean length in both
  // metrics; the far-end joins and the inner chord run along edge-midpoint
  // directions, where the hexagonal gauge is 2/sqrt(3) times longer.
  const double nn = static_cast<double>(n);
  const double stretch = kind == MetricKind::hexagonal ? 2.0 / std::numbers::sqrt3 : 1.0;
  const double join = std::numbers::sqrt3 * r_outer * stretch;
  const double chord = std::numbers::sqrt3 * r_inner * stretch;
  const double dist_fn_bridge =
      kind == MetricKind::hexagonal
          ? hexagonal_distance(pts[idx.inner(0)], pts[idx.row(2, 0, 1)])
          : euclidean_distance(pts[idx.inner(0)], pts[idx.row(2, 0, 1)]);
  b.analytic["mst_weight"] = 3.0 * r_outer + 6.0 * (nn - 1.0);
  b.analytic["reference_weight"] = 6.0 * (nn - 2.0) + 3.0 * join + 5.0 + (r_outer - r_inner) +
                                   2.0 * r_inner + chord + dist_fn_bridge;
  b.analytic["predicted_min_dt_slope"] =
      kind == MetricKind::hexagonal ? 10.0 : 8.0 + std::numbers::sqrt3;
  b.analytic["predicted_ratio"] = b.analytic["predicted_min_dt_slope"] / 6.0;
  return b;
}

}  // namespace dtlab
