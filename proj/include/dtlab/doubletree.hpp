#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

/// Closed walk of the depth-first traversal of the doubled tree: 2n - 1
/// entries, first and last equal to the root.
inline std::vector<NodeId> double_tree_euler_walk(const RootedTree& t) {
  std::vector<NodeId> walk;
  walk.reserve(2 * t.size() - 1);
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  walk.push_back(t.root());
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < t.children(v).size()) {
      const NodeId c = t.children(v)[next++];
      walk.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().first);
    }
  }
  return walk;
}

inline double walk_weight(std::span<const NodeId> walk, const MetricInstance& m) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) total += m(walk[k], walk[k + 1]);
  return total;
}

/// Keeps the first occurrence of every node of a closed walk.
inline std::vector<NodeId> shortcut_first_occurrence(std::span<const NodeId> walk, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v : walk)
    if (!seen[v]) {
      seen[v] = true;
      order.push_back(v);
    }
  return order;
}

/// Depth-first double-tree shortcutting: the preorder of the tree as a cycle.
inline Tour depth_first_tour(const RootedTree& t, const MetricInstance& m) {
  if (t.size() != m.size()) throw InvalidInput("tree does not span the instance");
  return make_tour(t.preorder(), m);
}

/// True iff every subtree occupies one contiguous arc of the cyclic order,
/// which characterizes the shortcuttings of Euler tours of the doubled tree.
inline bool is_dt_shortcutting(const RootedTree& t, std::span<const NodeId> order) {
  const std::size_t n = t.size();
  if (!is_permutation_of_range(order, n))
    throw InvalidInput("tour is not a permutation of the tree's nodes");
  for (NodeId v = 0; v < n; ++v) {
    if (v == t.root() || t.subtree_size(v) == 1) continue;
    std::size_t boundary = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool here = t.in_subtree(order[k], v);
      const bool next = t.in_subtree(order[(k + 1) % n], v);
      if (here != next && ++boundary > 2) return false;
    }
  }
  return true;
}

inline bool is_dt_shortcutting(const RootedTree& t, const Tour& tour) {
  return is_dt_shortcutting(t, std::span<const NodeId>(tour.order));
}

inline constexpr std::size_t kMaxDtChildDegree = 12;

namespace detail {

// Minimum-weight double-tree shortcutting.
//
// Work happens in preorder positions, so subtree(v) is the interval
// [v, v + size(v)) and its blocks ({v} and one interval per child) are
// consecutive sub-intervals. For every non-root internal node the table
// holds P(i, j): the lightest Hamiltonian path of subtree(v) from i to j in
// which every sub-subtree is contiguous. Such a path is a concatenation of
// the blocks in some order, so P is defined exactly for i and j in
// different blocks, and is filled by a subset DP over blocks for each start.
// The root only needs the cycle, which can be cut just before the root.
class MinDtSolver {
 public:
  MinDtSolver(const RootedTree& t, const MetricInstance& m) : n_(t.size()) {
    const auto& pre = t.preorder();
    node_at_ = pre;
    dist_.resize(n_ * n_);
    for (std::size_t p = 0; p < n_; ++p) {
      const auto row = m.row(pre[p]);
      for (std::size_t q = 0; q < n_; ++q) dist_[p * n_ + q] = row[pre[q]];
    }
    size_.resize(n_);
    bounds_.resize(n_);
    for (std::size_t p = 0; p < n_; ++p) {
      const NodeId v = pre[p];
      size_[p] = t.subtree_size(v);
      auto& b = bounds_[p];
      b.push_back(p);
      b.push_back(p + 1);
      for (NodeId c : t.children(v)) b.push_back(t.preorder_index(c) + t.subtree_size(c));
    }
    tables_.resize(n_);
  }

  // Full P matrix of the subtree at preorder position v, indexed by local
  // position; infinity where i and j share a block.
  std::vector<double> path_matrix(std::size_t v) {
    for (std::size_t p = v + size_[v]; p-- > v;)
      if (tables_[p].values.empty()) build_table(p);
    const std::size_t s = size_[v];
    std::vector<double> out(s * s, inf);
    if (s == 1) {
      out[0] = 0.0;
      return out;
    }
    for (std::size_t i = v; i < v + s; ++i)
      for_each_pair(v, i, [&](std::size_t j, double w) { out[(i - v) * s + (j - v)] = w; });
    return out;
  }

  const std::vector<NodeId>& node_at() const noexcept { return node_at_; }

  std::vector<NodeId> solve() {
    if (n_ == 1) return {node_at_[0]};
    for (std::size_t p = n_; p-- > 1;) build_table(p);

    Run run;
    run_start(0, 0, run, true);
    const std::size_t full_row = (std::size_t{1} << run.blocks) - 1;
    double best = inf;
    std::size_t best_end = 0;
    for (std::size_t j = 1; j < n_; ++j) {
      const double w = run.f[full_row * n_ + j];
      if (w == inf) continue;
      const double cycle = w + d(j, 0);
      if (cycle < best) {
        best = cycle;
        best_end = j;
      }
    }
    std::vector<std::size_t> positions;
    positions.reserve(n_);
    trace(0, run, 0, best_end, positions);
    std::vector<NodeId> order(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) order[k] = node_at_[positions[k]];
    return order;
  }

 private:
  static constexpr double inf = std::numeric_limits<double>::infinity();

  struct Table {
    std::vector<std::size_t> row_offset;
    std::vector<double> values;
  };

  struct Run {
    std::size_t blocks = 0;
    std::size_t width = 0;  // subtree size
    std::vector<double> f;  // [mask][local exit]
    std::vector<std::uint32_t> entry, exit;
  };

  double d(std::size_t p, std::size_t q) const { return dist_[p * n_ + q]; }

  std::size_t block_of(std::size_t v, std::size_t pos) const {
    const auto& b = bounds_[v];
    return static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), pos) - b.begin()) - 1;
  }

  // Row of start i in the table of v: values for every j outside block(i).
  // Calls fn(j, value).
  template <class Fn>
  void for_each_pair(std::size_t v, std::size_t i, Fn&& fn) const {
    if (size_[v] == 1) {
      fn(v, 0.0);
      return;
    }
    const auto& tab = tables_[v];
    const std::size_t bi = block_of(v, i);
    const std::size_t lo = bounds_[v][bi], hi = bounds_[v][bi + 1];
    const double* row = tab.values.data() + tab.row_offset[i - v];
    std::size_t k = 0;
    for (std::size_t j = v; j < lo; ++j) fn(j, row[k++]);
    for (std::size_t j = hi; j < v + size_[v]; ++j) fn(j, row[k++]);
  }

  void run_start(std::size_t v, std::size_t i, Run& run, bool track) const {
    const auto& b = bounds_[v];
    const std::size_t nb = b.size() - 1;
    const std::size_t s = size_[v];
    const std::size_t masks = std::size_t{1} << nb;
    run.blocks = nb;
    run.width = s;
    run.f.assign(masks * s, inf);
    if (track) {
      run.entry.assign(masks * s, 0);
      run.exit.assign(masks * s, 0);
    }
    auto at = [&](std::size_t mask, std::size_t pos) -> double& { return run.f[mask * s + pos - v]; };

    const std::size_t bi = block_of(v, i);
    if (bi == 0) {
      at(std::size_t{1}, v) = 0.0;
    } else {
      const std::size_t mask = std::size_t{1} << bi;
      for_each_pair(b[bi], i, [&](std::size_t j, double w) { at(mask, j) = w; });
    }

    std::vector<double> g;
    std::vector<std::uint32_t> g_from;
    for (std::size_t mask = 1; mask + 1 < masks; ++mask) {
      if (!(mask >> bi & 1)) continue;
      for (std::size_t y = 0; y < nb; ++y) {
        if (mask >> y & 1) continue;
        const std::size_t ylo = b[y], yhi = b[y + 1];
        g.assign(yhi - ylo, inf);
        g_from.assign(yhi - ylo, 0);
        for (std::size_t z = 0; z < nb; ++z) {
          if (!(mask >> z & 1)) continue;
          for (std::size_t x = b[z]; x < b[z + 1]; ++x) {
            const double fx = at(mask, x);
            if (fx == inf) continue;
            const double* dx = dist_.data() + x * n_;
            for (std::size_t a = ylo; a < yhi; ++a) {
              const double cand = fx + dx[a];
              if (cand < g[a - ylo]) {
                g[a - ylo] = cand;
                g_from[a - ylo] = static_cast<std::uint32_t>(x - v);
              }
            }
          }
        }
        const std::size_t next = mask | std::size_t{1} << y;
        for (std::size_t a = ylo; a < yhi; ++a) {
          const double ga = g[a - ylo];
          if (ga == inf) continue;
          auto relax = [&](std::size_t j, double w) {
            const double cand = ga + w;
            double& slot = at(next, j);
            if (cand < slot) {
              slot = cand;
              if (track) {
                run.entry[next * s + j - v] = static_cast<std::uint32_t>(a - v);
                run.exit[next * s + j - v] = g_from[a - ylo];
              }
            }
          };
          // Block 0 is v alone, not the subtree rooted there.
          if (y == 0)
            relax(v, 0.0);
          else
            for_each_pair(ylo, a, relax);
        }
      }
    }
  }

  void build_table(std::size_t v) {
    const std::size_t s = size_[v];
    if (s == 1) return;
    auto& tab = tables_[v];
    tab.row_offset.resize(s);
    Run run;
    for (std::size_t li = 0; li < s; ++li) {
      const std::size_t i = v + li;
      run_start(v, i, run, false);
      const std::size_t full = (std::size_t{1} << run.blocks) - 1;
      const std::size_t bi = block_of(v, i);
      tab.row_offset[li] = tab.values.size();
      for (std::size_t j = v; j < v + s; ++j) {
        if (j >= bounds_[v][bi] && j < bounds_[v][bi + 1]) continue;
        tab.values.push_back(run.f[full * s + j - v]);
      }
    }
  }

  // Appends the positions of the optimal path from i to j over subtree(v).
  void reconstruct(std::size_t v, std::size_t i, std::size_t j, std::vector<std::size_t>& out) const {
    if (size_[v] == 1) {
      out.push_back(v);
      return;
    }
    Run run;
    run_start(v, i, run, true);
    trace(v, run, i, j, out);
  }

  void trace(std::size_t v, const Run& run, std::size_t i, std::size_t j,
             std::vector<std::size_t>& out) const {
    const std::size_t s = run.width;
    const std::size_t bi = block_of(v, i);
    std::size_t mask = (std::size_t{1} << run.blocks) - 1;
    std::size_t end = j;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> segments;  // block, from, to
    while (mask != (std::size_t{1} << bi)) {
      const std::size_t y = block_of(v, end);
      const std::size_t a = v + run.entry[mask * s + end - v];
      const std::size_t x = v + run.exit[mask * s + end - v];
      segments.emplace_back(y, a, end);
      mask ^= std::size_t{1} << y;
      end = x;
    }
    segments.emplace_back(bi, i, end);
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
      const auto [y, from, to] = *it;
      if (y == 0)
        out.push_back(v);
      else
        reconstruct(bounds_[v][y], from, to, out);
    }
  }

  std::size_t n_;
  std::vector<double> dist_;
  std::vector<NodeId> node_at_;
  std::vector<std::size_t> size_;
  std::vector<std::vector<std::size_t>> bounds_;
  std::vector<Table> tables_;
};

}  // namespace detail

/// P(i, j) for one subtree: the lightest Hamiltonian path of subtree(v) from
/// i to j keeping every sub-subtree contiguous. Nodes are listed in preorder;
/// entries are infinite when no such path exists (i and j in the same block).
struct DtPathTable {
  std::vector<NodeId> nodes;
  std::vector<double> values;  // row-major nodes.size()^2

  double operator()(std::size_t i, std::size_t j) const { return values[i * nodes.size() + j]; }
};

inline DtPathTable dt_path_table(const RootedTree& t, const MetricInstance& m, NodeId v) {
  if (t.size() != m.size()) throw InvalidInput("tree does not span the instance");
  if (v >= t.size()) throw InvalidInput("node out of range");
  detail::MinDtSolver solver(t, m);
  const std::size_t p = t.preorder_index(v);
  DtPathTable table;
  table.values = solver.path_matrix(p);
  const auto& at = solver.node_at();
  table.nodes.assign(at.begin() + p, at.begin() + p + t.subtree_size(v));
  return table;
}

/// Lightest tour among all shortcuttings of all Euler tours of the doubled
/// tree. Throws Infeasible if some node has more than kMaxDtChildDegree
/// children.
inline Tour min_weight_dt_tour(const RootedTree& t, const MetricInstance& m) {
  if (t.size() != m.size()) throw InvalidInput("tree does not span the instance");
  for (NodeId v = 0; v < t.size(); ++v)
    if (t.children(v).size() > kMaxDtChildDegree)
      throw Infeasible("node " + std::to_string(v) + " has " +
                       std::to_string(t.children(v).size()) + " children; the limit is " +
                       std::to_string(kMaxDtChildDegree));
  detail::MinDtSolver solver(t, m);
  return make_tour(solver.solve(), m);
}

}  // namespace dtlab
