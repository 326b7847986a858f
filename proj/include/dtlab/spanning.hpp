#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"

namespace dtlab {

/// Rooted spanning tree. Children are kept in ascending node order; that
/// order is the traversal order of every depth-first procedure. Each subtree
/// occupies the preorder interval [preorder_index(v), preorder_index(v) + subtree_size(v)).
class RootedTree {
 public:
  RootedTree() = default;

  // parent[root] must equal root. Throws InvalidInput unless the array
  // describes a single tree spanning all nodes.
  RootedTree(NodeId root, std::vector<NodeId> parent) : root_(root), parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    if (n == 0) throw InvalidInput("tree has no nodes");
    if (root_ >= n || parent_[root_] != root_) throw InvalidInput("parent[root] must be root");
    children_.assign(n, {});
    for (NodeId v = 0; v < n; ++v) {
      if (parent_[v] >= n) throw InvalidInput("parent index out of range");
      if (v != root_) {
        if (parent_[v] == v) throw InvalidInput("second root at node " + std::to_string(v));
        children_[parent_[v]].push_back(v);
      }
    }
    // Children are pushed in ascending order already.
    preorder_.reserve(n);
    pre_index_.assign(n, n);
    subtree_size_.assign(n, 1);
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    pre_index_[root_] = 0;
    preorder_.push_back(root_);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < children_[v].size()) {
        const NodeId c = children_[v][next++];
        pre_index_[c] = preorder_.size();
        preorder_.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        const NodeId done = v;
        stack.pop_back();
        if (!stack.empty()) subtree_size_[stack.back().first] += subtree_size_[done];
      }
    }
    if (preorder_.size() != n) throw InvalidInput("parent array has a cycle or is disconnected");
  }

  std::size_t size() const noexcept { return parent_.size(); }
  NodeId root() const noexcept { return root_; }
  NodeId parent(NodeId v) const noexcept { return parent_[v]; }
  const std::vector<NodeId>& parents() const noexcept { return parent_; }
  const std::vector<NodeId>& children(NodeId v) const noexcept { return children_[v]; }
  std::size_t subtree_size(NodeId v) const noexcept { return subtree_size_[v]; }
  std::size_t preorder_index(NodeId v) const noexcept { return pre_index_[v]; }
  const std::vector<NodeId>& preorder() const noexcept { return preorder_; }

  bool in_subtree(NodeId u, NodeId v) const noexcept {
    return pre_index_[u] >= pre_index_[v] && pre_index_[u] < pre_index_[v] + subtree_size_[v];
  }

  std::size_t degree(NodeId v) const noexcept {
    return children_[v].size() + (v == root_ ? 0 : 1);
  }

  // Undirected tree edges as (min, max) pairs, sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId v = 0; v < size(); ++v)
      if (v != root_) out.emplace_back(std::min(v, parent_[v]), std::max(v, parent_[v]));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Same undirected tree hung from another node.
  RootedTree rerooted(NodeId new_root) const {
    if (new_root >= size()) throw InvalidInput("root out of range");
    std::vector<NodeId> parent = parent_;
    NodeId prev = new_root;
    NodeId cur = new_root;
    while (true) {
      const NodeId up = parent_[cur];
      parent[cur] = prev;
      if (cur == root_) break;
      prev = cur;
      cur = up;
    }
    return RootedTree(new_root, std::move(parent));
  }

 private:
  NodeId root_ = 0;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::size_t> subtree_size_;
  std::vector<std::size_t> pre_index_;
  std::vector<NodeId> preorder_;
};

/// Dense O(n^2) Prim. Among equal-weight frontier edges the one with the
/// smallest (weight, child index, parent index) key is attached; weights are
/// compared exactly.
inline RootedTree prim_mst(const MetricInstance& m, NodeId root = 0) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidInput("empty instance");
  if (root >= n) throw InvalidInput("root out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> key(n, inf);
  std::vector<NodeId> via(n, n);
  std::vector<bool> in_tree(n, false);
  std::vector<NodeId> parent(n, root);

  NodeId added = root;
  in_tree[root] = true;
  for (std::size_t step = 1; step < n; ++step) {
    const auto row = m.row(added);
    for (NodeId u = 0; u < n; ++u) {
      if (in_tree[u]) continue;
      const double d = row[u];
      if (d < key[u] || (d == key[u] && added < via[u])) {
        key[u] = d;
        via[u] = added;
      }
    }
    NodeId best = n;
    for (NodeId u = 0; u < n; ++u)
      if (!in_tree[u] && (best == n || key[u] < key[best])) best = u;
    in_tree[best] = true;
    parent[best] = via[best];
    added = best;
  }
  return RootedTree(root, std::move(parent));
}

inline double tree_weight(const RootedTree& t, const MetricInstance& m) {
  double total = 0.0;
  for (NodeId v = 0; v < t.size(); ++v)
    if (v != t.root()) total += m(t.parent(v), v);
  return total;
}

inline std::size_t max_child_degree(const RootedTree& t) {
  std::size_t d = 0;
  for (NodeId v = 0; v < t.size(); ++v) d = std::max(d, t.children(v).size());
  return d;
}

// One `node parent` line per node.
inline void write_tree_dump(std::ostream& os, const RootedTree& t) {
  for (NodeId v = 0; v < t.size(); ++v) os << v << ' ' << t.parent(v) << '\n';
}

}  // namespace dtlab
