#pragma once

// Brute-force ground truth. Everything here is deliberately naive and shares
// no code with the dynamic programs it is used to check, apart from the
// contiguity predicate that brute_min_dt filters with.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "dtlab/doubletree.hpp"
#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab::oracle {

inline constexpr std::size_t kHeldKarpMax = 16;
inline constexpr std::size_t kEnumerateDtMax = 8;
inline constexpr std::size_t kBruteMinDtMax = 9;

/// Exact TSP by bitmask dynamic programming over subsets containing node 0.
inline Tour held_karp(const MetricInstance& m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidInput("empty instance");
  if (n > kHeldKarpMax)
    throw Infeasible("held-karp supports at most " + std::to_string(kHeldKarpMax) + " nodes");
  if (n <= 3) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    return make_tour(order, m);
  }
  // Subsets of nodes 1..n-1; cost[S][j] = lightest path 0 -> ... -> j covering S.
  const std::size_t k = n - 1;
  const std::size_t subsets = std::size_t{1} << k;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(subsets * k, inf);
  std::vector<std::uint8_t> prev(subsets * k, 0);
  for (std::size_t j = 0; j < k; ++j) cost[(std::size_t{1} << j) * k + j] = m(0, j + 1);
  for (std::size_t S = 1; S < subsets; ++S) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!(S >> j & 1)) continue;
      const double cur = cost[S * k + j];
      if (cur == inf) continue;
      for (std::size_t nxt = 0; nxt < k; ++nxt) {
        if (S >> nxt & 1) continue;
        const std::size_t T = S | std::size_t{1} << nxt;
        const double cand = cur + m(j + 1, nxt + 1);
        if (cand < cost[T * k + nxt]) {
          cost[T * k + nxt] = cand;
          prev[T * k + nxt] = static_cast<std::uint8_t>(j);
        }
      }
    }
  }
  const std::size_t full = subsets - 1;
  double best = inf;
  std::size_t last = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double w = cost[full * k + j] + m(j + 1, 0);
    if (w < best) {
      best = w;
      last = j;
    }
  }
  std::vector<NodeId> order;
  std::size_t S = full;
  std::size_t j = last;
  while (true) {
    order.push_back(j + 1);
    const std::size_t without = S & ~(std::size_t{1} << j);
    if (!without) break;
    j = prev[S * k + j];
    S = without;
  }
  order.push_back(0);
  std::reverse(order.begin(), order.end());
  return make_tour(order, m);
}

/// Calls fn(order) for each canonical cyclic order of 0..n-1: node 0 first and
/// order[1] < order[n-1]. Returns the number visited.
inline std::size_t for_each_canonical_cycle(std::size_t n,
                                            const std::function<void(const std::vector<NodeId>&)>& fn) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  if (n <= 2) {
    fn(order);
    return 1;
  }
  std::size_t count = 0;
  do {
    if (order[1] < order[n - 1]) {
      fn(order);
      ++count;
    }
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return count;
}

/// Minimum over all (n-1)!/2 tours by enumeration.
inline Tour permutation_minimum(const MetricInstance& m) {
  if (m.size() > 11) throw Infeasible("permutation sweep limited to 11 nodes");
  Tour best;
  best.weight = std::numeric_limits<double>::infinity();
  for_each_canonical_cycle(m.size(), [&](const std::vector<NodeId>& order) {
    const double w = tour_weight(order, m);
    if (w < best.weight) {
      best.order = order;
      best.weight = w;
    }
  });
  return best;
}

namespace detail {

// All Euler tours of the doubled subtree of v, as closed walks v ... v.
inline std::vector<std::vector<NodeId>> euler_walks(const RootedTree& t, NodeId v) {
  std::vector<std::vector<std::vector<NodeId>>> child_walks;
  for (NodeId c : t.children(v)) child_walks.push_back(euler_walks(t, c));
  std::vector<std::size_t> perm(child_walks.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<NodeId>> out;
  do {
    // Cartesian product over the chosen walk of each child, in perm order.
    std::vector<std::vector<NodeId>> partial{{v}};
    for (std::size_t idx : perm) {
      std::vector<std::vector<NodeId>> grown;
      for (const auto& prefix : partial)
        for (const auto& w : child_walks[idx]) {
          auto seq = prefix;
          seq.insert(seq.end(), w.begin(), w.end());
          seq.push_back(v);
          grown.push_back(std::move(seq));
        }
      partial = std::move(grown);
    }
    for (auto& w : partial) out.push_back(std::move(w));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

/// Every tour reachable by picking an Euler tour of the doubled tree and then
/// keeping exactly one occurrence of each node. Canonical orders, deduplicated.
inline std::set<std::vector<NodeId>> enumerate_dt_tours(const RootedTree& t) {
  const std::size_t n = t.size();
  if (n > kEnumerateDtMax)
    throw Infeasible("enumeration supports at most " + std::to_string(kEnumerateDtMax) + " nodes");
  std::set<std::vector<NodeId>> tours;
  for (auto walk : detail::euler_walks(t, t.root())) {
    walk.pop_back();  // cyclic: the closing root repeats the first entry
    std::vector<std::vector<std::size_t>> occurrences(n);
    for (std::size_t k = 0; k < walk.size(); ++k) occurrences[walk[k]].push_back(k);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      std::vector<bool> keep(walk.size(), false);
      for (NodeId v = 0; v < n; ++v) keep[occurrences[v][choice[v]]] = true;
      std::vector<NodeId> order;
      for (std::size_t k = 0; k < walk.size(); ++k)
        if (keep[k]) order.push_back(walk[k]);
      if (is_permutation_of_range(order, n)) tours.insert(canonical_cycle(order));
      // Odometer over occurrence choices.
      NodeId v = 0;
      while (v < n && ++choice[v] == occurrences[v].size()) choice[v++] = 0;
      if (v == n) break;
    }
  }
  return tours;
}

/// Lightest tour among all permutations passing the contiguity filter.
inline Tour brute_min_dt(const RootedTree& t, const MetricInstance& m) {
  if (t.size() != m.size()) throw InvalidInput("tree does not span the instance");
  if (t.size() > kBruteMinDtMax)
    throw Infeasible("brute force supports at most " + std::to_string(kBruteMinDtMax) + " nodes");
  Tour best;
  best.weight = std::numeric_limits<double>::infinity();
  for_each_canonical_cycle(t.size(), [&](const std::vector<NodeId>& order) {
    if (!is_dt_shortcutting(t, order)) return;
    const double w = tour_weight(order, m);
    if (w < best.weight) {
      best.order = order;
      best.weight = w;
    }
  });
  return best;
}

}  // namespace dtlab::oracle
