#pragma once

#include <algorithm>
#include <cstdio>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dtlab/error.hpp"
#include "dtlab/metric.hpp"

namespace dtlab {

/// Closed-cycle weight of a node sequence, including the closing edge.
inline double tour_weight(std::span<const NodeId> order, const MetricInstance& m) {
  const std::size_t n = order.size();
  if (n < 2) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) total += m(order[k], order[k + 1]);
  return total + m(order[n - 1], order[0]);
}

/// Rotate to start at the smallest index, then pick the lexicographically
/// smaller of the two directions.
inline std::vector<NodeId> canonical_cycle(std::span<const NodeId> order) {
  const std::size_t n = order.size();
  if (n == 0) return {};
  const auto start = static_cast<std::size_t>(
      std::min_element(order.begin(), order.end()) - order.begin());
  std::vector<NodeId> fwd(n), bwd(n);
  for (std::size_t k = 0; k < n; ++k) {
    fwd[k] = order[(start + k) % n];
    bwd[k] = order[(start + n - k) % n];
  }
  return std::min(fwd, bwd);
}

inline bool is_permutation_of_range(std::span<const NodeId> order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (NodeId v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// A Hamiltonian cycle in canonical form with its cached weight.
struct Tour {
  std::vector<NodeId> order;
  double weight = 0.0;

  std::size_t size() const noexcept { return order.size(); }
  friend bool operator==(const Tour& a, const Tour& b) { return a.order == b.order; }
};

inline Tour make_tour(std::span<const NodeId> order, const MetricInstance& m) {
  if (!is_permutation_of_range(order, m.size()))
    throw InvalidInput("tour is not a permutation of the instance's nodes");
  Tour t;
  t.order = canonical_cycle(order);
  t.weight = tour_weight(t.order, m);
  return t;
}

inline std::string format_real(double x, int significant = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  return buf;
}

// `i0 i1 ... # weight=<w>` on one line.
inline void write_tour(std::ostream& os, const Tour& t) {
  for (std::size_t k = 0; k < t.order.size(); ++k) os << (k ? " " : "") << t.order[k];
  os << " # weight=" << format_real(t.weight) << '\n';
}

// Reads the node list of a serialized tour; the weight comment is ignored and
// recomputed against the metric by make_tour.
inline std::vector<NodeId> read_tour_order(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    std::istringstream ls(line.substr(0, hash));
    std::vector<NodeId> order;
    long long v;
    while (ls >> v) {
      if (v < 0) throw ParseError("negative node index in tour", 0);
      order.push_back(static_cast<NodeId>(v));
    }
    if (!ls.eof()) throw ParseError("non-numeric token in tour", 0);
    if (!order.empty()) return order;
  }
  throw ParseError("no tour found", 0);
}

}  // namespace dtlab
