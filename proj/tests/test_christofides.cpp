#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "dtlab/christofides.hpp"
#include "dtlab/instances.hpp"
#include "dtlab/oracle.hpp"
#include "test_support.hpp"

using namespace dtlab;
namespace ts = testing_support;

namespace {

// Minimum over all perfect matchings by recursive pairing.
double brute_matching(std::vector<NodeId> nodes, const MetricInstance& m) {
  if (nodes.empty()) return 0.0;
  const NodeId a = nodes.front();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    std::vector<NodeId> rest;
    for (std::size_t j = 1; j < nodes.size(); ++j)
      if (j != i) rest.push_back(nodes[j]);
    best = std::min(best, m(a, nodes[i]) + brute_matching(rest, m));
  }
  return best;
}

double matching_weight(const std::vector<std::pair<NodeId, NodeId>>& pairs, const MetricInstance& m) {
  double w = 0;
  for (auto [a, b] : pairs) w += m(a, b);
  return w;
}

}  // namespace

TEST(OddDegreeNodes, Examples) {
  EXPECT_EQ(odd_degree_nodes(RootedTree(0, {0, 0, 1, 2})), (std::vector<NodeId>{0, 3}));
  EXPECT_EQ(odd_degree_nodes(RootedTree(0, {0, 0, 0, 0})), (std::vector<NodeId>{0, 1, 2, 3}));
  for (std::size_t n : {2u, 4u, 10u}) {
    const auto b = gen_christofides_comb(n, 0.05);
    EXPECT_EQ(odd_degree_nodes(prim_mst(b.metric, b.root)).size(), 2u);
  }
}

TEST(OddDegreeNodes, AlwaysEvenCount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial)
    EXPECT_EQ(odd_degree_nodes(ts::random_tree(1 + trial, rng)).size() % 2, 0u);
}

TEST(ExactMatching, TwoNodes) {
  const auto m = MetricInstance::euclidean({{0, 0}, {1, 0}, {5, 5}});
  const auto r = exact_min_matching({0, 2}, m);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], std::make_pair(NodeId{0}, NodeId{2}));
}

TEST(ExactMatching, CollinearFour) {
  const auto m = MetricInstance::euclidean({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  auto r = exact_min_matching({0, 1, 2, 3}, m);
  std::sort(r.begin(), r.end());
  EXPECT_EQ(r, (std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {2, 3}}));
  EXPECT_DOUBLE_EQ(matching_weight(r, m), 2.0);
}

TEST(ExactMatching, MatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 * (1 + trial % 5);
    const auto m = ts::random_euclidean(k + 3, rng);
    std::vector<NodeId> nodes(k);
    std::iota(nodes.begin(), nodes.end(), NodeId{3});
    const auto r = exact_min_matching(nodes, m);
    ASSERT_EQ(r.size(), k / 2);
    EXPECT_NEAR(matching_weight(r, m), brute_matching(nodes, m), 1e-9);
  }
}

TEST(ExactMatching, Guards) {
  std::mt19937_64 rng(5);
  const auto m = ts::random_euclidean(20, rng);
  EXPECT_THROW(exact_min_matching({0, 1, 2}, m), InvalidInput);
  std::vector<NodeId> twenty(20);
  std::iota(twenty.begin(), twenty.end(), NodeId{0});
  try {
    exact_min_matching(twenty, m);
    FAIL();
  } catch (const Infeasible& e) {
    EXPECT_STREQ(e.what(), "matching too large for exact solver");
  }
}

TEST(EulerTour, DoubledPath) {
  Multigraph g(3);
  g.add_edge(0, 1, 1, 2);
  g.add_edge(1, 2, 1, 2);
  EXPECT_EQ(euler_tour(g), (std::vector<NodeId>{0, 1, 2, 1, 0}));
}

TEST(EulerTour, Triangle) {
  Multigraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, 1);
  EXPECT_EQ(euler_tour(g), (std::vector<NodeId>{0, 1, 2, 0}));
}

TEST(EulerTour, UsesEveryEdgeItsMultiplicity) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const auto t = ts::random_tree(n, rng);
    Multigraph g(n);
    for (auto [a, b] : t.edges()) g.add_edge(a, b, 1, 2);
    // Extra doubled chords keep degrees even.
    for (int e = 0; e < 3; ++e) {
      const NodeId a = rng() % n, b = rng() % n;
      if (a != b) g.add_edge(a, b, 1, 2);
    }
    const auto walk = euler_tour(g);
    ASSERT_EQ(walk.front(), walk.back());
    std::map<std::pair<NodeId, NodeId>, std::size_t> used;
    for (std::size_t k = 0; k + 1 < walk.size(); ++k) ++used[std::minmax(walk[k], walk[k + 1])];
    std::map<std::pair<NodeId, NodeId>, std::size_t> expected;
    for (const auto& e : g.edges()) expected[std::minmax(e.u, e.v)] += e.multiplicity;
    EXPECT_EQ(used, expected);
  }
}

TEST(EulerTour, Errors) {
  Multigraph odd(3);
  odd.add_edge(0, 1, 1);
  EXPECT_THROW(euler_tour(odd), InvalidInput);
  Multigraph split(6);
  for (NodeId s : {0u, 3u}) {
    split.add_edge(s, s + 1, 1);
    split.add_edge(s + 1, s + 2, 1);
    split.add_edge(s + 2, s, 1);
  }
  EXPECT_THROW(euler_tour(split), InvalidInput);
}

TEST(Christofides, EquilateralTriangle) {
  const auto m = MetricInstance::euclidean({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
  const auto t = christofides_tour(m);
  EXPECT_NEAR(t.weight, 3.0, 1e-12);
  EXPECT_NEAR(t.weight / oracle::held_karp(m).weight, 1.0, 1e-12);
}

TEST(Christofides, CombWindow) {
  const auto b = gen_christofides_comb(100, 0.01);
  const auto r = christofides(b.metric, b.root);
  const double ratio = r.tour.weight / b.reference_tour.weight;
  EXPECT_GE(ratio, 1.42);
  EXPECT_LE(ratio, 1.5);
  EXPECT_EQ(r.matching.size(), 1u);
  // Already Hamiltonian: every node once, plus the closing repeat.
  EXPECT_EQ(r.euler_walk.size(), b.metric.size() + 1);
  EXPECT_NEAR(r.tour.weight, r.walk_weight, 1e-9);
}

TEST(Christofides, MultigraphDegreesAllTwoOnComb) {
  const auto b = gen_christofides_comb(20, 0.05);
  const auto r = christofides(b.metric, b.root);
  Multigraph g(b.metric.size());
  for (auto [a, c] : r.tree.edges()) g.add_edge(a, c, b.metric(a, c));
  for (auto [a, c] : r.matching) g.add_edge(a, c, b.metric(a, c));
  for (auto d : g.degrees()) EXPECT_EQ(d, 2u);
}

TEST(Christofides, WithinOneAndAHalfOfOptimum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + trial % 9;
    const auto m = trial % 2 ? ts::random_euclidean(n, rng) : ts::random_matrix_metric(n, rng);
    EXPECT_LE(christofides_tour(m).weight, 1.5 * oracle::held_karp(m).weight + 1e-9);
  }
}

TEST(Christofides, TenRandomPoints) {
  std::mt19937_64 rng(9);
  const auto m = ts::random_euclidean(10, rng);
  EXPECT_LE(christofides_tour(m).weight, 1.5 * oracle::held_karp(m).weight + 1e-9);
}

TEST(Christofides, ShortcuttingNeverIncreasesWalk) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = ts::random_euclidean(30, rng);
    const auto r = christofides(m);
    EXPECT_LE(r.tour.weight, r.walk_weight + 1e-9);
  }
}
