// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dtlab/dtlab.hpp"
#include "test_support.hpp"

using namespace dtlab;
namespace ts = testing_support;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Any exception inside a criterion counts as a failure of that criterion.
void run(const char* id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double min_dt(const InstanceBundle& b) { return min_weight_dt_tour(prim_mst(b.metric, b.root), b.metric).weight; }

std::vector<InstanceBundle> generated;  // everything built here, for AC-8

const InstanceBundle& keep(InstanceBundle b) {
  generated.push_back(std::move(b));
  return generated.back();
}

void ac1() {
  bool ok = true;
  std::string detail;
  double prev = 0, last = 0;
  for (std::size_t k = 5; k <= 8; ++k) {
    const auto& b = keep(gen_twin_trees(k));
    const double n = std::ldexp(1.0, static_cast<int>(k));
    const double dt = min_dt(b);
    const double ratio = dt / b.reference_tour.weight;
    const double floor = 4 * n - 4 * (2 * k + 2);
    ok = ok && ratio >= prev && dt >= floor - 1e-9;
    detail += "k=" + std::to_string(k) + " ratio " + fmt("%.4f", ratio) + " (dt " + fmt("%.1f", dt) + " >= " +
              fmt("%.0f", floor) + "); ";
    prev = last = ratio;
  }
  ok = ok && last >= 1.85;
  report("AC-1", ok, detail + "need ratio >= 1.85 at k=8");
}

void star_sweep(const char* id, MetricKind kind, double slope, double lo, double hi) {
  bool ok = true;
  std::string detail;
  double prev = 0;
  for (std::size_t n : {25u, 50u, 100u, 200u}) {
    const auto& b = keep(gen_star(n, kind));
    const double dt = min_dt(b);
    const double ratio = dt / b.reference_tour.weight;
    ok = ok && ratio > prev;
    prev = ratio;
    detail += "n=" + std::to_string(n) + " ratio " + fmt("%.4f", ratio) + "; ";
    if (n == 200) {
      const double per = dt / n;
      ok = ok && per >= 0.98 * slope && per <= 1.02 * slope && ratio >= lo && ratio <= hi;
      detail += "dt/n " + fmt("%.3f", per) + " vs " + fmt("%.3f", slope);
    }
  }
  report(id, ok, detail);
}

void ac4() {
  const auto& b = keep(gen_comb(100, 0.01));
  const auto t = prim_mst(b.metric, b.root);
  const double ref = b.reference_tour.weight;
  const double df = depth_first_tour(t, b.metric).weight / ref;
  const double dt = min_weight_dt_tour(t, b.metric).weight;
  const bool perimeter_ok = is_dt_shortcutting(t, b.reference_tour.order);
  const bool ok = df >= 1.9 && dt / ref <= 1.05 && perimeter_ok && dt <= ref;
  report("AC-4", ok,
         "df ratio " + fmt("%.4f", df) + ", min-dt ratio " + fmt("%.4f", dt / ref) +
             (perimeter_ok ? ", perimeter is a shortcutting" : ", perimeter NOT a shortcutting"));
}

void ac5() {
  const auto& b = keep(gen_christofides_comb(100, 0.01));
  const auto r = christofides(b.metric, b.root);
  const double ratio = r.tour.weight / b.reference_tour.weight;
  const std::size_t odd = odd_degree_nodes(r.tree).size();
  const std::set<NodeId> seen(r.euler_walk.begin(), r.euler_walk.end() - 1);
  const bool hamiltonian = r.euler_walk.size() == b.metric.size() + 1 && seen.size() == b.metric.size();
  report("AC-5", ratio >= 1.42 && ratio <= 1.5 && odd == 2 && hamiltonian,
         "ratio " + fmt("%.4f", ratio) + ", odd nodes " + std::to_string(odd) +
             (hamiltonian ? ", walk Hamiltonian" : ", walk repeats nodes"));
}

void ac6() {
  std::mt19937_64 rng(20240601);
  std::size_t dp_bad = 0, hk_bad = 0;
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 5 + i % 5;
    const auto m = i % 2 ? ts::random_euclidean(n, rng) : ts::random_matrix_metric(n, rng);
    const auto t = prim_mst(m, static_cast<NodeId>(rng() % n));
    const double diff = std::abs(min_weight_dt_tour(t, m).weight - oracle::brute_min_dt(t, m).weight);
    worst = std::max(worst, diff);
    if (diff > 1e-9) ++dp_bad;
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 3 + i % 6;
    const auto m = i % 2 ? ts::random_euclidean(n, rng) : ts::random_matrix_metric(n, rng);
    if (std::abs(oracle::held_karp(m).weight - oracle::permutation_minimum(m).weight) > 1e-9) ++hk_bad;
  }
  report("AC-6", dp_bad == 0 && hk_bad == 0,
         "min-dt vs brute: " + std::to_string(dp_bad) + "/200 off (max diff " + fmt("%.2e", worst) +
             "); held-karp vs permutations: " + std::to_string(hk_bad) + "/50 off");
}

void ac7() {
  std::mt19937_64 rng(7);
  std::size_t bad = 0;
  for (int i = 0; i < 50; ++i) {
    const auto t = ts::random_tree(2 + i % 6, rng);
    std::set<std::vector<NodeId>> filtered;
    oracle::for_each_canonical_cycle(t.size(), [&](const std::vector<NodeId>& order) {
      if (is_dt_shortcutting(t, order)) filtered.insert(order);
    });
    if (oracle::enumerate_dt_tours(t) != filtered) ++bad;
  }
  report("AC-7", bad == 0, std::to_string(bad) + "/50 trees differ");
}

void ac8() {
  // Small members of every family, plus random instances.
  for (std::size_t n : {2u, 3u}) keep(gen_comb(n));
  keep(gen_christofides_comb(2, 0.1));
  keep(gen_christofides_comb(4, 0.1));
  keep(gen_twin_trees(2));
  keep(gen_twin_trees(3));
  for (auto kind : {MetricKind::euclidean, MetricKind::hexagonal}) keep(gen_star(2, kind));
  std::vector<MetricInstance> small;
  for (const auto& b : generated)
    if (b.metric.size() <= 12) small.push_back(b.metric);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 4 + i % 9;
    small.push_back(i % 2 ? ts::random_euclidean(n, rng) : ts::random_matrix_metric(n, rng));
  }

  std::size_t not_metric = 0;
  for (const auto& b : generated)
    if (!verify_metric(b.metric).ok) ++not_metric;
  std::size_t dt_bad = 0, chr_bad = 0;
  for (const auto& m : small) {
    const double opt = oracle::held_karp(m).weight;
    if (min_weight_dt_tour(prim_mst(m, 0), m).weight > 2 * opt + 1e-9) ++dt_bad;
    if (christofides_tour(m).weight > 1.5 * opt + 1e-9) ++chr_bad;
  }
  report("AC-8", not_metric == 0 && dt_bad == 0 && chr_bad == 0,
         std::to_string(generated.size()) + " generated instances, " + std::to_string(not_metric) +
             " not metric; " + std::to_string(small.size()) + " with n <= 12: " + std::to_string(dt_bad) +
             " min-dt > 2 OPT, " + std::to_string(chr_bad) + " christofides > 1.5 OPT");
}

}  // namespace

int main() {
  generated.reserve(64);
  run("AC-1", ac1);
  run("AC-2", [] { star_sweep("AC-2", MetricKind::euclidean, 8 + std::sqrt(3.0), 1.58, 1.6221); });
  run("AC-3", [] { star_sweep("AC-3", MetricKind::hexagonal, 10.0, 1.62, 1.6667); });
  run("AC-4", ac4);
  run("AC-5", ac5);
  run("AC-6", ac6);
  run("AC-7", ac7);
  run("AC-8", ac8);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures ? 1 : 0;
}
