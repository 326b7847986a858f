#pragma once

// Method dispatch, experiment records and the parallel size sweep.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtlab/christofides.hpp"
#include "dtlab/doubletree.hpp"
#include "dtlab/error.hpp"
#include "dtlab/instances.hpp"
#include "dtlab/oracle.hpp"
#include "dtlab/spanning.hpp"
#include "dtlab/tour.hpp"

namespace dtlab {

inline const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"christofides", "df-dt", "held-karp", "min-dt"};
  return names;
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"christofides-comb", "comb", "star", "twin-trees"};
  return names;
}

inline bool is_method(const std::string& m) {
  const auto& all = method_names();
  return std::find(all.begin(), all.end(), m) != all.end();
}

/// Runs one method on an instance, rooting the MST at `root`.
inline Tour run_method(const std::string& method, const MetricInstance& m, NodeId root) {
  if (method == "min-dt") return min_weight_dt_tour(prim_mst(m, root), m);
  if (method == "df-dt") return depth_first_tour(prim_mst(m, root), m);
  if (method == "christofides") return christofides(m, root).tour;
  if (method == "held-karp") return oracle::held_karp(m);
  throw InvalidInput("unknown method `" + method + "`");
}

/// Generator parameters shared by the CLI and the sweep. `size` is n for the
/// planar families and k (n = 2^k) for twin trees.
struct FamilySpec {
  std::string family;
  std::size_t size = 0;
  MetricKind kind = MetricKind::euclidean;
  std::optional<double> eps;
  double r_inner = 0.5;
  double r_outer = 1.0;
};

inline InstanceBundle generate(const FamilySpec& s) {
  if (s.kind == MetricKind::explicit_matrix && s.family != "twin-trees")
    throw InvalidInput(s.family + " is a planar family");
  if (s.family == "twin-trees") {
    if (s.kind != MetricKind::explicit_matrix && s.kind != MetricKind::euclidean)
      throw InvalidInput("twin-trees lives in a shortest-path metric");
    return gen_twin_trees(s.size, s.eps);
  }
  if (s.family == "comb") return gen_comb(s.size, s.eps, s.kind);
  if (s.family == "christofides-comb") return gen_christofides_comb(s.size, s.eps, s.kind);
  if (s.family == "star") return gen_star(s.size, s.kind, s.r_inner, s.r_outer);
  throw InvalidInput("unknown family `" + s.family + "`");
}

// Family size column of a bundle: n of the construction (2^k for twin trees).
inline std::size_t family_n(const InstanceBundle& b) {
  const auto it = b.params.find("n");
  return it == b.params.end() ? b.metric.size() : static_cast<std::size_t>(it->second);
}

struct ExperimentRecord {
  std::string family;
  std::string metric_name;
  std::size_t n = 0;
  std::string method;
  double tour_weight = 0.0;
  double reference_weight = 0.0;
  double ratio = 0.0;
  double wall_time = 0.0;  // seconds
  std::string skipped;     // non-empty: the cell was not computed, and why
};

inline nlohmann::json to_json(const ExperimentRecord& r) {
  nlohmann::json j{{"family", r.family},           {"metric", r.metric_name},
                   {"n", r.n},                     {"method", r.method},
                   {"tour_weight", r.tour_weight}, {"reference_weight", r.reference_weight},
                   {"ratio", r.ratio},             {"wall_time_s", r.wall_time}};
  if (!r.skipped.empty()) j["skipped"] = r.skipped;
  return j;
}

/// Reference weight for ratios: the bundle's reference tour, or the exact
/// optimum when `exact` is set and the instance is small enough.
inline double reference_weight(const InstanceBundle& b, bool exact) {
  if (exact) {
    if (b.metric.size() > oracle::kHeldKarpMax)
      throw Infeasible("--exact needs at most " + std::to_string(oracle::kHeldKarpMax) + " nodes");
    return oracle::held_karp(b.metric).weight;
  }
  if (b.reference_tour.order.empty()) throw InvalidInput("instance has no reference tour");
  return b.reference_tour.weight;
}

inline ExperimentRecord run_experiment(const InstanceBundle& b, const std::string& method, bool exact,
                                       Tour* tour_out = nullptr) {
  ExperimentRecord r;
  r.family = b.family;
  r.metric_name = to_string(b.metric.kind());
  r.n = family_n(b);
  r.method = method;
  r.reference_weight = reference_weight(b, exact);
  const auto start = std::chrono::steady_clock::now();
  Tour t = run_method(method, b.metric, b.root);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.tour_weight = t.weight;
  r.ratio = r.tour_weight / r.reference_weight;
  if (tour_out) *tour_out = std::move(t);
  return r;
}

inline constexpr const char* kCsvHeader = "family,metric,n,method,tour_weight,reference_weight,ratio,wall_time_s";

inline void write_csv_row(std::ostream& os, const ExperimentRecord& r) {
  os << r.family << ',' << r.metric_name << ',' << r.n << ',' << r.method << ',';
  if (!r.skipped.empty()) {
    os << "NA," << format_real(r.reference_weight) << ",NA,NA\n";
    return;
  }
  os << format_real(r.tour_weight) << ',' << format_real(r.reference_weight) << ','
     << format_real(r.ratio) << ',' << format_real(r.wall_time, 6) << '\n';
}

/// Worker count: DTLAB_THREADS if set to a positive integer, else the
/// hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("DTLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// One record per (size, method), sorted by n then method. Cells whose method
/// trips a guard come back with `skipped` set.
inline std::vector<ExperimentRecord> sweep(const FamilySpec& base, const std::vector<std::size_t>& sizes,
                                           const std::vector<std::string>& methods, bool exact,
                                           std::size_t workers = worker_count()) {
  for (const auto& m : methods)
    if (!is_method(m)) throw InvalidInput("unknown method `" + m + "`");
  // Bundles are generated up front so parameter errors surface before work starts.
  std::vector<InstanceBundle> bundles;
  for (std::size_t s : sizes) {
    FamilySpec spec = base;
    spec.size = s;
    bundles.push_back(generate(spec));
  }
  struct Cell {
    std::size_t bundle;
    std::string method;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < bundles.size(); ++i)
    for (const auto& m : methods) cells.push_back({i, m});

  std::vector<ExperimentRecord> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t c; (c = next++) < cells.size();) {
      const auto& b = bundles[cells[c].bundle];
      try {
        rows[c] = run_experiment(b, cells[c].method, exact);
      } catch (const Infeasible& e) {
        ExperimentRecord r;
        r.family = b.family;
        r.metric_name = to_string(b.metric.kind());
        r.n = family_n(b);
        r.method = cells[c].method;
        r.reference_weight = b.reference_tour.weight;
        r.skipped = e.what();
        rows[c] = std::move(r);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.n, a.method) < std::tie(b.n, b.method);
  });
  return rows;
}

}  // namespace dtlab
