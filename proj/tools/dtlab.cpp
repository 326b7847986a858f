// dtlab: generate lower-bound instances, run tour methods, sweep sizes and
// draw SVG figures.
//
// Exit codes: 0 success, 1 usage error, 2 a size or degree guard tripped,
// 3 selftest mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtlab/dtlab.hpp"

namespace fs = std::filesystem;
using namespace dtlab;

namespace {

constexpr int kUsage = 1;
constexpr int kInfeasible = 2;
constexpr int kSelftestFailed = 3;

MetricKind parse_metric(const std::string& s) {
  if (s == "euclidean") return MetricKind::euclidean;
  if (s == "hexagonal") return MetricKind::hexagonal;
  if (s == "explicit") return MetricKind::explicit_matrix;
  throw InvalidInput("unknown metric `" + s + "`");
}

// "25,50,100" or "4..8".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& tok) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::logic_error&) {
    }
    if (v < 0 || used != tok.size()) throw InvalidInput("bad size `" + tok + "`");
    return static_cast<std::size_t>(v);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo > hi) throw InvalidInput("empty size range `" + text + "`");
    for (std::size_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  if (out.empty()) throw InvalidInput("no sizes given");
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

struct GenOptions {
  std::string family;
  std::size_t n = 0, k = 0;
  double eps = 0.0;
  std::string metric = "euclidean";
  double r_inner = 0.5, r_outer = 1.0;
  std::string out;
};

int cmd_gen(const GenOptions& o, const CLI::App& sub) {
  FamilySpec spec;
  spec.family = o.family;
  spec.kind = parse_metric(o.metric);
  if (o.family == "twin-trees") {
    if (sub.count("--n")) throw InvalidInput("twin-trees takes --k, not --n");
    if (!sub.count("--k")) throw InvalidInput("twin-trees needs --k");
    spec.size = o.k;
    spec.kind = MetricKind::explicit_matrix;
  } else {
    if (sub.count("--k")) throw InvalidInput(o.family + " takes --n, not --k");
    if (!sub.count("--n")) throw InvalidInput(o.family + " needs --n");
    spec.size = o.n;
  }
  if (sub.count("--eps")) spec.eps = o.eps;
  spec.r_inner = o.r_inner;
  spec.r_outer = o.r_outer;
  const auto bundle = generate(spec);
  const fs::path out = o.out.empty() ? fs::path(o.family + std::to_string(spec.size) + ".tsp") : fs::path(o.out);
  write_bundle(out, bundle);
  std::cout << out.string() << ": " << bundle.metric.size() << " nodes\n";
  return 0;
}

struct SolveOptions {
  std::string instance;
  std::string method;
  std::string root = "instance";
  bool exact = false;
  std::string tour_out;
};

int cmd_solve(const SolveOptions& o) {
  auto bundle = read_bundle(o.instance);
  if (o.root != "instance") {
    std::size_t used = 0;
    long long r = -1;
    try {
      r = std::stoll(o.root, &used);
    } catch (const std::logic_error&) {
    }
    if (r < 0 || used != o.root.size() || static_cast<std::size_t>(r) >= bundle.metric.size())
      throw InvalidInput("--root must be `instance` or a node index below " +
                         std::to_string(bundle.metric.size()));
    bundle.root = static_cast<NodeId>(r);
  }
  const bool have_reference = o.exact || !bundle.reference_tour.order.empty();
  Tour tour;
  nlohmann::json record;
  if (have_reference) {
    record = to_json(run_experiment(bundle, o.method, o.exact, &tour));
  } else {
    // No sidecar: still solve, but there is nothing to compare against.
    ExperimentRecord r;
    r.family = bundle.family;
    r.metric_name = to_string(bundle.metric.kind());
    r.n = bundle.metric.size();
    r.method = o.method;
    tour = run_method(o.method, bundle.metric, bundle.root);
    r.tour_weight = tour.weight;
    record = to_json(r);
    record["reference_weight"] = nullptr;
    record["ratio"] = nullptr;
  }
  fs::path out = o.tour_out;
  if (out.empty()) {
    out = o.instance;
    out.replace_extension("." + o.method + ".tour");
  }
  std::ofstream os(out);
  if (!os) throw InvalidInput("cannot write " + out.string());
  write_tour(os, tour);
  record["tour_file"] = out.string();
  std::cout << record.dump() << '\n';
  return 0;
}

struct SweepOptions {
  std::string family;
  std::string sizes;
  std::string metric = "euclidean";
  std::string methods = "min-dt";
  bool exact = false;
  double eps = 0.0;
  std::string out;
};

int cmd_sweep(const SweepOptions& o, const CLI::App& sub) {
  FamilySpec base;
  base.family = o.family;
  base.kind = parse_metric(o.metric);
  if (o.family == "twin-trees") {
    if (base.kind == MetricKind::hexagonal) throw InvalidInput("hexagonal metric needs a planar family");
    base.kind = MetricKind::explicit_matrix;
  } else if (base.kind == MetricKind::explicit_matrix) {
    throw InvalidInput(o.family + " is a planar family");
  }
  if (sub.count("--eps")) base.eps = o.eps;
  const auto rows = sweep(base, parse_sizes(o.sizes), split_commas(o.methods), o.exact);

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw InvalidInput("cannot write " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    if (!r.skipped.empty())
      std::cerr << "warning: skipped " << r.method << " at n=" << r.n << ": " << r.skipped << '\n';
    write_csv_row(os, r);
  }
  return 0;
}

struct RenderOptions {
  std::string instance;
  std::vector<std::string> tours;
  std::string out;
  std::string edges_out;
  bool no_tree = false;
};

int cmd_render(const RenderOptions& o) {
  const auto bundle = read_bundle(o.instance);
  if (bundle.layout.size() != bundle.metric.size())
    throw InvalidInput(o.instance + " is a matrix instance without layout coordinates");
  std::vector<Tour> tours;
  for (const auto& path : o.tours) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    tours.push_back(make_tour(read_tour_order(in), bundle.metric));
  }
  const RootedTree tree = prim_mst(bundle.metric, bundle.root);
  const RootedTree* drawn = o.no_tree ? nullptr : &tree;
  std::ofstream svg(o.out);
  if (!svg) throw InvalidInput("cannot write " + o.out);
  svg << render_svg(bundle, drawn, tours);
  if (!o.edges_out.empty()) {
    std::ofstream edges(o.edges_out);
    if (!edges) throw InvalidInput("cannot write " + o.edges_out);
    for (const auto& e : drawn_edges(bundle, drawn, tours)) edges << e.layer << ' ' << e.a << ' ' << e.b << '\n';
  }
  return 0;
}

// Quick oracle equivalence on random small instances.
int cmd_selftest(std::size_t trials, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t failures = 0;
  auto random_instance = [&](std::size_t n, bool planar) {
    if (planar) {
      std::vector<Point2D> pts(n);
      for (auto& p : pts) p = {unit(rng), unit(rng)};
      return MetricInstance::euclidean(std::move(pts));
    }
    WeightedGraph g;
    g.node_count = n;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v, 1.0 + 9.0 * unit(rng));
    return shortest_path_metric(g);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 5 + t % 5;
    const auto m = random_instance(n, t % 2 == 0);
    const auto tree = prim_mst(m, static_cast<NodeId>(rng() % n));
    const double dp = min_weight_dt_tour(tree, m).weight;
    const double brute = oracle::brute_min_dt(tree, m).weight;
    if (std::abs(dp - brute) > 1e-9) {
      ++failures;
      std::cout << "min-dt mismatch (n=" << n << "): " << format_real(dp) << " vs " << format_real(brute) << '\n';
    }
    const double hk = oracle::held_karp(m).weight;
    const double perm = oracle::permutation_minimum(m).weight;
    if (std::abs(hk - perm) > 1e-9) {
      ++failures;
      std::cout << "held-karp mismatch (n=" << n << ")\n";
    }
    if (n <= 7) {
      const auto enumerated = oracle::enumerate_dt_tours(tree);
      std::set<std::vector<NodeId>> filtered;
      oracle::for_each_canonical_cycle(n, [&](const std::vector<NodeId>& order) {
        if (is_dt_shortcutting(tree, order)) filtered.insert(order);
      });
      if (enumerated != filtered) {
        ++failures;
        std::cout << "characterization mismatch (n=" << n << ")\n";
      }
    }
  }
  std::cout << "selftest: " << trials << " instances, " << failures << " mismatches\n";
  return failures ? kSelftestFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-tree shortcutting experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> families = family_names();
  const std::vector<std::string> methods = method_names();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance (TSPLIB file + JSON sidecar)");
  gen_cmd->add_option("family", gen.family, "Instance family")->required()->check(CLI::IsMember(families));
  gen_cmd->add_option("--n", gen.n, "Size parameter (comb, christofides-comb, star)");
  gen_cmd->add_option("--k", gen.k, "Twin trees: n = 2^k");
  gen_cmd->add_option("--eps", gen.eps, "Offset epsilon (default 1/n)");
  gen_cmd->add_option("--metric", gen.metric, "euclidean or hexagonal (planar families)")
      ->check(CLI::IsMember({"euclidean", "hexagonal"}));
  gen_cmd->add_option("--r-inner", gen.r_inner, "Star core inner radius");
  gen_cmd->add_option("--r-outer", gen.r_outer, "Star core outer radius");
  gen_cmd->add_option("--out", gen.out, "Output .tsp path");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run one method on an instance");
  solve_cmd->add_option("instance", solve.instance, "TSPLIB file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--method", solve.method, "Tour method")->required()->check(CLI::IsMember(methods));
  solve_cmd->add_option("--root", solve.root, "MST root: `instance` (sidecar root) or a node index");
  solve_cmd->add_flag("--exact", solve.exact, "Use the exact optimum (n <= 16) as the reference");
  solve_cmd->add_option("--tour-out", solve.tour_out, "Tour output path");

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Ratio table over a list of sizes (CSV)");
  sweep_cmd->add_option("family", sw.family, "Instance family")->required()->check(CLI::IsMember(families));
  sweep_cmd->add_option("--sizes", sw.sizes, "Sizes: `25,50,100` or `4..8` (k for twin-trees)")->required();
  sweep_cmd->add_option("--metric", sw.metric, "euclidean, hexagonal or explicit")
      ->check(CLI::IsMember({"euclidean", "hexagonal", "explicit"}));
  sweep_cmd->add_option("--methods", sw.methods, "Comma-separated methods");
  sweep_cmd->add_option("--eps", sw.eps, "Offset epsilon (default 1/n)");
  sweep_cmd->add_flag("--exact", sw.exact, "Use the exact optimum (n <= 16) as the reference");
  sweep_cmd->add_option("--out", sw.out, "CSV path (default stdout)");

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Draw an instance, its MST and tours as SVG");
  render_cmd->add_option("instance", render.instance, "TSPLIB file")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("tours", render.tours, "Tour files")->check(CLI::ExistingFile);
  render_cmd->add_option("--out", render.out, "SVG path")->required();
  render_cmd->add_option("--edges-out", render.edges_out, "Also write the drawn edge list");
  render_cmd->add_flag("--no-tree", render.no_tree, "Do not draw the MST");

  std::size_t trials = 100;
  unsigned seed = 1;
  auto* selftest_cmd = app.add_subcommand("selftest", "Check the DP and exact solvers against brute force");
  selftest_cmd->add_option("--trials", trials, "Random instances");
  selftest_cmd->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, *gen_cmd);
    if (*solve_cmd) {
      for (const auto& m : split_commas(solve.method))
        if (!is_method(m)) throw InvalidInput("unknown method `" + m + "`");
      return cmd_solve(solve);
    }
    if (*sweep_cmd) {
      for (const auto& m : split_commas(sw.methods))
        if (!is_method(m)) throw InvalidInput("unknown method `" + m + "`");
      return cmd_sweep(sw, *sweep_cmd);
    }
    if (*render_cmd) return cmd_render(render);
    if (*selftest_cmd) return cmd_selftest(trials, seed);
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
