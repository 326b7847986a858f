#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtlab/bundle_io.hpp"
#include "dtlab/tsplib.hpp"

using namespace dtlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / ("dtlab_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  return dir;
}

void expect_same_distances(const MetricInstance& a, const MetricInstance& b) {
  ASSERT_EQ(a.size(), b.size());
  for (NodeId i = 0; i < a.size(); ++i)
    for (NodeId j = 0; j < a.size(); ++j) ASSERT_NEAR(a(i, j), b(i, j), 1e-9);
}

MetricInstance parse(const std::string& text) {
  std::istringstream is(text);
  return read_tsplib(is);
}

}  // namespace

TEST(Tsplib, StarRoundTrip) {
  for (auto kind : {MetricKind::euclidean, MetricKind::hexagonal}) {
    const auto b = gen_star(4, kind);
    std::stringstream ss;
    write_tsplib(ss, b.metric, "star4");
    const auto m = read_tsplib(ss);
    EXPECT_EQ(m.size(), 25u);
    EXPECT_EQ(m.kind(), kind);
    expect_same_distances(m, b.metric);
  }
}

TEST(Tsplib, ExplicitTwinTreesRoundTripIsMetric) {
  const auto b = gen_twin_trees(2);
  std::stringstream ss;
  write_tsplib(ss, b.metric, "twin");
  EXPECT_NE(ss.str().find("EDGE_WEIGHT_FORMAT : FULL_MATRIX"), std::string::npos);
  const auto m = read_tsplib(ss);
  EXPECT_EQ(m.kind(), MetricKind::explicit_matrix);
  expect_same_distances(m, b.metric);
  EXPECT_TRUE(verify_metric(m).ok);
}

TEST(Tsplib, MatrixEntriesUseTwelveDigits) {
  const auto m = MetricInstance::from_matrix(2, {0, 1.0 / 3.0, 1.0 / 3.0, 0});
  std::ostringstream os;
  write_tsplib(os, m, "x");
  EXPECT_NE(os.str().find("0 0.333333333333\n"), std::string::npos);
}

TEST(Tsplib, DimensionMismatchReportsLine) {
  const std::string text =
      "NAME : bad\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\nEOF\n";
  try {
    parse(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 8u);
    EXPECT_NE(std::string(e.what()).find("DIMENSION is 3"), std::string::npos);
  }
}

TEST(Tsplib, MalformedCoordinateLine) {
  const std::string text = "DIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 zero 1\n";
  try {
    parse(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(Tsplib, UnknownWeightType) {
  EXPECT_THROW(parse("DIMENSION : 2\nEDGE_WEIGHT_TYPE : GEO\n"), UnsupportedFormat);
  EXPECT_THROW(parse("DIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : UPPER_ROW\n"),
               UnsupportedFormat);
}

TEST(Tsplib, OtherErrors) {
  EXPECT_THROW(parse("EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n"), ParseError);
  EXPECT_THROW(parse("DIMENSION : two\n"), ParseError);
  EXPECT_THROW(parse("DIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n1 1 1\n"), ParseError);
  EXPECT_THROW(parse("DIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
                     "EDGE_WEIGHT_SECTION\n0 1\n1\nEOF\n"),
               ParseError);
  EXPECT_THROW(parse("just garbage\n"), ParseError);
}

TEST(Tsplib, AcceptsMatrixSplitAcrossLines) {
  const auto m = parse(
      "DIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
      "EDGE_WEIGHT_SECTION\n0\n2.5 2.5\n0\nEOF\n");
  EXPECT_EQ(m(0, 1), 2.5);
}

TEST(BundleFiles, RoundTripWithSidecar) {
  const auto dir = scratch_dir();
  const auto b = gen_twin_trees(3);
  const auto path = dir / "twin3.tsp";
  write_bundle(path, b);
  ASSERT_TRUE(fs::exists(dir / "twin3.json"));
  const auto r = read_bundle(path);
  EXPECT_EQ(r.family, "twin-trees");
  EXPECT_EQ(r.root, b.root);
  EXPECT_EQ(r.reference_tour, b.reference_tour);
  EXPECT_NEAR(r.reference_tour.weight, b.reference_tour.weight, 1e-9);
  EXPECT_EQ(r.expected_mst, b.expected_mst);
  EXPECT_EQ(r.layout.size(), b.layout.size());
  ASSERT_TRUE(r.graph.has_value());
  EXPECT_EQ(r.graph->edges.size(), b.graph->edges.size());
  EXPECT_EQ(r.analytic, b.analytic);
  fs::remove_all(dir);
}

TEST(BundleFiles, WithoutSidecar) {
  const auto dir = scratch_dir();
  const auto path = dir / "plain.tsp";
  write_tsplib(path.string(), gen_comb(3).metric, "plain");
  const auto r = read_bundle(path);
  EXPECT_EQ(r.family, "unknown");
  EXPECT_TRUE(r.reference_tour.order.empty());
  EXPECT_EQ(r.layout.size(), r.metric.size());
  fs::remove_all(dir);
}

TEST(BundleFiles, BadSidecar) {
  const auto dir = scratch_dir();
  const auto path = dir / "x.tsp";
  write_bundle(path, gen_comb(3));
  std::ofstream(dir / "x.json") << "{ not json";
  EXPECT_THROW(read_bundle(path), ParseError);
  fs::remove_all(dir);
}
