#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "exemb/generators.hpp"
#include "exemb/metrics.hpp"
#include "exemb/tsvd.hpp"
#include "oracles.hpp"

using namespace exemb;

namespace {

ExpectedAdjacency prob(const DenseMatrix& p) { return {p, Provenance::LpcaLogistic, false}; }

void expect_rel_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol * std::max(1.0, std::abs(b[i]))) << i;
}

}  // namespace

TEST(Frobenius, SmallCases) {
  const Graph g = clique_union(6, 3);
  EXPECT_DOUBLE_EQ(rel_frobenius_error(g, ExpectedAdjacency::from_graph(g)), 0.0);
  EXPECT_DOUBLE_EQ(rel_frobenius_error(g, prob(DenseMatrix::Zero(6, 6))), 1.0);
  EXPECT_THROW(rel_frobenius_error(Graph::from_edges(3, {}), prob(DenseMatrix::Zero(3, 3))), std::domain_error);
  EXPECT_THROW(rel_frobenius_error(g, prob(DenseMatrix::Zero(5, 5))), std::invalid_argument);
}

TEST(Frobenius, StreamingMatchesDense) {
  const Graph g = oracle::random_graph(50, 0.1, 8, true);
  const EmbeddingPair e = tsvd_fit(g, 7);
  for (auto mode : {ReconstructMode::Threshold, ReconstructMode::Logistic}) {
    const double dense = rel_frobenius_error(g, reconstruct(e, mode));
    EXPECT_NEAR(rel_frobenius_error(g, e, mode, 7), dense, 1e-12);
  }
  const DenseMatrix a = oracle::adjacency(g);
  EXPECT_NEAR(raw_frobenius_error(g, e, 9), (a - e.x * e.y.transpose()).norm(), 1e-10);
}

TEST(Degrees, SmallCases) {
  const Graph k4 = clique_union(4, 4);
  for (double d : expected_degrees(ExpectedAdjacency::from_graph(k4)).values) EXPECT_DOUBLE_EQ(d, 3.0);
  DenseMatrix half = DenseMatrix::Constant(3, 3, 0.5);
  for (double d : expected_degrees(prob(half)).values) EXPECT_DOUBLE_EQ(d, 1.0);
  ExpectedAdjacency with_diag = prob(half);
  with_diag.count_diagonal = true;
  for (double d : expected_degrees(with_diag).values) EXPECT_DOUBLE_EQ(d, 1.5);
}

TEST(Degrees, AsymmetricInputIsSymmetrized) {
  DenseMatrix p = DenseMatrix::Zero(2, 2);
  p(0, 1) = 1.0;
  const auto d = expected_degrees(prob(p)).values;
  EXPECT_DOUBLE_EQ(d[0], 0.5);
  EXPECT_DOUBLE_EQ(d[1], 0.5);
}

TEST(Triangles, SmallCases) {
  const Graph k3 = clique_union(3, 3);
  for (double t : expected_triangles_per_node(ExpectedAdjacency::from_graph(k3))) EXPECT_DOUBLE_EQ(t, 1.0);
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  const Graph p3 = Graph::from_edges(3, path);
  for (double t : expected_triangles_per_node(ExpectedAdjacency::from_graph(p3))) EXPECT_DOUBLE_EQ(t, 0.0);
  // self-loops never contribute
  const Graph loops = clique_union(3, 3, true);
  for (double t : triangles_per_node(loops)) EXPECT_DOUBLE_EQ(t, 1.0);
  for (double t : expected_triangles_per_node(ExpectedAdjacency::from_graph(loops))) EXPECT_DOUBLE_EQ(t, 1.0);
}

TEST(Triangles, MatchTripleEnumeration) {
  for (unsigned s = 1; s <= 25; ++s) {
    const std::size_t n = 5 + s;  // 6..30
    const Graph g = oracle::random_graph(n, 0.35, 900 + s, s % 3 == 0);
    const DenseMatrix a = oracle::adjacency(g);
    const auto brute = oracle::triangles_by_triples(a);
    expect_rel_close(triangles_per_node(g), brute, 1e-10);
    expect_rel_close(expected_triangles_per_node(ExpectedAdjacency::from_graph(g)), brute, 1e-10);

    const DenseMatrix p = oracle::random_probabilities(n, 77 + s);
    expect_rel_close(expected_triangles_per_node(prob(p)), oracle::triangles_by_triples(p), 1e-10);
  }
}

TEST(Triangles, ExhaustiveSmallGraphs) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  for (unsigned s = 0; s < 500; ++s) {
    const auto n = static_cast<std::size_t>(size(rng));
    const Graph g = oracle::random_graph(n, dens(rng), 3000 + s);
    const DenseMatrix a = oracle::adjacency(g);
    const auto e = ExpectedAdjacency::from_graph(g);
    const auto t = expected_triangles_per_node(e);
    const auto brute = oracle::triangles_by_triples(a);
    const auto deg = expected_degrees(e).values;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(t[i], brute[i]);
      ASSERT_EQ(deg[i], static_cast<double>(g.degree(static_cast<NodeId>(i))));
    }
  }
}

TEST(TriangleCurve, SmallCases) {
  const Graph k3 = clique_union(3, 3);
  const std::vector<double> caps{1, 2};
  const TriangleCurve c = low_degree_triangle_curve(k3, caps);
  EXPECT_DOUBLE_EQ(c.values[0], 0.0);
  EXPECT_DOUBLE_EQ(c.values[1], 1.0 / 3.0);
  const auto e = ExpectedAdjacency::from_graph(k3);
  const TriangleCurve d = low_degree_triangle_curve(e, expected_degrees(e), caps);
  EXPECT_EQ(c.values, d.values);
  const Graph empty = Graph::from_edges(4, {});
  for (double v : low_degree_triangle_curve(empty, {0, 1, 2}).values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(low_degree_triangle_curve(k3, {2, 1}), std::invalid_argument);
}

TEST(TriangleCurve, MatchesTripleEnumeration) {
  for (unsigned s = 1; s <= 20; ++s) {
    const std::size_t n = 30;
    const Graph g = oracle::random_graph(n, 0.1 + 0.02 * s, 40 + s);
    const auto degrees = degree_sequence(g);
    const auto caps = default_caps(degrees);
    const auto brute = oracle::curve_by_triples(oracle::adjacency(g), degrees.values, caps);
    expect_rel_close(low_degree_triangle_curve(g, caps).values, brute, 1e-10);
    const auto e = ExpectedAdjacency::from_graph(g);
    expect_rel_close(low_degree_triangle_curve(e, degrees, caps).values, brute, 1e-10);

    const DenseMatrix p = oracle::random_probabilities(n, 600 + s);
    const auto pd = expected_degrees(prob(p));
    const std::vector<double> pcaps{8, 10, 12, 13, 14, 15, 16, 18, 30};
    const TriangleCurve curve = low_degree_triangle_curve(prob(p), pd, pcaps);
    expect_rel_close(curve.values, oracle::curve_by_triples(p, pd.values, pcaps), 1e-10);
    for (std::size_t i = 1; i < curve.values.size(); ++i) EXPECT_GE(curve.values[i], curve.values[i - 1]);
    double total = 0.0;
    for (double t : expected_triangles_per_node(prob(p))) total += t;
    EXPECT_NEAR(curve.values.back(), total / 3.0 / 30.0, 1e-10);
  }
}

TEST(Evaluate, GraphReport) {
  const Graph g = toy_graph(10);
  const EvalReport r = evaluate_graph(g, {});
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.rel_frobenius_error, 0.0);
  EXPECT_NEAR(r.curve.values.back(), 10.0 / 30.0, 1e-15);
  const EvalReport same = evaluate_reconstruction(g, ExpectedAdjacency::from_graph(g), true, r.curve.caps);
  EXPECT_EQ(same.degrees.values, r.degrees.values);
  expect_rel_close(same.curve.values, r.curve.values, 1e-12);
}
