#include <gtest/gtest.h>

#include <vector>

#include "exemb/errors.hpp"
#include "exemb/graph.hpp"
#include "helpers.hpp"

using namespace exemb;
using exemb::testing::TempFile;

TEST(Graph, BuildsSymmetricDedupedCsr) {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 1}, {3, 0}};
  const Graph g = Graph::from_edges(5, edges);
  g.validate();
  EXPECT_EQ(g.num_nodes(), 5u);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.degree(4), 0u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(2, 3));
  EXPECT_EQ(g.max_degree(), 2u);
  const auto list = g.edges();
  EXPECT_EQ(list, (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}}));
}

TEST(Graph, SelfLoopsNeedOptIn) {
  const std::vector<Edge> edges{{0, 0}, {0, 1}};
  EXPECT_THROW(Graph::from_edges(2, edges), std::invalid_argument);
  const Graph g = Graph::from_edges(2, edges, true);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.num_self_loops(), 1u);
  EXPECT_TRUE(g.has_self_loop(0));
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.to_dense()(0, 0), 1.0);
}

TEST(Graph, RejectsOutOfRangeIds) {
  const std::vector<Edge> edges{{0, 5}};
  EXPECT_THROW(Graph::from_edges(3, edges), std::invalid_argument);
}

TEST(Graph, MultiplyMatchesDense) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 2}, {0, 3}};
  const Graph g = Graph::from_edges(4, edges, true);
  DenseMatrix x = DenseMatrix::Random(4, 3), y;
  g.multiply(x, y);
  EXPECT_LT((y - g.to_dense() * x).norm(), 1e-14);
}

TEST(DegreeSequence, PercentileInterpolatesLinearly) {
  DegreeSequence d{{1, 2, 3, 4, 10}};
  EXPECT_DOUBLE_EQ(d.percentile(0), 1.0);
  EXPECT_DOUBLE_EQ(d.percentile(100), 10.0);
  EXPECT_DOUBLE_EQ(d.percentile(50), 3.0);
  EXPECT_DOUBLE_EQ(d.percentile(95), 8.8);  // numpy.percentile([1,2,3,4,10], 95)
  EXPECT_DOUBLE_EQ(d.mean(), 4.0);
  EXPECT_EQ(d.sorted_descending().front(), 10.0);
}

TEST(Graph, InducedSubgraphRelabels) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const Graph g = Graph::from_edges(4, edges);
  const std::vector<NodeId> keep{3, 2, 1};
  const Graph h = induced_subgraph(g, keep);
  EXPECT_EQ(h.num_nodes(), 3u);
  EXPECT_EQ(h.num_edges(), 2u);
  EXPECT_TRUE(h.has_edge(0, 1));  // 3-2
  EXPECT_TRUE(h.has_edge(1, 2));  // 2-1
  EXPECT_FALSE(h.has_edge(0, 2));
}

// ---------------------------------------------------------------------------

TEST(EdgeList, ParsesCommentsSeparatorsAndCompactIds) {
  TempFile f("# a comment\n10\t20\n20,30\n\n  30 10 extra\r\n% not a comment? no\n");
  EXPECT_THROW(load_edge_list(f.path()), ParseError);

  TempFile ok("# a comment\n10\t20\n20,30\n\n  30 10 extra\r\n40 40\n");
  const Graph g = load_edge_list(ok.path());
  EXPECT_EQ(g.num_nodes(), 4u);  // 10, 20, 30, 40 (self-loop dropped, node kept)
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_EQ(g.degree(3), 0u);
}

TEST(EdgeList, ReportsLineNumbers) {
  TempFile f("0 1\n1 2\nx 3\n");
  try {
    load_edge_list(f.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  TempFile short_line("0 1\n7\n");
  try {
    load_edge_list(short_line.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EdgeList, EmptyOrMissingFileIsDataError) {
  TempFile empty("# only comments\n");
  EXPECT_THROW(load_edge_list(empty.path()), DataError);
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt"), DataError);
}

TEST(EdgeList, IdentityModeHonoursIndexBase) {
  TempFile f("1 2\n2 5\n");
  EdgeListOptions o;
  o.id_mode = IdMode::Identity;
  o.index_base = 1;
  const Graph g = load_edge_list(f.path(), o);
  EXPECT_EQ(g.num_nodes(), 5u);
  EXPECT_TRUE(g.has_edge(1, 4));
  TempFile zero("0 1\n");
  EXPECT_THROW(load_edge_list(zero.path(), o), ParseError);
}

TEST(EdgeList, DirectedInputWithoutSymmetrizeIsRejected) {
  TempFile f("0 1\n1 0\n1 2\n");
  EdgeListOptions o;
  o.symmetrize = false;
  EXPECT_THROW(load_edge_list(f.path(), o), ParseError);
  TempFile sym("0 1\n1 0\n");
  EXPECT_EQ(load_edge_list(sym.path(), o).num_edges(), 1u);
}

TEST(EdgeList, KeepsSelfLoopsOnRequest) {
  TempFile f("0 0\n0 1\n");
  EdgeListOptions o;
  o.drop_self_loops = false;
  const Graph g = load_edge_list(f.path(), o);
  EXPECT_TRUE(g.allow_self_loops());
  EXPECT_TRUE(g.has_self_loop(0));
}

TEST(EdgeList, RoundTripPreservesIsolatedNodesAndLoops) {
  const std::vector<Edge> edges{{0, 0}, {0, 3}, {3, 5}};
  const Graph g = Graph::from_edges(8, edges, true);
  TempFile f("");
  save_edge_list(g, f.path());
  EdgeListOptions o;
  o.id_mode = IdMode::Auto;
  o.drop_self_loops = false;
  const Graph h = load_edge_list(f.path(), o);
  EXPECT_EQ(h.num_nodes(), 8u);
  EXPECT_EQ(h.edges(), g.edges());
}
