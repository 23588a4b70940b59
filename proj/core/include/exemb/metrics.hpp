#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "exemb/expected_adjacency.hpp"
#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"

namespace exemb {

/// ||P - A||_F / ||A||_F, diagonal included. Throws std::domain_error for a
/// graph without edges.
double rel_frobenius_error(const Graph& g, const ExpectedAdjacency& p);

/// Streaming variant that never stores the n x n reconstruction.
double rel_frobenius_error(const Graph& g, const EmbeddingPair& e, ReconstructMode mode,
                           std::size_t block_rows = 512);

/// Unthresholded ||A - X Y^T||_F.
double raw_frobenius_error(const Graph& g, const EmbeddingPair& e, std::size_t block_rows = 512);

/// (P + P^T) / 2. With zero_diagonal the diagonal is cleared.
DenseMatrix symmetrized(const DenseMatrix& p, bool zero_diagonal);

/// Row sums of the symmetrized P; the diagonal counts only when
/// p.count_diagonal is set.
DegreeSequence expected_degrees(const ExpectedAdjacency& p);

/// Expected number of triangles through each node under independent edges:
/// t_i = 1/2 sum_{j != k} P_ij P_ik P_jk on the symmetrized, zero-diagonal P.
std::vector<double> expected_triangles_per_node(const ExpectedAdjacency& p);

/// Exact per-node triangle counts of a graph (self-loops ignored).
std::vector<double> triangles_per_node(const Graph& g);

struct TriangleCurve {
  std::vector<double> caps;
  std::vector<double> values;
};

/// For every cap c: (1/n) * expected triangles among nodes with degree <= c.
/// Degrees come from the caller (true degrees for a graph, expected degrees
/// for a reconstruction). Throws std::invalid_argument unless caps ascend.
TriangleCurve low_degree_triangle_curve(const ExpectedAdjacency& p, const DegreeSequence& degrees,
                                        const std::vector<double>& caps);

/// Same for a 0/1 graph using its own degrees, without densifying.
TriangleCurve low_degree_triangle_curve(const Graph& g, const std::vector<double>& caps);

/// Integer caps 1..ceil(max degree).
std::vector<double> default_caps(const DegreeSequence& degrees);

/// Bundle of every metric for one reconstruction.
struct EvalReport {
  bool exact = false;
  double rel_frobenius_error = 0.0;
  DegreeSequence degrees;
  std::vector<double> triangles;
  TriangleCurve curve;
  Provenance provenance = Provenance::TrueAdjacency;
};

EvalReport evaluate_graph(const Graph& g, const std::vector<double>& caps);
EvalReport evaluate_reconstruction(const Graph& g, const ExpectedAdjacency& p, bool exact,
                                   const std::vector<double>& caps);

}  // namespace exemb
