#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "exemb/dense.hpp"
#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"

namespace exemb {

// ---------------------------------------------------------------------------
// Clusters on a line: rank-3 factorization of 2J - (squared distances).

struct LineClusterLayout {
  std::vector<double> positions;
  std::size_t cluster_size = 0;
  /// Distance between consecutive cluster origins (> 2).
  double gap = 3.0;
  /// Every intra-cluster distance is below eps.
  double eps = 0.0;
};

/// n/c clusters of c points; cluster q starts at q * gap and its members are
/// eps / c apart. Positions are centred on zero. eps <= 0 selects 0.01 / c.
LineClusterLayout line_cluster_layout(std::size_t n, std::size_t c, double gap = 3.0,
                                      double eps = 0.0);

struct LineConstruction {
  LineClusterLayout layout;
  /// X = [1 | x^2 | x], Y = [2 - x^2 | -1 | 2x], so (X Y^T)_ij = 2 - (x_i - x_j)^2.
  EmbeddingPair embedding;
};

/// Exact rank-3 embedding of a union of n/c disjoint c-cliques. The product
/// has 2 on the diagonal, so it reproduces clique_union(n, c, true)
/// exactly and clique_union(n, c) off the diagonal.
LineConstruction clique_line_construct(std::size_t n, std::size_t c, double gap = 3.0,
                                       double eps = 0.0);

// ---------------------------------------------------------------------------
// Polynomial sign patterns for bounded-degree graphs.

enum class PolynomialBasis {
  Monomial,     // Y rows are [1, t, t^2, ...]; only usable for small degree
  Orthonormal,  // discrete orthonormal polynomials on the sample points
};

struct VandermondeOptions {
  /// Row sparsity bound c; 0 uses the graph's max degree.
  std::size_t degree_bound = 0;
  /// Use 2 * (max runs of consecutive ones) + 1 columns instead of 2c + 1.
  bool minimal_rank = false;
  /// Assign sample points in breadth-first order (highest degree first) so
  /// neighborhoods form fewer runs. Off keeps node i at sample i.
  bool reorder = true;
  /// Spend unused root pairs as double roots that flatten the row
  /// polynomial's magnitude across the sample points.
  bool balance = true;
  PolynomialBasis basis = PolynomialBasis::Orthonormal;
  /// Smallest value placed on a 1-entry before rounding.
  double target_margin = 2.0;
  std::size_t max_nodes = 4096;
};

struct VandermondeConstruction {
  EmbeddingPair embedding;
  std::size_t degree_bound = 0;
  std::size_t max_runs = 0;
  /// order[p] is the node placed at sample position p.
  std::vector<NodeId> order;
  /// position[v] is the sample index of node v.
  std::vector<std::size_t> position;
  /// Sample points in (-1, 1), increasing with position.
  std::vector<double> samples;
  /// Per node: roots of its polynomial (balancing roots appear twice).
  std::vector<std::vector<double>> roots;
  /// Per node: p_v(t) = scale_v * prod (t - r), sign included.
  std::vector<double> scale;
};

/// Row v of A has its ones at the sample points of v's neighbors. Each
/// maximal run of consecutive ones gets a root just before and just after
/// it, so the row polynomial is positive exactly on the ones. Y holds the
/// polynomial basis at the sample points and X the scaled coefficients.
///
/// Throws std::invalid_argument when a row exceeds the degree bound or the
/// graph is too large, NumericalError naming the row when the double
/// precision product loses a margin.
VandermondeConstruction vandermonde_construct(const Graph& g, const VandermondeOptions& options = {});

/// Evaluates p_v at t through the stored roots and scale.
double row_polynomial(const VandermondeConstruction& vc, NodeId v, double t);

// ---------------------------------------------------------------------------
// Binary cluster codes: sigma(U M U^T) with U in {0,1}^{n x k}.

struct BinaryClusterOptions {
  /// k = ceil(d * ln n).
  double d = 8.0;
  int max_retries = 200000;
  /// Append the n/c cluster centers as extra rows (no exactness claim).
  bool include_centers = false;
};

struct BinaryClusterConstruction {
  DenseMatrix u;  // rows x k, entries 0/1
  DenseMatrix m;  // k x k, I - J / (4 ceil(ln n))
  EmbeddingPair embedding;  // X = U, Y = U M^T
  std::size_t ones_per_row = 0;  // ceil(2 ln n)
  std::size_t swaps = 0;         // bits each member differs from its center
  std::size_t center_overlap_bound = 0;  // ceil(offset) - 1
  double offset = 0.0;           // (U M U^T)_ij = u_i.u_j - offset
  std::vector<std::size_t> cluster;  // cluster id of every row
};

/// Samples n/c random centers with ceil(2 ln n) ones and pairwise overlap at
/// most center_overlap_bound, then c members per center that differ from it
/// in `swaps` positions, resampling members until every cross-cluster pair
/// also overlaps in at most center_overlap_bound positions. Members of one
/// cluster are mutually adjacent (diagonal included) and members of
/// different clusters are not.
BinaryClusterConstruction binary_cluster_construct(std::size_t n, std::size_t c, std::uint64_t seed,
                                                   const BinaryClusterOptions& options = {});

}  // namespace exemb
