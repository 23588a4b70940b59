#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exemb/dense.hpp"

namespace exemb {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected, unweighted graph in compressed sparse row form.
///
/// Neighbor lists are sorted and duplicate free. A self-loop on node i
/// appears once in i's neighbor list, so it contributes 1 to degree(i).
/// Instances are immutable once built and safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an unordered edge list. Each pair is symmetrized
  /// and duplicates are collapsed. Self-loops are rejected unless
  /// allow_self_loops is set.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          bool allow_self_loops = false);

  std::size_t num_nodes() const noexcept { return n_; }
  /// Unordered edges, self-loops included.
  std::size_t num_edges() const noexcept { return num_edges_; }
  std::size_t num_self_loops() const noexcept { return num_loops_; }
  bool allow_self_loops() const noexcept { return allow_self_loops_; }

  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t max_degree() const noexcept;
  std::span<const NodeId> neighbors(NodeId i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  bool has_edge(NodeId i, NodeId j) const;
  bool has_self_loop(NodeId i) const { return has_edge(i, i); }

  /// Unordered edges as (i, j) with i <= j, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Dense 0/1 adjacency; self-loops become unit diagonal entries.
  DenseMatrix to_dense() const;

  /// y = A x for the 0/1 adjacency.
  void multiply(const DenseMatrix& x, DenseMatrix& y) const;

  /// Throws std::logic_error if any structural invariant is broken.
  void validate() const;

  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return adj_; }

 private:
  std::size_t n_ = 0;
  std::size_t num_edges_ = 0;
  std::size_t num_loops_ = 0;
  bool allow_self_loops_ = false;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adj_;
};

/// Per-node degrees. True degrees are integers, expected degrees are reals.
struct DegreeSequence {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double mean() const;
  double max() const;
  std::vector<double> sorted_descending() const;
  /// Linear-interpolated percentile, q in [0, 100].
  double percentile(double q) const;
};

DegreeSequence degree_sequence(const Graph& g);

/// Subgraph containing only the listed nodes, relabelled 0..keep.size()-1
/// in the given order.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep);

// ---------------------------------------------------------------------------
// Edge-list text files

enum class IdMode {
  Compact,   // relabel to 0..n-1 in order of first appearance
  Identity,  // ids are used as-is after subtracting index_base
  Auto,      // Identity if the file carries a "# nodes:" header, else Compact
};

struct EdgeListOptions {
  std::string comment_prefix = "#";
  IdMode id_mode = IdMode::Compact;
  /// Smallest id in Identity mode (0 or 1).
  int index_base = 0;
  /// Accept directed input and add the reverse of every arc. When false,
  /// an arc without its reverse is a data error.
  bool symmetrize = true;
  /// Drop (i, i) records. When false they are kept as self-loops.
  bool drop_self_loops = true;
};

Graph load_edge_list(const std::filesystem::path& path,
                     const EdgeListOptions& options = {});

/// Writes "# nodes: n edges: m" followed by one "i j" line per unordered
/// edge with 0-based ids. Loading with IdMode::Auto restores the graph
/// exactly, isolated nodes included.
void save_edge_list(const Graph& g, const std::filesystem::path& path);

}  // namespace exemb
