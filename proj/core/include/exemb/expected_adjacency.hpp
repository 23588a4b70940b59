#pragma once

#include <string_view>

#include "exemb/dense.hpp"
#include "exemb/graph.hpp"

namespace exemb {

enum class Provenance { TrueAdjacency, TsvdThreshold, LpcaLogistic, LpcaThreshold, ConstructionThreshold };

std::string_view to_string(Provenance p);

/// n x n matrix of independent edge probabilities in [0, 1].
///
/// The matrix is stored as produced; it need not be symmetric. Degree and
/// triangle metrics symmetrize it first.
struct ExpectedAdjacency {
  DenseMatrix p;
  Provenance provenance = Provenance::TrueAdjacency;
  /// Count diagonal mass toward expected degrees (only for graph families
  /// that carry genuine self-loops, like the toy graph).
  bool count_diagonal = false;

  std::size_t size() const noexcept { return static_cast<std::size_t>(p.rows()); }

  static ExpectedAdjacency from_graph(const Graph& g);
};

}  // namespace exemb
