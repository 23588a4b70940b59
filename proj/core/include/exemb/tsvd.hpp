#pragma once

#include <cstddef>

#include "exemb/eigen_solver.hpp"
#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"

namespace exemb {

/// Truncated spectral embedding from the k largest-magnitude eigenpairs
/// (Z, W) of the adjacency: X = Z sign(W) |W|^1/2, Y = Z |W|^1/2, so that
/// X Y^T = Z W Z^T. sign(0) is taken as +1.
EmbeddingPair tsvd_fit(const Graph& g, std::size_t k, const EigenOptions& options = {});

/// Same from precomputed eigenpairs (all of them are used).
EmbeddingPair tsvd_from_eigenpairs(const EigenPairs& pairs);

}  // namespace exemb
