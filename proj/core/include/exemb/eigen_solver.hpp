#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "exemb/dense.hpp"
#include "exemb/graph.hpp"

namespace exemb {

/// Eigenpairs ordered by descending |value|; at equal magnitude the
/// positive value comes first.
struct EigenPairs {
  Vector values;
  DenseMatrix vectors;           // n x k, orthonormal columns
  std::vector<double> residuals;  // ||A v_i - lambda_i v_i||_2
  int iterations = 0;             // 0 for the dense path
};

struct EigenOptions {
  /// Matrices up to this size use a dense tridiagonal solve.
  std::size_t dense_cutoff = 4096;
  /// Iterative path: residual target relative to max(1, |lambda|).
  double tolerance = 1e-9;
  int max_iterations = 20000;
  /// Extra block columns beyond k for subspace iteration (0 = automatic).
  std::size_t oversample = 0;
  std::uint64_t seed = 0x5eed;
};

/// Top-k eigenpairs of a symmetric matrix by magnitude.
/// Throws std::invalid_argument if the input is not symmetric (asymmetry
/// above 1e-10) or k is out of range, ConvergenceError if the iterative
/// path stalls.
EigenPairs top_k_eigs(const DenseMatrix& a, std::size_t k, const EigenOptions& options = {});

/// Same, on the 0/1 adjacency of g (self-loops on the diagonal). Large
/// graphs use block subspace iteration on the sparse adjacency.
EigenPairs top_k_eigs(const Graph& g, std::size_t k, const EigenOptions& options = {});

}  // namespace exemb
