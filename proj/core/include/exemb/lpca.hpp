#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "exemb/dense.hpp"
#include "exemb/expected_adjacency.hpp"
#include "exemb/graph.hpp"
#include "exemb/lbfgs.hpp"

namespace exemb {

enum class Method { Lpca, Tsvd, Construction };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

/// Two n x k factors whose product X Y^T models the adjacency matrix.
struct EmbeddingPair {
  DenseMatrix x;
  DenseMatrix y;
  Method method = Method::Lpca;
  int iterations = 0;
  double final_loss = 0.0;  // LPCA only
  StopReason stop_reason = StopReason::MaxIters;

  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(x.rows()); }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(x.cols()); }

  /// Throws std::invalid_argument unless X and Y are finite, equally
  /// shaped and have at least one column.
  void check() const;
};

struct LossGrad {
  double loss = 0.0;
  DenseMatrix grad_x;
  DenseMatrix grad_y;
};

struct LpcaOptions {
  LbfgsSettings lbfgs{};
  /// Rows of X Y^T materialized at a time.
  std::size_t block_rows = 512;
  /// Workers for the loss kernel; 0 means default_threads().
  int threads = 0;
};

/// Logistic loss sum_{i,j} softplus(-S_ij M_ij) with M = X Y^T and the
/// shifted adjacency S = 2A - 1 over all ordered pairs, diagonal included.
LossGrad lpca_loss_grad(const Graph& g, const DenseMatrix& x, const DenseMatrix& y,
                        const LpcaOptions& options = {});

/// Overflow-safe log(1 + e^z).
double softplus(double z) noexcept;
/// Logistic function 1 / (1 + e^-z).
double logistic(double z) noexcept;

/// Draws X, Y uniformly from [-1, 1] (X first, row-major) and minimizes the
/// logistic loss with L-BFGS. Deterministic for a fixed seed and worker count.
EmbeddingPair lpca_fit(const Graph& g, std::size_t rank, std::uint64_t seed,
                       const LpcaOptions& options = {});

// ---------------------------------------------------------------------------

enum class DiagonalPolicy {
  FromGraph,  // A_ii = 1 iff node i has a self-loop
  Ignore,     // diagonal entries are not checked
};

struct ExactnessReport {
  bool exact = false;
  /// Entries with A=1 and M<1, or A=0 and M>0.
  std::size_t violations = 0;
  /// Violations at tolerance 1e-9 (diagnostic).
  std::size_t near_violations = 0;
  /// Minimum slack over checked entries: M-1 for ones, -M for zeros.
  /// Non-negative exactly when the factorization is exact.
  double worst_margin = 0.0;
  /// Row holding the worst slack.
  std::size_t worst_row = 0;
};

/// Checks sigma(X Y^T) == A entrywise with sigma(x) = clamp(x, 0, 1):
/// every 1-entry must have M >= 1 and every 0-entry M <= 0.
ExactnessReport verify_exact(const Graph& g, const EmbeddingPair& e,
                             DiagonalPolicy diagonal = DiagonalPolicy::FromGraph,
                             std::size_t block_rows = 512);

enum class ReconstructMode { Threshold, Logistic };

/// Applies clamp-to-[0,1] (Threshold) or the logistic function (Logistic)
/// to X Y^T. The result is not symmetrized.
ExpectedAdjacency reconstruct(const EmbeddingPair& e, ReconstructMode mode);

/// Entrywise clamp of x to [0, 1].
inline double threshold(double x) noexcept { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace exemb
