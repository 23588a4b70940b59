#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"

namespace exemb {

/// Seeds tried at each rank are base_seed, base_seed + 1, ...; a rank
/// counts as exact as soon as one of them succeeds.
struct SeedPolicy {
  std::uint64_t base_seed = 1;
  int seeds = 1;
};

struct RankOutcome {
  std::size_t rank = 0;
  std::size_t trial = 0;  // baseline graph index; 0 for a plain search
  std::uint64_t seed = 0;
  bool exact = false;
  int iterations = 0;
  double final_loss = 0.0;
  std::size_t violations = 0;
};

struct EfdResult {
  std::string graph_id;
  std::vector<std::size_t> rank_grid;
  std::vector<RankOutcome> outcomes;
  std::optional<std::size_t> efd;
};

/// Multiples of 16 up to max_rank.
std::vector<std::size_t> multiples_of_16(std::size_t max_rank);

/// Fits LPCA at each grid rank in ascending order and stops at the first
/// rank with an exact factorization.
EfdResult efd_search(const Graph& g, const std::vector<std::size_t>& rank_grid,
                     const SeedPolicy& policy = {}, const LpcaOptions& options = {},
                     const std::string& graph_id = {});

enum class BaselineKind { ChungLu, ErdosRenyi };

/// Generates `trials` random graphs matched to g (same expected degree
/// sequence, or same expected edge count) and reports the smallest grid
/// rank at which every trial factors exactly.
EfdResult baseline_efd(const Graph& g, BaselineKind kind, const std::vector<std::size_t>& rank_grid,
                       int trials = 3, std::uint64_t graph_seed = 1, const SeedPolicy& policy = {},
                       const LpcaOptions& options = {}, const std::string& graph_id = {});

}  // namespace exemb
