#include <stdexcept>

#include "exemb/efd.hpp"
#include "exemb/generators.hpp"

namespace exemb {
namespace {

void check_grid(const std::vector<std::size_t>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0) throw std::invalid_argument("efd: ranks must be positive");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("efd: rank grid must ascend");
  }
}

// Tries the policy's seeds at one rank; appends each attempt.
bool fit_rank(const Graph& g, std::size_t rank, std::size_t trial, const SeedPolicy& policy,
              const LpcaOptions& options, std::vector<RankOutcome>& outcomes) {
  for (int s = 0; s < std::max(1, policy.seeds); ++s) {
    const std::uint64_t seed = policy.base_seed + static_cast<std::uint64_t>(s);
    const EmbeddingPair e = lpca_fit(g, rank, seed, options);
    const ExactnessReport report = verify_exact(g, e, DiagonalPolicy::FromGraph, options.block_rows);
    outcomes.push_back({rank, trial, seed, report.exact, e.iterations, e.final_loss, report.violations});
    if (report.exact) return true;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> multiples_of_16(std::size_t max_rank) {
  std::vector<std::size_t> grid;
  for (std::size_t r = 16; r <= max_rank; r += 16) grid.push_back(r);
  return grid;
}

EfdResult efd_search(const Graph& g, const std::vector<std::size_t>& rank_grid, const SeedPolicy& policy,
                     const LpcaOptions& options, const std::string& graph_id) {
  check_grid(rank_grid);
  EfdResult result{graph_id, rank_grid, {}, std::nullopt};
  for (std::size_t rank : rank_grid) {
    if (fit_rank(g, rank, 0, policy, options, result.outcomes)) {
      result.efd = rank;
      break;
    }
  }
  return result;
}

EfdResult baseline_efd(const Graph& g, BaselineKind kind, const std::vector<std::size_t>& rank_grid, int trials,
                       std::uint64_t graph_seed, const SeedPolicy& policy, const LpcaOptions& options,
                       const std::string& graph_id) {
  check_grid(rank_grid);
  if (trials < 1) throw std::invalid_argument("efd: need at least one baseline trial");
  std::vector<Graph> graphs;
  const DegreeSequence degrees = degree_sequence(g);
  const double edges = static_cast<double>(g.num_edges() - g.num_self_loops());
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t seed = graph_seed + static_cast<std::uint64_t>(t);
    graphs.push_back(kind == BaselineKind::ChungLu ? chung_lu(degrees, seed)
                                                   : erdos_renyi(g.num_nodes(), edges, seed));
  }

  EfdResult result{graph_id, rank_grid, {}, std::nullopt};
  for (std::size_t rank : rank_grid) {
    bool all = true;
    for (std::size_t t = 0; t < graphs.size() && all; ++t) {
      all = fit_rank(graphs[t], rank, t, policy, options, result.outcomes);
    }
    if (all) {
      result.efd = rank;
      break;
    }
  }
  return result;
}

}  // namespace exemb
