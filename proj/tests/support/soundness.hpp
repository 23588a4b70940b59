#pragma once

// Every exact embedding a test produces goes through check_exact(), which
// also asserts that the thresholded relative Frobenius error is exactly 0.
// The counters let the acceptance run report how many embeddings were
// checked.

#include <cstddef>

#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"
#include "exemb/metrics.hpp"

namespace exemb::testing {

struct SoundnessLedger {
  std::size_t exact_seen = 0;
  std::size_t unsound = 0;
};

inline SoundnessLedger& soundness() {
  static SoundnessLedger ledger;
  return ledger;
}

// Returns verify_exact's verdict; records a soundness failure if the
// verdict is exact but the thresholded reconstruction differs from A.
inline ExactnessReport check_exact(const Graph& g, const EmbeddingPair& e,
                                   DiagonalPolicy diagonal = DiagonalPolicy::FromGraph) {
  const ExactnessReport r = verify_exact(g, e, diagonal);
  if (r.exact && diagonal == DiagonalPolicy::FromGraph) {
    ++soundness().exact_seen;
    if (g.num_edges() > 0 && rel_frobenius_error(g, e, ReconstructMode::Threshold) != 0.0) ++soundness().unsound;
  }
  return r;
}

}  // namespace exemb::testing
