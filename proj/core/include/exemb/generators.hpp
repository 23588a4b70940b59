#pragma once

#include <cstddef>
#include <cstdint>

#include "exemb/graph.hpp"

namespace exemb {

/// t triangles {3i, 3i+1, 3i+2} joined in a cycle by edges (3i+2, 3(i+1) mod 3t),
/// with a self-loop on every node. Requires t >= 2.
Graph toy_graph(std::size_t t);

/// n/c disjoint c-cliques on consecutive node ids. With self_loops the
/// blocks are all-ones including the diagonal.
Graph clique_union(std::size_t n, std::size_t c, bool self_loops = false);

/// G(n, p) with p = m / C(n, 2).
Graph erdos_renyi(std::size_t n, double m, std::uint64_t seed);

/// Independent edges with probability min(1, d_i d_j / sum d).
Graph chung_lu(const DegreeSequence& degrees, std::uint64_t seed);

/// Barabasi-Albert growth from an (m+1)-clique; each new node draws m
/// degree-proportional targets and repeated targets collapse.
Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace exemb
