#include "exemb/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "random.hpp"

namespace exemb {

Graph toy_graph(std::size_t t) {
  if (t < 2) throw std::invalid_argument("toy_graph: need at least 2 triangles");
  const std::size_t n = 3 * t;
  std::vector<Edge> edges;
  edges.reserve(7 * t);
  for (std::size_t i = 0; i < t; ++i) {
    const auto b = static_cast<NodeId>(3 * i);
    edges.insert(edges.end(), {{b, b + 1}, {b, b + 2}, {b + 1, b + 2}, {b, b}, {b + 1, b + 1}, {b + 2, b + 2}});
    edges.emplace_back(b + 2, static_cast<NodeId>((3 * (i + 1)) % n));
  }
  return Graph::from_edges(n, edges, true);
}

Graph clique_union(std::size_t n, std::size_t c, bool self_loops) {
  if (c == 0 || n % c != 0) {
    throw std::invalid_argument("clique_union: clique size " + std::to_string(c) + " does not divide n=" +
                                std::to_string(n));
  }
  std::vector<Edge> edges;
  for (std::size_t start = 0; start < n; start += c) {
    for (std::size_t i = start; i < start + c; ++i) {
      for (std::size_t j = self_loops ? i : i + 1; j < start + c; ++j) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }
  return Graph::from_edges(n, edges, self_loops);
}

Graph erdos_renyi(std::size_t n, double m, std::uint64_t seed) {
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0);
  if (!(m >= 0.0) || m > pairs) {
    throw std::invalid_argument("erdos_renyi: expected edge count out of [0, C(n,2)]");
  }
  const double p = pairs > 0.0 ? m / pairs : 0.0;
  detail::Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (detail::unit_uniform(rng) < p) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph chung_lu(const DegreeSequence& degrees, std::uint64_t seed) {
  const auto& d = degrees.values;
  double total = 0.0;
  for (double v : d) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("chung_lu: degrees must be finite and >= 0");
    total += v;
  }
  const std::size_t n = d.size();
  if (total == 0.0) return Graph::from_edges(n, {});

  detail::Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = std::min(1.0, d[i] * d[j] / total);
      if (detail::unit_uniform(rng) < p) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw std::invalid_argument("preferential_attachment: need n > m >= 1");
  detail::Rng rng(seed);
  std::vector<Edge> edges;
  // Every edge contributes both endpoints, so a uniform pick from this list
  // is a degree-proportional pick of a node.
  std::vector<NodeId> endpoints;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      edges.emplace_back(static_cast<NodeId>(j), static_cast<NodeId>(i));
      endpoints.push_back(static_cast<NodeId>(i));
      endpoints.push_back(static_cast<NodeId>(j));
    }
  }
  std::vector<NodeId> targets;
  for (std::size_t v = m + 1; v < n; ++v) {
    targets.clear();
    for (std::size_t draw = 0; draw < m; ++draw) {
      targets.push_back(endpoints[detail::uniform_index(rng, endpoints.size())]);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (NodeId u : targets) {
      edges.emplace_back(u, static_cast<NodeId>(v));
      endpoints.push_back(u);
      endpoints.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace exemb
