#include "exemb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace exemb {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, bool allow_self_loops) {
  if (n > std::numeric_limits<NodeId>::max()) {
    throw std::invalid_argument("graph: too many nodes");
  }
  Graph g;
  g.n_ = n;
  g.allow_self_loops_ = allow_self_loops;

  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n) {
      throw std::invalid_argument("graph: edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") out of range for n=" + std::to_string(n));
    }
    if (i == j) {
      if (!allow_self_loops) {
        throw std::invalid_argument("graph: self-loop on node " + std::to_string(i));
      }
      ++counts[i + 1];
    } else {
      ++counts[i + 1];
      ++counts[j + 1];
    }
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());

  std::vector<NodeId> raw(counts[n]);
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (const auto& [i, j] : edges) {
    raw[fill[i]++] = j;
    if (i != j) raw[fill[j]++] = i;
  }

  g.offsets_.assign(n + 1, 0);
  g.adj_.clear();
  g.adj_.reserve(raw.size());
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) {
      g.adj_.push_back(*it);
      if (*it == v) ++g.num_loops_;
    }
    degree_sum += static_cast<std::size_t>(last - first);
    g.offsets_[v + 1] = g.adj_.size();
  }
  g.num_edges_ = (degree_sum - g.num_loops_) / 2 + g.num_loops_;
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < n_; ++v) best = std::max(best, offsets_[v + 1] - offsets_[v]);
  return best;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j : neighbors(i)) {
      if (j >= i) out.emplace_back(i, j);
    }
  }
  return out;
}

DenseMatrix Graph::to_dense() const {
  DenseMatrix a = DenseMatrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (NodeId i = 0; i < n_; ++i) {
    for (NodeId j : neighbors(i)) a(i, j) = 1.0;
  }
  return a;
}

void Graph::multiply(const DenseMatrix& x, DenseMatrix& y) const {
  y.setZero(x.rows(), x.cols());
  for (NodeId i = 0; i < n_; ++i) {
    auto yi = y.row(i);
    for (NodeId j : neighbors(i)) yi += x.row(j);
  }
}

void Graph::validate() const {
  if (offsets_.size() != n_ + 1 || offsets_.back() != adj_.size()) {
    throw std::logic_error("graph: offsets do not match adjacency");
  }
  std::size_t loops = 0;
  for (NodeId i = 0; i < n_; ++i) {
    const auto nb = neighbors(i);
    for (std::size_t p = 0; p < nb.size(); ++p) {
      if (nb[p] >= n_) throw std::logic_error("graph: neighbor out of range");
      if (p > 0 && nb[p - 1] >= nb[p]) throw std::logic_error("graph: neighbor list not strictly sorted");
      if (nb[p] == i) {
        if (!allow_self_loops_) throw std::logic_error("graph: unexpected self-loop");
        ++loops;
      } else if (!has_edge(nb[p], i)) {
        throw std::logic_error("graph: asymmetric edge");
      }
    }
  }
  if (loops != num_loops_) throw std::logic_error("graph: self-loop count mismatch");
  if (adj_.size() != 2 * (num_edges_ - num_loops_) + num_loops_) {
    throw std::logic_error("graph: degree sum does not match edge count");
  }
}

// ---------------------------------------------------------------------------

double DegreeSequence::mean() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double DegreeSequence::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::vector<double> DegreeSequence::sorted_descending() const {
  std::vector<double> out = values;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double DegreeSequence::percentile(double q) const {
  if (values.empty()) return 0.0;
  std::vector<double> s = values;
  std::sort(s.begin(), s.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

DegreeSequence degree_sequence(const Graph& g) {
  DegreeSequence d;
  d.values.resize(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) d.values[i] = static_cast<double>(g.degree(i));
  return d;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
  std::vector<std::int64_t> relabel(g.num_nodes(), -1);
  for (std::size_t p = 0; p < keep.size(); ++p) relabel[keep[p]] = static_cast<std::int64_t>(p);
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < keep.size(); ++p) {
    for (NodeId j : g.neighbors(keep[p])) {
      const auto q = relabel[j];
      if (q >= static_cast<std::int64_t>(p)) edges.emplace_back(static_cast<NodeId>(p), static_cast<NodeId>(q));
    }
  }
  return Graph::from_edges(keep.size(), edges, g.allow_self_loops());
}

}  // namespace exemb
