#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "exemb/metrics.hpp"

namespace exemb {
namespace {

constexpr Eigen::Index kProductBlock = 1024;

void check_size(const Graph& g, std::size_t n) {
  if (g.num_nodes() != n) {
    throw std::invalid_argument("metrics: size mismatch (graph has " + std::to_string(g.num_nodes()) +
                                " nodes, matrix has " + std::to_string(n) + ")");
  }
}

double adjacency_norm(const Graph& g) {
  if (g.num_edges() == 0) throw std::domain_error("relative error undefined for a graph without edges");
  return std::sqrt(static_cast<double>(g.adjacency().size()));
}

// Sum of squared differences between row i of the 0/1 adjacency and `row`.
template <typename Row>
double row_residual(const Graph& g, NodeId i, const Row& row) {
  double sum = 0.0;
  const auto nb = g.neighbors(i);
  auto next = nb.begin();
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    double a = 0.0;
    if (next != nb.end() && *next == static_cast<NodeId>(j)) {
      a = 1.0;
      ++next;
    }
    const double d = row(j) - a;
    sum += d * d;
  }
  return sum;
}

template <typename Transform>
double blocked_residual(const Graph& g, const EmbeddingPair& e, std::size_t block_rows, Transform f) {
  e.check();
  check_size(g, e.num_nodes());
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const auto block = static_cast<Eigen::Index>(std::max<std::size_t>(1, block_rows));
  double sum = 0.0;
  DenseMatrix m;
  for (Eigen::Index r0 = 0; r0 < n; r0 += block) {
    const Eigen::Index rows = std::min(block, n - r0);
    m.noalias() = e.x.middleRows(r0, rows) * e.y.transpose();
    m = m.unaryExpr(f);
    for (Eigen::Index i = 0; i < rows; ++i) sum += row_residual(g, static_cast<NodeId>(r0 + i), m.row(i));
  }
  return sum;
}

void check_caps(const std::vector<double>& caps) {
  for (std::size_t i = 1; i < caps.size(); ++i) {
    if (!(caps[i] >= caps[i - 1])) throw std::invalid_argument("triangle curve: caps must be ascending");
  }
}

// Nodes sorted by ascending degree (stable on id).
std::vector<NodeId> degree_order(const DegreeSequence& degrees) {
  std::vector<NodeId> order(degrees.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return degrees.values[a] < degrees.values[b]; });
  return order;
}

// per_position[p] holds the triangle mass whose highest-ranked node sits at
// position p of `order`; prefix sums then give every cap at once.
TriangleCurve curve_from_positions(const std::vector<double>& per_position, const std::vector<NodeId>& order,
                                   const DegreeSequence& degrees, const std::vector<double>& caps) {
  const std::size_t n = order.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t p = 0; p < n; ++p) prefix[p + 1] = prefix[p] + per_position[p];
  std::vector<double> sorted(n);
  for (std::size_t p = 0; p < n; ++p) sorted[p] = degrees.values[order[p]];

  TriangleCurve curve;
  curve.caps = caps;
  curve.values.reserve(caps.size());
  for (double cap : caps) {
    const auto count = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), cap) - sorted.begin());
    curve.values.push_back(n == 0 ? 0.0 : prefix[count] / static_cast<double>(n));
  }
  return curve;
}

}  // namespace

double rel_frobenius_error(const Graph& g, const ExpectedAdjacency& p) {
  check_size(g, p.size());
  if (p.p.cols() != p.p.rows()) throw std::invalid_argument("metrics: expected adjacency must be square");
  const double norm = adjacency_norm(g);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.p.rows(); ++i) sum += row_residual(g, static_cast<NodeId>(i), p.p.row(i));
  return std::sqrt(sum) / norm;
}

double rel_frobenius_error(const Graph& g, const EmbeddingPair& e, ReconstructMode mode, std::size_t block_rows) {
  const double norm = adjacency_norm(g);
  const double sum = mode == ReconstructMode::Threshold
                         ? blocked_residual(g, e, block_rows, [](double v) { return threshold(v); })
                         : blocked_residual(g, e, block_rows, [](double v) { return logistic(v); });
  return std::sqrt(sum) / norm;
}

double raw_frobenius_error(const Graph& g, const EmbeddingPair& e, std::size_t block_rows) {
  return std::sqrt(blocked_residual(g, e, block_rows, [](double v) { return v; }));
}

DenseMatrix symmetrized(const DenseMatrix& p, bool zero_diagonal) {
  if (p.rows() != p.cols()) throw std::invalid_argument("symmetrized: matrix must be square");
  DenseMatrix s = 0.5 * (p + p.transpose());
  if (zero_diagonal) s.diagonal().setZero();
  return s;
}

DegreeSequence expected_degrees(const ExpectedAdjacency& p) {
  const DenseMatrix s = symmetrized(p.p, !p.count_diagonal);
  DegreeSequence d;
  d.values.resize(p.size());
  for (Eigen::Index i = 0; i < s.rows(); ++i) d.values[static_cast<std::size_t>(i)] = s.row(i).sum();
  return d;
}

std::vector<double> expected_triangles_per_node(const ExpectedAdjacency& p) {
  const DenseMatrix q = symmetrized(p.p, true);
  const Eigen::Index n = q.rows();
  std::vector<double> t(p.size());
  DenseMatrix q2;
  for (Eigen::Index r0 = 0; r0 < n; r0 += kProductBlock) {
    const Eigen::Index rows = std::min(kProductBlock, n - r0);
    q2.noalias() = q.middleRows(r0, rows) * q;
    for (Eigen::Index i = 0; i < rows; ++i) t[static_cast<std::size_t>(r0 + i)] = 0.5 * q2.row(i).dot(q.row(r0 + i));
  }
  return t;
}

std::vector<double> triangles_per_node(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> t(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const auto ni = g.neighbors(i);
    for (NodeId j : ni) {
      if (j <= i) continue;
      const auto nj = g.neighbors(j);
      // common neighbors k > j
      auto a = std::upper_bound(ni.begin(), ni.end(), j);
      auto b = std::upper_bound(nj.begin(), nj.end(), j);
      while (a != ni.end() && b != nj.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          t[i] += 1.0;
          t[j] += 1.0;
          t[*a] += 1.0;
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

TriangleCurve low_degree_triangle_curve(const ExpectedAdjacency& p, const DegreeSequence& degrees,
                                        const std::vector<double>& caps) {
  check_caps(caps);
  const std::size_t n = p.size();
  if (degrees.size() != n) throw std::invalid_argument("triangle curve: degree sequence size mismatch");
  const std::vector<NodeId> order = degree_order(degrees);
  const auto m = static_cast<Eigen::Index>(n);

  if (p.p.rows() != m || p.p.cols() != m) throw std::invalid_argument("triangle curve: matrix must be square");
  // Q: symmetrized, zero-diagonal P with rows and columns in degree order.
  DenseMatrix q(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto oa = static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < m; ++b) {
      const auto ob = static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)]);
      q(a, b) = a == b ? 0.0 : 0.5 * (p.p(oa, ob) + p.p(ob, oa));
    }
  }
  // R keeps the strictly lower triangle: R(p, a) = Q(p, a) for a < p. Then
  // 1/2 sum_a (R Q)(p, a) R(p, a) = sum_{a < b < p} Q_pa Q_pb Q_ab.
  const DenseMatrix r = q.triangularView<Eigen::StrictlyLower>();
  std::vector<double> per_position(n);
  DenseMatrix rq;
  for (Eigen::Index r0 = 0; r0 < m; r0 += kProductBlock) {
    const Eigen::Index rows = std::min(kProductBlock, m - r0);
    rq.noalias() = r.middleRows(r0, rows) * q;
    for (Eigen::Index a = 0; a < rows; ++a) {
      per_position[static_cast<std::size_t>(r0 + a)] = 0.5 * rq.row(a).dot(r.row(r0 + a));
    }
  }
  return curve_from_positions(per_position, order, degrees, caps);
}

TriangleCurve low_degree_triangle_curve(const Graph& g, const std::vector<double>& caps) {
  check_caps(caps);
  const std::size_t n = g.num_nodes();
  // Same degrees as expected_degrees(ExpectedAdjacency::from_graph(g)).
  const DegreeSequence degrees = degree_sequence(g);
  const std::vector<NodeId> order = degree_order(degrees);
  std::vector<std::size_t> rank(n);
  for (std::size_t p = 0; p < n; ++p) rank[order[p]] = p;

  std::vector<double> per_position(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const auto ni = g.neighbors(i);
    for (NodeId j : ni) {
      if (j <= i) continue;
      const auto nj = g.neighbors(j);
      auto a = std::upper_bound(ni.begin(), ni.end(), j);
      auto b = std::upper_bound(nj.begin(), nj.end(), j);
      while (a != ni.end() && b != nj.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          per_position[std::max({rank[i], rank[j], rank[*a]})] += 1.0;
          ++a;
          ++b;
        }
      }
    }
  }
  return curve_from_positions(per_position, order, degrees, caps);
}

std::vector<double> default_caps(const DegreeSequence& degrees) {
  const double top = degrees.size() == 0 ? 0.0 : std::ceil(degrees.max());
  std::vector<double> caps;
  for (double c = 1.0; c <= top; c += 1.0) caps.push_back(c);
  if (caps.empty()) caps.push_back(1.0);
  return caps;
}

EvalReport evaluate_graph(const Graph& g, const std::vector<double>& caps) {
  EvalReport r;
  r.exact = true;
  r.rel_frobenius_error = 0.0;
  r.degrees = degree_sequence(g);
  r.triangles = triangles_per_node(g);
  r.curve = low_degree_triangle_curve(g, caps.empty() ? default_caps(r.degrees) : caps);
  r.provenance = Provenance::TrueAdjacency;
  return r;
}

EvalReport evaluate_reconstruction(const Graph& g, const ExpectedAdjacency& p, bool exact,
                                   const std::vector<double>& caps) {
  EvalReport r;
  r.exact = exact;
  r.rel_frobenius_error = rel_frobenius_error(g, p);
  r.degrees = expected_degrees(p);
  r.triangles = expected_triangles_per_node(p);
  r.curve = low_degree_triangle_curve(p, r.degrees, caps.empty() ? default_caps(r.degrees) : caps);
  r.provenance = p.provenance;
  return r;
}

}  // namespace exemb
