#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "exemb/construct.hpp"
#include "exemb/errors.hpp"

namespace exemb {
namespace {

// Breadth-first order starting from the highest-degree unvisited node;
// neighbors are queued by decreasing degree. Every node's unvisited
// neighbors end up contiguous.
std::vector<NodeId> breadth_first_order(const Graph& g) {
  const std::size_t n = g.num_nodes();
  auto by_degree = [&](NodeId a, NodeId b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
  };
  std::vector<NodeId> roots(n);
  std::iota(roots.begin(), roots.end(), NodeId{0});
  std::sort(roots.begin(), roots.end(), by_degree);

  std::vector<bool> seen(n, false);
  std::vector<NodeId> order;
  order.reserve(n);
  std::deque<NodeId> queue;
  std::vector<NodeId> next;
  for (NodeId r : roots) {
    if (seen[r]) continue;
    seen[r] = true;
    queue.push_back(r);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      next.clear();
      for (NodeId u : g.neighbors(v)) {
        if (!seen[u]) next.push_back(u);
      }
      std::sort(next.begin(), next.end(), by_degree);
      for (NodeId u : next) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return order;
}

struct Run {
  std::size_t first, last;
};

std::vector<Run> runs_of(std::vector<std::size_t>& positions) {
  std::sort(positions.begin(), positions.end());
  std::vector<Run> runs;
  for (std::size_t p : positions) {
    if (!runs.empty() && runs.back().last + 1 == p) {
      runs.back().last = p;
    } else {
      runs.push_back({p, p});
    }
  }
  return runs;
}

// Orthonormal basis of polynomials of degree < cols on the sample points,
// built by Arnoldi (multiply by t, then orthogonalize twice).
DenseMatrix orthonormal_polynomials(const std::vector<double>& samples, std::size_t cols) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  const auto k = static_cast<Eigen::Index>(cols);
  DenseMatrix q = DenseMatrix::Zero(n, k);
  const Eigen::Map<const Vector> t(samples.data(), n);
  q.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (Eigen::Index j = 1; j < k; ++j) {
    Vector v = t.cwiseProduct(q.col(j - 1));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
    }
    const double norm = v.norm();
    if (norm < 1e-10) break;  // degree exceeds what n points can resolve
    q.col(j) = v / norm;
  }
  return q;
}

}  // namespace

double row_polynomial(const VandermondeConstruction& vc, NodeId v, double t) {
  double value = vc.scale.at(v);
  for (double r : vc.roots.at(v)) value *= t - r;
  return value;
}

VandermondeConstruction vandermonde_construct(const Graph& g, const VandermondeOptions& options) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("vandermonde_construct: empty graph");
  if (n > options.max_nodes) {
    throw std::invalid_argument("vandermonde_construct: n=" + std::to_string(n) + " exceeds the cap of " +
                                std::to_string(options.max_nodes) + " nodes");
  }
  const std::size_t c = options.degree_bound ? options.degree_bound : g.max_degree();
  if (g.max_degree() > c) {
    throw std::invalid_argument("vandermonde_construct: max degree " + std::to_string(g.max_degree()) +
                                " exceeds bound c=" + std::to_string(c));
  }
  if (!(options.target_margin > 1.0)) throw std::invalid_argument("vandermonde_construct: target_margin must exceed 1");

  VandermondeConstruction vc;
  vc.degree_bound = c;
  if (options.reorder) {
    vc.order = breadth_first_order(g);
  } else {
    vc.order.resize(n);
    std::iota(vc.order.begin(), vc.order.end(), NodeId{0});
  }
  vc.position.resize(n);
  for (std::size_t p = 0; p < n; ++p) vc.position[vc.order[p]] = p;

  // t = 1..n mapped affinely into (-1, 1).
  const double dn = static_cast<double>(n);
  vc.samples.resize(n);
  for (std::size_t p = 0; p < n; ++p) vc.samples[p] = (2.0 * static_cast<double>(p + 1) - dn - 1.0) / dn;
  const double half_spacing = 1.0 / dn;
  const auto& s = vc.samples;

  std::vector<std::vector<Run>> runs(n);
  std::vector<std::vector<std::size_t>> ones(n);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId u : g.neighbors(v)) ones[v].push_back(vc.position[u]);
    runs[v] = runs_of(ones[v]);
    vc.max_runs = std::max(vc.max_runs, runs[v].size());
  }
  const std::size_t degree = options.minimal_rank ? 2 * vc.max_runs : 2 * c;
  const std::size_t k = degree + 1;

  vc.roots.assign(n, {});
  vc.scale.assign(n, 0.0);
  DenseMatrix values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));  // row v: p_v at each position
  std::vector<double> log_mag(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& roots = vc.roots[v];
    for (const Run& run : runs[v]) {
      roots.push_back(run.first > 0 ? 0.5 * (s[run.first - 1] + s[run.first]) : s[0] - half_spacing);
      roots.push_back(run.last + 1 < n ? 0.5 * (s[run.last] + s[run.last + 1]) : s[n - 1] + half_spacing);
    }
    std::fill(log_mag.begin(), log_mag.end(), 0.0);
    for (double r : roots) {
      for (std::size_t p = 0; p < n; ++p) log_mag[p] += std::log(std::abs(s[p] - r));
    }

    std::size_t spare = degree - roots.size();
    if (options.balance && n > 1) {
      // Double roots keep every sign; put each where |p| is largest.
      for (; spare >= 2; spare -= 2) {
        const auto peak = static_cast<std::size_t>(std::max_element(log_mag.begin(), log_mag.end()) - log_mag.begin());
        std::size_t gap = peak;
        if (peak + 1 == n || (peak > 0 && log_mag[peak - 1] > log_mag[peak + 1])) gap = peak - 1;
        const double r = 0.5 * (s[gap] + s[gap + 1]);
        roots.push_back(r);
        roots.push_back(r);
        for (std::size_t p = 0; p < n; ++p) log_mag[p] += 2.0 * std::log(std::abs(s[p] - r));
      }
    } else {
      // Pairs of roots past the last sample point.
      for (std::size_t j = 0; spare > 0; ++j, --spare) {
        const double r = (2.0 * (dn + 1.5 + static_cast<double>(j)) - dn - 1.0) / dn;
        roots.push_back(r);
        for (std::size_t p = 0; p < n; ++p) log_mag[p] += std::log(std::abs(s[p] - r));
      }
    }

    // Sign of prod (t - r) at each sample; flip so ones are positive.
    auto raw_sign = [&](std::size_t p) {
      bool negative = false;
      for (double r : roots) negative ^= (s[p] < r);
      return negative ? -1.0 : 1.0;
    };
    double flip;
    double reference;
    double target;
    if (!ones[v].empty()) {
      flip = raw_sign(ones[v].front());
      reference = std::numeric_limits<double>::infinity();
      for (std::size_t p : ones[v]) reference = std::min(reference, log_mag[p]);
      target = options.target_margin;
    } else {
      flip = -raw_sign(0);
      reference = *std::max_element(log_mag.begin(), log_mag.end());
      target = 1.0;
    }
    vc.scale[v] = flip * target * std::exp(-reference);
    for (std::size_t p = 0; p < n; ++p) {
      values(v, static_cast<Eigen::Index>(p)) = flip * raw_sign(p) * target * std::exp(log_mag[p] - reference);
    }
  }

  EmbeddingPair& e = vc.embedding;
  e.method = Method::Construction;
  e.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  e.y.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  if (options.basis == PolynomialBasis::Monomial) {
    for (NodeId v = 0; v < n; ++v) {
      std::vector<double> coeffs{vc.scale[v]};
      for (double r : vc.roots[v]) {
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          next[j + 1] += coeffs[j];
          next[j] -= r * coeffs[j];
        }
        coeffs = std::move(next);
      }
      coeffs.resize(k, 0.0);
      for (std::size_t j = 0; j < k; ++j) e.x(v, static_cast<Eigen::Index>(j)) = coeffs[j];
      double power = 1.0;
      const double t = s[vc.position[v]];
      for (std::size_t j = 0; j < k; ++j, power *= t) e.y(v, static_cast<Eigen::Index>(j)) = power;
    }
  } else {
    const DenseMatrix q = orthonormal_polynomials(s, k);
    for (NodeId v = 0; v < n; ++v) e.y.row(v) = q.row(static_cast<Eigen::Index>(vc.position[v]));
    e.x.noalias() = values * q;
  }

  if (!e.x.allFinite()) throw NumericalError("vandermonde_construct: coefficient overflow");
  const ExactnessReport report = verify_exact(g, e);
  if (!report.exact) {
    throw NumericalError("vandermonde_construct: row " + std::to_string(report.worst_row) +
                         " lost its sign margin (worst slack " + std::to_string(report.worst_margin) + ", " +
                         std::to_string(report.violations) + " violations); n=" + std::to_string(n) +
                         " with c=" + std::to_string(c) + " is beyond double precision");
  }
  return vc;
}

}  // namespace exemb
