#include "exemb/lpca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exemb/errors.hpp"
#include "exemb/parallel.hpp"
#include "random.hpp"

namespace exemb {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Lpca: return "lpca";
    case Method::Tsvd: return "tsvd";
    case Method::Construction: return "construction";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  if (s == "lpca") return Method::Lpca;
  if (s == "tsvd") return Method::Tsvd;
  if (s == "construction") return Method::Construction;
  throw std::invalid_argument("unknown embedding method '" + std::string(s) + "'");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::TrueAdjacency: return "true-adjacency";
    case Provenance::TsvdThreshold: return "tsvd-threshold";
    case Provenance::LpcaLogistic: return "lpca-logistic";
    case Provenance::LpcaThreshold: return "lpca-threshold";
    case Provenance::ConstructionThreshold: return "construction-threshold";
  }
  return "unknown";
}

ExpectedAdjacency ExpectedAdjacency::from_graph(const Graph& g) {
  return {g.to_dense(), Provenance::TrueAdjacency, g.allow_self_loops()};
}

void EmbeddingPair::check() const {
  if (x.cols() < 1 || x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("embedding: X and Y must share a shape with at least one column");
  }
  if (!x.allFinite() || !y.allFinite()) throw std::invalid_argument("embedding: non-finite factor entries");
}

double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double logistic(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

using RowArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_shapes(const Graph& g, const DenseMatrix& x, const DenseMatrix& y) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  if (x.rows() != n || y.rows() != n || x.cols() != y.cols() || x.cols() < 1) {
    throw std::invalid_argument("lpca: factor shapes do not match the graph (n=" + std::to_string(n) + ")");
  }
}

}  // namespace

LossGrad lpca_loss_grad(const Graph& g, const DenseMatrix& x, const DenseMatrix& y, const LpcaOptions& options) {
  check_shapes(g, x, y);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const auto k = x.cols();
  const auto block = static_cast<Eigen::Index>(std::max<std::size_t>(1, options.block_rows));
  const std::size_t num_blocks = static_cast<std::size_t>((n + block - 1) / block);
  const int threads = options.threads > 0 ? options.threads : default_threads();
  const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(1, num_blocks)));

  LossGrad out;
  out.grad_x.resize(n, k);
  std::vector<double> partial_loss(static_cast<std::size_t>(workers), 0.0);
  std::vector<DenseMatrix> partial_gy(static_cast<std::size_t>(workers));

  parallel_chunks(num_blocks, workers, [&](int w, std::size_t first, std::size_t last) {
    DenseMatrix& gy = partial_gy[static_cast<std::size_t>(w)];
    gy.setZero(n, k);
    double loss = 0.0;
    RowArray z, e, sig;
    for (std::size_t b = first; b < last; ++b) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(b) * block;
      const Eigen::Index rows = std::min(block, n - r0);
      // z = -S .* M: equal to M on zero entries, -M on edges.
      z = (x.middleRows(r0, rows) * y.transpose()).array();
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (NodeId j : g.neighbors(static_cast<NodeId>(r0 + i))) z(i, j) = -z(i, j);
      }
      // Terms below e^-460 are flushed to zero; left alone they turn into
      // denormals that slow the kernel several-fold.
      e = (z.abs() < 460.0).select((-z.abs()).exp(), 0.0);
      // log1p(e) through the vectorized log: log(u) * e / (u - 1), u = 1 + e.
      sig = 1.0 + e;
      loss += z.max(0.0).sum() + (sig == 1.0).select(e, sig.log() * e / (sig - 1.0)).sum();
      sig = sig.inverse();
      sig = (z >= 0.0).select(sig, e * sig);
      // dL/dM = -S .* logistic(z)
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (NodeId j : g.neighbors(static_cast<NodeId>(r0 + i))) sig(i, j) = -sig(i, j);
      }
      const auto gm = sig.matrix();
      out.grad_x.middleRows(r0, rows).noalias() = gm * y;
      gy.noalias() += gm.transpose() * x.middleRows(r0, rows);
    }
    partial_loss[static_cast<std::size_t>(w)] = loss;
  });

  out.loss = 0.0;
  out.grad_y = DenseMatrix::Zero(n, k);
  for (int w = 0; w < workers; ++w) {
    out.loss += partial_loss[static_cast<std::size_t>(w)];
    if (partial_gy[static_cast<std::size_t>(w)].size() > 0) out.grad_y += partial_gy[static_cast<std::size_t>(w)];
  }
  if (!std::isfinite(out.loss) || !out.grad_x.allFinite() || !out.grad_y.allFinite()) {
    throw NumericalError("lpca: non-finite loss or gradient");
  }
  return out;
}

EmbeddingPair lpca_fit(const Graph& g, std::size_t rank, std::uint64_t seed, const LpcaOptions& options) {
  if (rank < 1) throw std::invalid_argument("lpca_fit: rank must be >= 1");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  if (n < 1) throw std::invalid_argument("lpca_fit: graph has no nodes");
  const auto k = static_cast<Eigen::Index>(rank);
  const Eigen::Index half = n * k;

  detail::Rng rng(seed);
  Vector x0(2 * half);
  for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = detail::uniform(rng, -1.0, 1.0);

  DenseMatrix xm(n, k), ym(n, k);
  const Objective objective = [&](const Vector& v, Vector& grad) {
    xm = Eigen::Map<const DenseMatrix>(v.data(), n, k);
    ym = Eigen::Map<const DenseMatrix>(v.data() + half, n, k);
    const LossGrad lg = lpca_loss_grad(g, xm, ym, options);
    Eigen::Map<DenseMatrix>(grad.data(), n, k) = lg.grad_x;
    Eigen::Map<DenseMatrix>(grad.data() + half, n, k) = lg.grad_y;
    return lg.loss;
  };
  LbfgsResult res = lbfgs_minimize(objective, std::move(x0), options.lbfgs);

  EmbeddingPair e;
  e.x = Eigen::Map<const DenseMatrix>(res.x.data(), n, k);
  e.y = Eigen::Map<const DenseMatrix>(res.x.data() + half, n, k);
  e.method = Method::Lpca;
  e.iterations = res.iters;
  e.final_loss = res.loss;
  e.stop_reason = res.reason;
  return e;
}

ExactnessReport verify_exact(const Graph& g, const EmbeddingPair& e, DiagonalPolicy diagonal, std::size_t block_rows) {
  check_shapes(g, e.x, e.y);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const auto block = static_cast<Eigen::Index>(std::max<std::size_t>(1, block_rows));
  constexpr double kNearTol = 1e-9;

  ExactnessReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  DenseMatrix m;
  for (Eigen::Index r0 = 0; r0 < n; r0 += block) {
    const Eigen::Index rows = std::min(block, n - r0);
    m.noalias() = e.x.middleRows(r0, rows) * e.y.transpose();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const auto row = static_cast<NodeId>(r0 + i);
      const auto nb = g.neighbors(row);
      auto next = nb.begin();
      for (Eigen::Index j = 0; j < n; ++j) {
        const bool one = next != nb.end() && *next == static_cast<NodeId>(j);
        if (one) ++next;
        if (diagonal == DiagonalPolicy::Ignore && j == row) continue;
        const double slack = one ? m(i, j) - 1.0 : -m(i, j);
        if (slack < 0.0) ++report.violations;
        if (slack < -kNearTol) ++report.near_violations;
        if (slack < report.worst_margin) {
          report.worst_margin = slack;
          report.worst_row = row;
        }
      }
    }
  }
  report.exact = report.violations == 0;
  return report;
}

ExpectedAdjacency reconstruct(const EmbeddingPair& e, ReconstructMode mode) {
  e.check();
  ExpectedAdjacency out;
  out.p.noalias() = e.x * e.y.transpose();
  if (mode == ReconstructMode::Threshold) {
    out.p = out.p.unaryExpr([](double v) { return threshold(v); });
    switch (e.method) {
      case Method::Lpca: out.provenance = Provenance::LpcaThreshold; break;
      case Method::Tsvd: out.provenance = Provenance::TsvdThreshold; break;
      case Method::Construction: out.provenance = Provenance::ConstructionThreshold; break;
    }
  } else {
    out.p = out.p.unaryExpr([](double v) { return logistic(v); });
    out.provenance = Provenance::LpcaLogistic;
  }
  return out;
}

}  // namespace exemb
