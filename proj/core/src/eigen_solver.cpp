#include "exemb/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "exemb/errors.hpp"
#include "random.hpp"

namespace exemb {
namespace {

using MatVec = std::function<void(const DenseMatrix&, DenseMatrix&)>;

// Indices of `values` ordered by |value| descending, positive first among
// equal magnitudes.
std::vector<Eigen::Index> magnitude_order(const Vector& values) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return std::abs(values[a]) > std::abs(values[b]); });
  const double scale = values.size() ? std::max(1.0, values.cwiseAbs().maxCoeff()) : 1.0;
  const double tie = 1e-10 * scale;
  for (std::size_t start = 0; start < idx.size();) {
    std::size_t end = start + 1;
    while (end < idx.size() && std::abs(values[idx[start]]) - std::abs(values[idx[end]]) <= tie) ++end;
    std::stable_partition(idx.begin() + static_cast<std::ptrdiff_t>(start),
                          idx.begin() + static_cast<std::ptrdiff_t>(end),
                          [&](Eigen::Index i) { return values[i] >= 0.0; });
    start = end;
  }
  return idx;
}

// Largest-magnitude component of each column made positive.
void fix_signs(DenseMatrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

void fill_residuals(EigenPairs& out, const MatVec& apply) {
  DenseMatrix av;
  apply(out.vectors, av);
  out.residuals.resize(static_cast<std::size_t>(out.values.size()));
  for (Eigen::Index j = 0; j < out.values.size(); ++j) {
    out.residuals[static_cast<std::size_t>(j)] = (av.col(j) - out.values[j] * out.vectors.col(j)).norm();
  }
}

EigenPairs dense_top_k(const DenseMatrix& a, std::size_t k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalError("top_k_eigs: dense eigensolver failed");
  const Vector& all = solver.eigenvalues();
  const auto order = magnitude_order(all);
  EigenPairs out;
  out.values.resize(static_cast<Eigen::Index>(k));
  out.vectors.resize(a.rows(), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    out.values[static_cast<Eigen::Index>(j)] = all[order[j]];
    out.vectors.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(order[j]);
  }
  fix_signs(out.vectors);
  return out;
}

DenseMatrix orthonormalize(const DenseMatrix& w) {
  Eigen::MatrixXd cm = w;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(cm);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(w.rows(), w.cols());
  return q;
}

void project_out(DenseMatrix& w, const DenseMatrix& locked) {
  if (locked.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) w -= locked * (locked.transpose() * w);
}

// Block subspace iteration with Rayleigh-Ritz and locking of the leading
// converged Ritz pairs.
EigenPairs subspace_top_k(std::size_t n, std::size_t k, const MatVec& apply, const EigenOptions& options) {
  const std::size_t extra = options.oversample ? options.oversample : std::max<std::size_t>(16, k);
  const std::size_t block = std::min(n, k + extra);

  detail::Rng rng(options.seed);
  DenseMatrix start(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(block));
  for (Eigen::Index i = 0; i < start.rows(); ++i) {
    for (Eigen::Index j = 0; j < start.cols(); ++j) start(i, j) = detail::uniform(rng, -1.0, 1.0);
  }
  DenseMatrix active = orthonormalize(start);
  DenseMatrix locked(static_cast<Eigen::Index>(n), 0);
  std::vector<double> locked_values;

  DenseMatrix w;
  double worst = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    apply(active, w);
    Eigen::MatrixXd h = active.transpose() * w;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(h);
    const auto order = magnitude_order(small.eigenvalues());

    Eigen::MatrixXd rot(h.rows(), h.cols());
    Vector theta(h.rows());
    for (std::size_t j = 0; j < order.size(); ++j) {
      rot.col(static_cast<Eigen::Index>(j)) = small.eigenvectors().col(order[j]);
      theta[static_cast<Eigen::Index>(j)] = small.eigenvalues()[order[j]];
    }
    DenseMatrix ritz = active * rot;
    DenseMatrix aritz = w * rot;

    const std::size_t wanted = k - locked_values.size();
    std::size_t converged = 0;
    worst = 0.0;
    for (std::size_t j = 0; j < wanted; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const double res = (aritz.col(jj) - theta[jj] * ritz.col(jj)).norm() / std::max(1.0, std::abs(theta[jj]));
      worst = std::max(worst, res);
      if (res <= options.tolerance && converged == j) ++converged;
    }
    // Locked columns are genuine eigenvectors only if the whole space was
    // spanned or they lead the ordering.
    if (block == n) converged = wanted;

    if (converged > 0) {
      const auto old = locked.cols();
      locked.conservativeResize(Eigen::NoChange, old + static_cast<Eigen::Index>(converged));
      locked.rightCols(static_cast<Eigen::Index>(converged)) = ritz.leftCols(static_cast<Eigen::Index>(converged));
      for (std::size_t j = 0; j < converged; ++j) locked_values.push_back(theta[static_cast<Eigen::Index>(j)]);
    }
    if (locked_values.size() >= k) {
      EigenPairs out;
      out.values = Eigen::Map<const Vector>(locked_values.data(), static_cast<Eigen::Index>(k));
      out.vectors = locked.leftCols(static_cast<Eigen::Index>(k));
      out.iterations = it;
      // Reorder: locking order follows convergence, not necessarily magnitude.
      const auto final_order = magnitude_order(out.values);
      EigenPairs sorted = out;
      for (std::size_t j = 0; j < k; ++j) {
        sorted.values[static_cast<Eigen::Index>(j)] = out.values[final_order[j]];
        sorted.vectors.col(static_cast<Eigen::Index>(j)) = out.vectors.col(final_order[j]);
      }
      fix_signs(sorted.vectors);
      return sorted;
    }

    const auto keep = static_cast<Eigen::Index>(block - locked_values.size());
    DenseMatrix next = aritz.middleCols(static_cast<Eigen::Index>(converged), keep);
    project_out(next, locked);
    active = orthonormalize(next);
    project_out(active, locked);
    active = orthonormalize(active);
  }
  throw ConvergenceError("top_k_eigs: subspace iteration did not converge", options.max_iterations, worst);
}

void check_k(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw std::invalid_argument("top_k_eigs: k=" + std::to_string(k) + " must be in [1, n=" + std::to_string(n) + "]");
  }
}

}  // namespace

EigenPairs top_k_eigs(const DenseMatrix& a, std::size_t k, const EigenOptions& options) {
  if (a.rows() != a.cols()) throw std::invalid_argument("top_k_eigs: matrix is not square");
  const auto n = static_cast<std::size_t>(a.rows());
  check_k(n, k);
  if (!a.allFinite()) throw std::invalid_argument("top_k_eigs: non-finite entries");
  if (max_asymmetry(a) > 1e-10) throw std::invalid_argument("top_k_eigs: matrix is not symmetric");

  const MatVec apply = [&a](const DenseMatrix& v, DenseMatrix& out) { out = a * v; };
  EigenPairs out = n <= options.dense_cutoff ? dense_top_k(a, k) : subspace_top_k(n, k, apply, options);
  fill_residuals(out, apply);
  return out;
}

EigenPairs top_k_eigs(const Graph& g, std::size_t k, const EigenOptions& options) {
  const std::size_t n = g.num_nodes();
  check_k(n, k);
  const MatVec apply = [&g](const DenseMatrix& v, DenseMatrix& out) { g.multiply(v, out); };
  EigenPairs out = n <= options.dense_cutoff ? dense_top_k(g.to_dense(), k) : subspace_top_k(n, k, apply, options);
  fill_residuals(out, apply);
  return out;
}

}  // namespace exemb
