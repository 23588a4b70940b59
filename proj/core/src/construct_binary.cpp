#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "exemb/construct.hpp"
#include "exemb/errors.hpp"
#include "exemb/generators.hpp"
#include "random.hpp"

namespace exemb {
namespace {

using Bits = std::vector<std::uint8_t>;

// Random subset of size s from [0, k) by partial Fisher-Yates.
Bits random_row(detail::Rng& rng, std::size_t k, std::size_t s) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Bits row(k, 0);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i + detail::uniform_index(rng, k - i);
    std::swap(idx[i], idx[j]);
    row[idx[i]] = 1;
  }
  return row;
}

std::size_t overlap(const Bits& a, const Bits& b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += a[i] & b[i];
  return count;
}

// Moves `swaps` ones of the center to random zero positions.
Bits perturb(detail::Rng& rng, const Bits& center, std::size_t swaps) {
  std::vector<std::size_t> ones, zeros;
  for (std::size_t i = 0; i < center.size(); ++i) (center[i] ? ones : zeros).push_back(i);
  Bits row = center;
  for (std::size_t t = 0; t < swaps; ++t) {
    const std::size_t a = t + detail::uniform_index(rng, ones.size() - t);
    const std::size_t b = t + detail::uniform_index(rng, zeros.size() - t);
    std::swap(ones[t], ones[a]);
    std::swap(zeros[t], zeros[b]);
    row[ones[t]] = 0;
    row[zeros[t]] = 1;
  }
  return row;
}

}  // namespace

BinaryClusterConstruction binary_cluster_construct(std::size_t n, std::size_t c, std::uint64_t seed,
                                                   const BinaryClusterOptions& options) {
  if (c == 0 || n % c != 0) {
    throw std::invalid_argument("binary clusters: cluster size " + std::to_string(c) + " does not divide n=" +
                                std::to_string(n));
  }
  if (n < 2) throw std::invalid_argument("binary clusters: need n >= 2");
  const double log_n = std::log(static_cast<double>(n));
  const auto s = static_cast<std::size_t>(std::ceil(2.0 * log_n));
  const auto k = static_cast<std::size_t>(std::ceil(options.d * log_n));
  const double log_ceil = std::ceil(log_n);
  const auto swaps = static_cast<std::size_t>(std::floor(log_n / 3.0));
  const double tau = static_cast<double>(s * s) / (4.0 * log_ceil);

  // Members of one cluster share >= s - 2 swaps ones; that must clear tau + 1.
  if (static_cast<double>(s) - 2.0 * static_cast<double>(swaps) < tau + 1.0) {
    throw std::invalid_argument("binary clusters: within-cluster overlap cannot clear the offset for n=" +
                                std::to_string(n));
  }
  // Cross-cluster members must overlap in fewer than tau positions. Centers
  // get the same bound; members are then resampled until every
  // cross-cluster pair satisfies it.
  if (k < 2 * s) throw std::invalid_argument("binary clusters: k < 2s; increase d");
  const auto bound = static_cast<std::size_t>(std::ceil(tau) - 1.0);

  const std::size_t clusters = n / c;
  detail::Rng rng(seed);
  int retries = 0;
  auto spend = [&] {
    if (++retries > options.max_retries) {
      throw NumericalError("binary clusters: validation failed after " + std::to_string(options.max_retries) +
                           " retries; increase d");
    }
  };
  constexpr int kStuck = 2000;

  std::vector<Bits> centers;
  std::vector<Bits> rows;
  std::vector<std::size_t> cluster;
  bool placed = false;
  while (!placed) {
    centers.clear();
    rows.clear();
    cluster.clear();
    int misses = 0;
    while (centers.size() < clusters && misses < kStuck) {
      Bits candidate = random_row(rng, k, s);
      if (std::all_of(centers.begin(), centers.end(), [&](const Bits& o) { return overlap(candidate, o) <= bound; })) {
        centers.push_back(std::move(candidate));
        misses = 0;
      } else {
        ++misses;
        spend();
      }
    }
    if (centers.size() < clusters) continue;  // restart from scratch

    placed = true;
    for (std::size_t q = 0; q < clusters && placed; ++q) {
      for (std::size_t m = 0; m < c && placed; ++m) {
        misses = 0;
        for (;;) {
          Bits member = perturb(rng, centers[q], swaps);
          bool ok = true;
          for (std::size_t i = 0; i < rows.size() && ok; ++i) {
            ok = cluster[i] == q || overlap(member, rows[i]) <= bound;
          }
          if (ok) {
            rows.push_back(std::move(member));
            cluster.push_back(q);
            break;
          }
          spend();
          if (++misses >= kStuck) {
            placed = false;
            break;
          }
        }
      }
    }
  }

  // Direct check of every member pair against the integer bounds.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto dot = static_cast<double>(overlap(rows[i], rows[j]));
      const bool same = cluster[i] == cluster[j];
      if (same ? dot < tau + 1.0 : dot >= tau) {
        throw std::logic_error("binary clusters: overlap bound violated between rows " + std::to_string(i) +
                               " and " + std::to_string(j));
      }
    }
  }

  if (options.include_centers) {
    for (std::size_t q = 0; q < clusters; ++q) {
      rows.push_back(centers[q]);
      cluster.push_back(q);
    }
  }

  BinaryClusterConstruction out;
  out.ones_per_row = s;
  out.swaps = swaps;
  out.center_overlap_bound = bound;
  out.offset = tau;
  out.cluster = std::move(cluster);
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto kk = static_cast<Eigen::Index>(k);
  out.u.resize(r, kk);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < kk; ++j) out.u(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  out.m = DenseMatrix::Identity(kk, kk).array() - 1.0 / (4.0 * log_ceil);
  out.embedding.x = out.u;
  out.embedding.y.noalias() = out.u * out.m.transpose();
  out.embedding.method = Method::Construction;

  if (!options.include_centers) {
    const ExactnessReport report = verify_exact(clique_union(n, c, true), out.embedding);
    if (!report.exact) {
      throw NumericalError("binary clusters: row " + std::to_string(report.worst_row) + " misses its margin (" +
                           std::to_string(report.worst_margin) + ")");
    }
  }
  return out;
}

}  // namespace exemb
