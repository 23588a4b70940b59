#include <benchmark/benchmark.h>

#include <random>

#include "exemb/construct.hpp"
#include "exemb/eigen_solver.hpp"
#include "exemb/generators.hpp"
#include "exemb/lpca.hpp"
#include "exemb/metrics.hpp"
#include "exemb/tsvd.hpp"

using namespace exemb;

namespace {

DenseMatrix random_factor(std::size_t n, std::size_t k, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d(0.0, 0.3);
  DenseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

void BM_LossGrad(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const Graph g = preferential_attachment(n, 3, 1);
  const DenseMatrix x = random_factor(n, k, 1), y = random_factor(n, k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lpca_loss_grad(g, x, y).loss);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_LossGrad)->Args({1000, 16})->Args({2708, 16})->Args({2708, 64})->Unit(benchmark::kMillisecond);

void BM_TopEigs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = preferential_attachment(n, 3, 1);
  EigenOptions o;
  o.dense_cutoff = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(top_k_eigs(g, 16, o).values);
}
BENCHMARK(BM_TopEigs)->Args({1000, 4096})->Args({1000, 0})->Args({5000, 0})->Unit(benchmark::kMillisecond);

void BM_ExpectedTriangles(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = preferential_attachment(n, 3, 1);
  const ExpectedAdjacency p = reconstruct(tsvd_fit(g, 16), ReconstructMode::Threshold);
  for (auto _ : state) benchmark::DoNotOptimize(expected_triangles_per_node(p));
}
BENCHMARK(BM_ExpectedTriangles)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TriangleCurve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = preferential_attachment(n, 3, 1);
  const ExpectedAdjacency p = reconstruct(tsvd_fit(g, 16), ReconstructMode::Threshold);
  const DegreeSequence d = expected_degrees(p);
  const auto caps = default_caps(d);
  for (auto _ : state) benchmark::DoNotOptimize(low_degree_triangle_curve(p, d, caps).values);
}
BENCHMARK(BM_TriangleCurve)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Vandermonde(benchmark::State& state) {
  const Graph g = preferential_attachment(static_cast<std::size_t>(state.range(0)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(vandermonde_construct(g).embedding.x);
}
BENCHMARK(BM_Vandermonde)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BinaryClusters(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)), c = static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(binary_cluster_construct(n, c, seed++).u);
}
BENCHMARK(BM_BinaryClusters)->Args({27, 3})->Args({64, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
