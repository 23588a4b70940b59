#include <gtest/gtest.h>

#include <cmath>

#include "exemb/eigen_solver.hpp"
#include "exemb/generators.hpp"
#include "oracles.hpp"

using namespace exemb;

namespace {

DenseMatrix random_symmetric(Eigen::Index n, unsigned seed) {
  std::srand(seed);
  DenseMatrix a = DenseMatrix::Random(n, n);
  return 0.5 * (a + a.transpose());
}

}  // namespace

class CliqueSpectrum : public ::testing::TestWithParam<int> {};

TEST_P(CliqueSpectrum, RecoversCMinusOneAndMinusOne) {
  const int c = GetParam();
  const Graph g = clique_union(static_cast<std::size_t>(c), static_cast<std::size_t>(c));
  const EigenPairs p = top_k_eigs(g, static_cast<std::size_t>(c));
  EXPECT_NEAR(p.values[0], c - 1.0, 1e-10);
  for (int i = 1; i < c; ++i) EXPECT_NEAR(p.values[i], -1.0, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Eigen, CliqueSpectrum, ::testing::Values(3, 4, 5, 8));

TEST(Eigen, FullRankReconstruction) {
  for (unsigned seed = 1; seed <= 3; ++seed) {
    const Graph g = oracle::random_graph(40, 0.2, seed);
    const DenseMatrix a = oracle::adjacency(g);
    const EigenPairs p = top_k_eigs(g, 40);
    const DenseMatrix back = p.vectors * p.values.asDiagonal() * p.vectors.transpose();
    EXPECT_LE((back - a).norm() / a.norm(), 1e-6);
    EXPECT_LE((p.vectors.transpose() * p.vectors - DenseMatrix::Identity(40, 40)).norm(), 1e-10);
  }
}

TEST(Eigen, OrderedByMagnitudePositiveFirstOnTies) {
  DenseMatrix a = DenseMatrix::Zero(4, 4);
  a.diagonal() << -3.0, 1.0, 3.0, -0.5;
  const EigenPairs p = top_k_eigs(a, 4);
  EXPECT_DOUBLE_EQ(p.values[0], 3.0);
  EXPECT_DOUBLE_EQ(p.values[1], -3.0);
  EXPECT_DOUBLE_EQ(p.values[2], 1.0);
  EXPECT_DOUBLE_EQ(p.values[3], -0.5);
}

TEST(Eigen, IterativePathAgreesWithDense) {
  const Graph g = oracle::random_graph(300, 0.05, 11);
  const EigenPairs dense = top_k_eigs(g, 8);
  EigenOptions o;
  o.dense_cutoff = 10;
  const EigenPairs iter = top_k_eigs(g, 8, o);
  EXPECT_GT(iter.iterations, 0);
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(iter.values[i], dense.values[i], 1e-8);
    EXPECT_LT(iter.residuals[static_cast<std::size_t>(i)], 1e-6);
    // eigenvectors agree up to sign
    EXPECT_NEAR(std::abs(iter.vectors.col(i).dot(dense.vectors.col(i))), 1.0, 1e-6);
  }
}

TEST(Eigen, IterativePathOnDenseMatrix) {
  const DenseMatrix a = random_symmetric(200, 5);
  EigenOptions o;
  o.dense_cutoff = 0;
  const EigenPairs iter = top_k_eigs(a, 5, o);
  const EigenPairs dense = top_k_eigs(a, 5);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(iter.values[i], dense.values[i], 1e-7);
}

TEST(Eigen, RejectsBadInput) {
  DenseMatrix a = DenseMatrix::Identity(3, 3);
  a(0, 1) = 1.0;
  EXPECT_THROW(top_k_eigs(a, 2), std::invalid_argument);
  EXPECT_THROW(top_k_eigs(DenseMatrix::Identity(3, 3), 0), std::invalid_argument);
  EXPECT_THROW(top_k_eigs(DenseMatrix::Identity(3, 3), 4), std::invalid_argument);
}
