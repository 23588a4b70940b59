#pragma once

#include <filesystem>

#include <Eigen/Core>

namespace exemb {

/// Row-major double matrix used for factors, probabilities and dense
/// adjacency blocks.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

bool all_finite(const DenseMatrix& m);

/// Largest |m(i,j) - m(j,i)|. Requires a square matrix.
double max_asymmetry(const DenseMatrix& m);

/// Debug dump: "rows cols" header, then one row per line.
void write_matrix_text(const DenseMatrix& m, const std::filesystem::path& path);
DenseMatrix read_matrix_text(const std::filesystem::path& path);

}  // namespace exemb
