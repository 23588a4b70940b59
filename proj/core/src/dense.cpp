#include "exemb/dense.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "exemb/errors.hpp"

namespace exemb {

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

double max_asymmetry(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("max_asymmetry: matrix is not square");
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void write_matrix_text(const DenseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

DenseMatrix read_matrix_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw DataError("bad matrix header in '" + path.string() + "'");
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> m(i, j))) throw DataError("truncated matrix in '" + path.string() + "'");
    }
  }
  return m;
}

}  // namespace exemb
