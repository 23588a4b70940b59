#include <stdexcept>
#include <string>

#include "exemb/construct.hpp"

namespace exemb {

LineClusterLayout line_cluster_layout(std::size_t n, std::size_t c, double gap, double eps) {
  if (c == 0 || n % c != 0) {
    throw std::invalid_argument("line layout: cluster size " + std::to_string(c) + " does not divide n=" +
                                std::to_string(n));
  }
  if (eps <= 0.0) eps = 0.01 / static_cast<double>(c);
  if (!(gap > 2.0) || !(eps < gap)) throw std::invalid_argument("line layout: need gap > 2 and eps < gap");

  LineClusterLayout layout;
  layout.cluster_size = c;
  layout.gap = gap;
  layout.eps = eps;
  layout.positions.resize(n);
  const double step = eps / static_cast<double>(c);
  const double span = static_cast<double>(n / c - 1) * gap + static_cast<double>(c - 1) * step;
  for (std::size_t i = 0; i < n; ++i) {
    layout.positions[i] = static_cast<double>(i / c) * gap + static_cast<double>(i % c) * step - 0.5 * span;
  }
  return layout;
}

LineConstruction clique_line_construct(std::size_t n, std::size_t c, double gap, double eps) {
  LineConstruction out;
  out.layout = line_cluster_layout(n, c, gap, eps);
  const auto rows = static_cast<Eigen::Index>(n);
  DenseMatrix& x = out.embedding.x;
  DenseMatrix& y = out.embedding.y;
  x.resize(rows, 3);
  y.resize(rows, 3);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double p = out.layout.positions[static_cast<std::size_t>(i)];
    x.row(i) << 1.0, p * p, p;
    y.row(i) << 2.0 - p * p, -1.0, 2.0 * p;
  }
  out.embedding.method = Method::Construction;
  return out;
}

}  // namespace exemb
