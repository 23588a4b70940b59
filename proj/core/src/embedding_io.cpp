#include "exemb/embedding_io.hpp"

#include <fstream>
#include <iomanip>
#include <string>

#include "exemb/errors.hpp"

namespace exemb {

void save_embedding(const EmbeddingPair& e, const std::filesystem::path& path) {
  e.check();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write embedding '" + path.string() + "'");
  out << e.num_nodes() << ' ' << e.rank() << ' ' << to_string(e.method) << '\n' << std::setprecision(17);
  for (const DenseMatrix* m : {&e.x, &e.y}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index j = 0; j < m->cols(); ++j) out << (j ? " " : "") << (*m)(i, j);
      out << '\n';
    }
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

EmbeddingPair load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embedding '" + path.string() + "'");
  long long n = 0, k = 0;
  std::string method;
  if (!(in >> n >> k >> method) || n < 0 || k < 1) {
    throw DataError("bad embedding header in '" + path.string() + "' (expected 'n k method')");
  }
  EmbeddingPair e;
  try {
    e.method = method_from_string(method);
  } catch (const std::invalid_argument& ex) {
    throw DataError(path.string() + ": " + ex.what());
  }
  e.x.resize(n, k);
  e.y.resize(n, k);
  for (DenseMatrix* m : {&e.x, &e.y}) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (!(in >> (*m)(i, j))) throw DataError("truncated embedding '" + path.string() + "'");
      }
    }
  }
  if (!e.x.allFinite() || !e.y.allFinite()) throw DataError("non-finite values in '" + path.string() + "'");
  return e;
}

}  // namespace exemb
