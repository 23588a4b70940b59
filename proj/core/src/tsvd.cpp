#include "exemb/tsvd.hpp"

#include <cmath>

namespace exemb {

EmbeddingPair tsvd_from_eigenpairs(const EigenPairs& pairs) {
  EmbeddingPair e;
  const Vector root = pairs.values.cwiseAbs().cwiseSqrt();
  const Vector signed_root = pairs.values.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; }).cwiseProduct(root);
  e.x = pairs.vectors * signed_root.asDiagonal();
  e.y = pairs.vectors * root.asDiagonal();
  e.method = Method::Tsvd;
  return e;
}

EmbeddingPair tsvd_fit(const Graph& g, std::size_t k, const EigenOptions& options) {
  return tsvd_from_eigenpairs(top_k_eigs(g, k, options));
}

}  // namespace exemb
