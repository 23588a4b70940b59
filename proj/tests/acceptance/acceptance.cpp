// One PASS / FAIL / SKIP line per acceptance criterion.
//
//   exemb_acceptance [--criterion N] [--data-dir DIR]
//
// Exit status: 0 when every selected criterion passes, 1 on any failure,
// 77 when a single selected criterion is skipped (missing dataset).

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exemb/construct.hpp"
#include "exemb/efd.hpp"
#include "exemb/eigen_solver.hpp"
#include "exemb/generators.hpp"
#include "exemb/metrics.hpp"
#include "exemb/tsvd.hpp"
#include "oracles.hpp"
#include "soundness.hpp"

namespace fs = std::filesystem;
using namespace exemb;
using exemb::testing::check_exact;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

class Checks {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  Outcome done(std::string detail) const {
    if (failures_.empty()) return {Status::Pass, std::move(detail)};
    std::string all;
    for (const auto& f : failures_) all += (all.empty() ? "" : "; ") + f;
    return {Status::Fail, all + " | " + detail};
  }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path data_dir;

std::optional<Graph> dataset(const std::string& name) {
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto& candidate : {name, low}) {
    const fs::path p = data_dir / (candidate + ".txt");
    if (fs::exists(p)) {
      EdgeListOptions o;
      o.id_mode = IdMode::Auto;
      return load_edge_list(p, o);
    }
  }
  return std::nullopt;
}

Outcome missing(const std::string& name) {
  return {Status::Skip, "dataset " + (data_dir / (name + ".txt")).string() + " not found"};
}

bool exact_seed_among(const Graph& g, std::size_t rank, int seeds, std::uint64_t* winner = nullptr) {
  for (int s = 1; s <= seeds; ++s) {
    if (check_exact(g, lpca_fit(g, rank, static_cast<std::uint64_t>(s))).exact) {
      if (winner) *winner = static_cast<std::uint64_t>(s);
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

Outcome toy() {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph g = toy_graph(100);
  Checks c;
  const EigenPairs pairs = top_k_eigs(g, 15);
  auto tsvd_error = [&](std::size_t k) {
    EigenPairs head{pairs.values.head(static_cast<Eigen::Index>(k)),
                    pairs.vectors.leftCols(static_cast<Eigen::Index>(k)), {}, 0};
    return rel_frobenius_error(g, tsvd_from_eigenpairs(head), ReconstructMode::Threshold);
  };
  const double e5 = tsvd_error(5), e15 = tsvd_error(15);
  c.require(std::abs(e5 - 0.966) <= 0.01, "tsvd rank 5 " + fmt("%.4f", e5));
  c.require(std::abs(e15 - 0.894) <= 0.01, "tsvd rank 15 " + fmt("%.4f", e15));

  double best = 1e300;
  int tried = 0;
  for (int s = 1; s <= 5 && best > 0.10; ++s, ++tried) {
    const EmbeddingPair e = lpca_fit(g, 5, static_cast<std::uint64_t>(s));
    check_exact(g, e);
    best = std::min(best, rel_frobenius_error(g, e, ReconstructMode::Logistic));
  }
  c.require(best <= 0.10, "lpca rank 5 best " + fmt("%.4f", best));
  const double secs = seconds_since(t0);
  c.require(secs < 60.0, "runtime " + fmt("%.1fs", secs));
  return c.done("lpca5=" + fmt("%.4g", best) + " (" + std::to_string(tried) + " seed(s)) tsvd5=" + fmt("%.4f", e5) +
                " tsvd15=" + fmt("%.4f", e15) + " time=" + fmt("%.1fs", secs));
}

Outcome cora() {
  auto g = dataset("Cora");
  if (!g) return missing("Cora");
  const auto t0 = std::chrono::steady_clock::now();
  Checks c;
  std::uint64_t winner = 0;
  c.require(exact_seed_among(*g, 16, 3, &winner), "rank 16 not exact for any of 3 seeds");
  c.require(!exact_seed_among(*g, 8, 3), "rank 8 exact for some seed");
  const double err = rel_frobenius_error(*g, tsvd_fit(*g, 16), ReconstructMode::Threshold);
  c.require(std::abs(err - 0.93) <= 0.02, "tsvd rank 16 " + fmt("%.4f", err));
  const double secs = seconds_since(t0);
  c.require(secs <= 1800.0, "runtime " + fmt("%.0fs", secs));
  return c.done("n=" + std::to_string(g->num_nodes()) + " seed=" + std::to_string(winner) + " tsvd16=" +
                fmt("%.4f", err) + " time=" + fmt("%.0fs", secs));
}

Outcome citeseer() {
  auto g = dataset("Citeseer");
  if (!g) return missing("Citeseer");
  Checks c;
  const EfdResult r = efd_search(*g, multiples_of_16(64), {1, 3});
  for (const auto& o : r.outcomes) {
    if (o.exact) check_exact(*g, lpca_fit(*g, o.rank, o.seed));
  }
  c.require(r.efd && *r.efd == 16, "efd " + (r.efd ? std::to_string(*r.efd) : std::string("none")));
  const double err = rel_frobenius_error(*g, tsvd_fit(*g, 16), ReconstructMode::Threshold);
  c.require(std::abs(err - 0.94) <= 0.02, "tsvd rank 16 " + fmt("%.4f", err));
  return c.done("tsvd16=" + fmt("%.4f", err));
}

Outcome grqc() {
  auto g = dataset("ca-GrQc");
  if (!g) return missing("ca-GrQc");
  const auto t0 = std::chrono::steady_clock::now();
  Checks c;
  const EfdResult r = efd_search(*g, multiples_of_16(64), {1, 3});
  c.require(r.efd && *r.efd == 16, "efd " + (r.efd ? std::to_string(*r.efd) : std::string("none")));
  if (r.efd) check_exact(*g, lpca_fit(*g, *r.efd, r.outcomes.back().seed));
  const double err = rel_frobenius_error(*g, tsvd_fit(*g, 16), ReconstructMode::Threshold);
  c.require(std::abs(err - 0.85) <= 0.02, "tsvd rank 16 " + fmt("%.4f", err));
  const EfdResult cl = baseline_efd(*g, BaselineKind::ChungLu, {16, 32}, 3, 1, {1, 3});
  c.require(cl.efd && *cl.efd == 32, "chung-lu efd " + (cl.efd ? std::to_string(*cl.efd) : std::string("none")));
  const double secs = seconds_since(t0);
  c.require(secs <= 7200.0, "runtime " + fmt("%.0fs", secs));
  return c.done("tsvd16=" + fmt("%.4f", err) + " time=" + fmt("%.0fs", secs));
}

Outcome constructions() {
  const auto t0 = std::chrono::steady_clock::now();
  Checks c;
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 3}, {12, 4}, {30, 5}, {100, 10}}) {
    const Graph g = clique_union(n, k, true);
    const auto e = clique_line_construct(n, k).embedding;
    c.require(check_exact(g, e).exact && oracle::exact_by_definition(g, e),
              "line (" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> size(8, 64);
  for (unsigned s = 0; s < 20; ++s) {
    const Graph g = oracle::random_bounded_degree(size(rng), 6, 500 + s);
    const auto e = vandermonde_construct(g).embedding;
    c.require(check_exact(g, e).exact && oracle::exact_by_definition(g, e), "vandermonde random #" + std::to_string(s));
  }
  const Graph pa = preferential_attachment(256, 2, 1);
  const auto maxdeg = degree_sequence(pa).max();
  VandermondeOptions vo;
  vo.degree_bound = static_cast<std::size_t>(maxdeg);
  const auto pe = vandermonde_construct(pa, vo).embedding;
  c.require(check_exact(pa, pe).exact && oracle::exact_by_definition(pa, pe), "vandermonde pa(256,2)");
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{27, 3}, {64, 4}}) {
    const Graph g = clique_union(n, k, true);
    const auto e = binary_cluster_construct(n, k, 1).embedding;
    c.require(check_exact(g, e).exact && oracle::exact_by_definition(g, e),
              "binary (" + std::to_string(n) + "," + std::to_string(k) + ")");
  }
  return c.done("pa max degree " + fmt("%.0f", maxdeg) + " time=" + fmt("%.2fs", seconds_since(t0)));
}

Outcome gradient() {
  Checks c;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> n_pick(2, 8), k_pick(1, 3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  const int instances = 30;
  for (int i = 0; i < instances; ++i) {
    const int n = n_pick(rng), k = k_pick(rng);
    const Graph g = oracle::random_graph(static_cast<std::size_t>(n), 0.4, 7000 + static_cast<unsigned>(i), i % 2 == 1);
    DenseMatrix x(n, k), y(n, k);
    for (auto* m : {&x, &y}) {
      for (Eigen::Index a = 0; a < m->size(); ++a) m->data()[a] = u(rng);
    }
    const LossGrad lg = lpca_loss_grad(g, x, y);
    const auto [fx, fy] = oracle::lpca_gradient_fd(g, x, y, 1e-5);
    const double num = std::sqrt((lg.grad_x - fx).squaredNorm() + (lg.grad_y - fy).squaredNorm());
    const double den = std::max(1e-12, std::sqrt(fx.squaredNorm() + fy.squaredNorm()));
    worst = std::max(worst, num / den);
  }
  c.require(worst <= 1e-4, "worst relative error " + fmt("%.3g", worst));
  return c.done(std::to_string(instances) + " instances, worst rel error " + fmt("%.3g", worst));
}

double rel_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return a.size() == b.size() ? worst : 1e300;
}

Outcome triangles() {
  Checks c;
  double worst = 0.0;
  const int graphs = 25;
  for (int s = 0; s < graphs; ++s) {
    const std::size_t n = 6 + static_cast<std::size_t>(s);  // up to 30
    const Graph g = oracle::random_graph(n, 0.3, 11000 + static_cast<unsigned>(s), s % 4 == 0);
    const DenseMatrix a = oracle::adjacency(g);
    const auto truth = ExpectedAdjacency::from_graph(g);
    const auto deg = degree_sequence(g);
    const auto caps = default_caps(deg);
    worst = std::max(worst, rel_gap(expected_triangles_per_node(truth), oracle::triangles_by_triples(a)));
    worst = std::max(worst, rel_gap(low_degree_triangle_curve(truth, deg, caps).values,
                                    oracle::curve_by_triples(a, deg.values, caps)));

    const ExpectedAdjacency p{oracle::random_probabilities(n, 12000 + static_cast<unsigned>(s)),
                              Provenance::LpcaLogistic, false};
    const auto pdeg = expected_degrees(p);
    std::vector<double> pcaps;
    for (double cap = 0.5; cap <= static_cast<double>(n); cap += 0.75) pcaps.push_back(cap);
    worst = std::max(worst, rel_gap(expected_triangles_per_node(p), oracle::triangles_by_triples(p.p)));
    worst = std::max(worst, rel_gap(low_degree_triangle_curve(p, pdeg, pcaps).values,
                                    oracle::curve_by_triples(p.p, pdeg.values, pcaps)));
  }
  c.require(worst <= 1e-10, "worst relative error " + fmt("%.3g", worst));
  return c.done(std::to_string(graphs) + " graphs x {0/1, probabilistic}, worst rel error " + fmt("%.3g", worst));
}

Outcome eckart_young() {
  Checks c;
  for (unsigned s = 0; s < 10; ++s) {
    const Graph g = oracle::random_graph(40, 0.2 + 0.05 * s, 13000 + s, true);
    const EigenPairs pairs = top_k_eigs(g, 10);
    double prev = 1e300;
    for (Eigen::Index k = 1; k <= 10; ++k) {
      EigenPairs head{pairs.values.head(k), pairs.vectors.leftCols(k), {}, 0};
      const double err = raw_frobenius_error(g, tsvd_from_eigenpairs(head));
      c.require(err <= prev * (1 + 1e-12), "matrix " + std::to_string(s) + " rank " + std::to_string(k) + " increased");
      prev = err;
    }
  }
  return c.done("10 matrices, ranks 1..10");
}

Outcome soundness_check() {
  // Re-run every workload above that produces exact embeddings; each goes
  // through check_exact, which compares the verdict with the thresholded
  // error.
  constructions();
  const Graph g = clique_union(30, 3);
  for (std::uint64_t s = 1; s <= 3; ++s) check_exact(g, lpca_fit(g, 4, s));
  for (unsigned s = 0; s < 5; ++s) {
    const Graph r = oracle::random_graph(20, 0.2, 14000 + s);
    check_exact(r, lpca_fit(r, 8, 1));
    check_exact(r, vandermonde_construct(r).embedding);
  }
  const auto& ledger = exemb::testing::soundness();
  Checks c;
  c.require(ledger.exact_seen > 0, "no exact embeddings seen");
  c.require(ledger.unsound == 0, std::to_string(ledger.unsound) + " exact verdicts with nonzero thresholded error");
  return c.done(std::to_string(ledger.exact_seen) + " exact embeddings checked");
}

Outcome eigensolver() {
  Checks c;
  double worst = 0.0;
  for (unsigned s = 0; s < 4; ++s) {
    const DenseMatrix a = oracle::adjacency(oracle::random_graph(30 + 10 * s, 0.3, 15000 + s, true));
    const auto n = static_cast<std::size_t>(a.rows());
    for (std::size_t cutoff : {std::size_t{4096}, std::size_t{0}}) {
      EigenOptions o;
      o.dense_cutoff = cutoff;
      const EigenPairs p = top_k_eigs(a, n, o);
      const DenseMatrix back = p.vectors * p.values.asDiagonal() * p.vectors.transpose();
      worst = std::max(worst, (back - a).norm() / a.norm());
    }
  }
  c.require(worst <= 1e-6, "full-rank reconstruction " + fmt("%.3g", worst));
  for (std::size_t k : {3, 4, 5, 8}) {
    const EigenPairs p = top_k_eigs(clique_union(k, k), k);
    std::vector<double> got(p.values.data(), p.values.data() + p.values.size());
    std::sort(got.begin(), got.end());
    bool ok = std::abs(got.back() - static_cast<double>(k - 1)) <= 1e-9;
    for (std::size_t i = 0; i + 1 < got.size(); ++i) ok = ok && std::abs(got[i] + 1.0) <= 1e-9;
    c.require(ok, "K_" + std::to_string(k) + " spectrum");
  }
  return c.done("worst full-rank error " + fmt("%.3g", worst));
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exemb acceptance checks"};
  int only = 0;
  std::string dir = std::getenv("EXEMB_DATA_DIR") ? std::getenv("EXEMB_DATA_DIR") : "data";
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_option("--data-dir", dir, "Directory holding Cora.txt, Citeseer.txt, ca-GrQc.txt");
  CLI11_PARSE(app, argc, argv);
  data_dir = dir;
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  const std::vector<Criterion> all{
      {1, "toy graph: lpca rank 5, tsvd ranks 5 and 15", toy},
      {2, "cora: rank 16 exact, rank 8 not, tsvd 16", cora},
      {3, "citeseer: efd 16, tsvd 16", citeseer},
      {4, "ca-GrQc: efd 16, tsvd 16, chung-lu efd 32", grqc},
      {5, "constructions exact", constructions},
      {6, "lpca gradient vs finite differences", gradient},
      {7, "triangles vs triple enumeration", triangles},
      {8, "tsvd error non-increasing in rank", eckart_young},
      {9, "exact verdict implies zero thresholded error", soundness_check},
      {10, "eigensolver reconstruction and clique spectra", eigensolver},
  };

  int failed = 0, skipped = 0, ran = 0;
  for (const auto& crit : all) {
    if (only != 0 && crit.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = crit.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : (o.status == Status::Skip ? "SKIP" : "FAIL");
    std::printf("[%s] criterion %d: %s -- %s\n", tag, crit.id, crit.name, o.detail.c_str());
    failed += o.status == Status::Fail;
    skipped += o.status == Status::Skip;
  }
  if (failed) return 1;
  if (ran == 1 && skipped == 1) return 77;
  return 0;
}
