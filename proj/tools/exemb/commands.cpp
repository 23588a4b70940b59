#include "commands.hpp"

#include <chrono>
#include <iostream>
#include <memory>

#include "common.hpp"
#include "exemb/construct.hpp"
#include "exemb/efd.hpp"
#include "exemb/embedding_io.hpp"
#include "exemb/errors.hpp"
#include "exemb/generators.hpp"
#include "exemb/tsvd.hpp"

namespace exemb::cli {
namespace {

void add_graph_flags(CLI::App* sub, GraphInput& in, bool required = true) {
  auto* opt = sub->add_option("--graph", in.path, "Edge-list file");
  if (required) opt->required();
  sub->add_option("--id-mode", in.id_mode, "Node ids: auto | compact | identity")->capture_default_str();
  sub->add_option("--index-base", in.index_base, "Smallest id in identity mode")->capture_default_str();
  sub->add_option("--self-loops", in.self_loops,
                  "auto keeps (i,i) records only in files with a '# nodes:' header; keep | drop")
      ->capture_default_str();
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(j, path);
  }
}

json exactness_json(const ExactnessReport& r) {
  return {{"exact", r.exact},
          {"violations", r.violations},
          {"near_violations", r.near_violations},
          {"worst_margin", r.worst_margin},
          {"worst_row", r.worst_row}};
}

}  // namespace

// ---------------------------------------------------------------------------

void add_generate(CLI::App& app) {
  struct Opts {
    std::string kind, out, from;
    std::size_t t = 100, n = 0, c = 0, m = 2;
    double edges = 0.0;
    std::uint64_t seed = 1;
    bool self_loops = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("generate", "Write a synthetic graph as an edge list");
  sub->add_option("--kind", o->kind, "toy | cliques | er | chung-lu | pa")
      ->required()
      ->check(CLI::IsMember({"toy", "cliques", "er", "chung-lu", "pa"}));
  sub->add_option("--out", o->out, "Output edge-list path")->required();
  sub->add_option("--t", o->t, "toy: number of triangles")->capture_default_str();
  sub->add_option("--n", o->n, "Number of nodes (cliques, er, pa)");
  sub->add_option("--c", o->c, "cliques: clique size");
  sub->add_option("--m", o->m, "pa: edges per new node")->capture_default_str();
  sub->add_option("--edges", o->edges, "er: expected edge count");
  sub->add_option("--degrees-from", o->from, "chung-lu: graph whose degree sequence is matched");
  sub->add_option("--seed", o->seed, "Random seed")->capture_default_str();
  sub->add_flag("--self-loops", o->self_loops, "cliques: put ones on the diagonal");
  sub->callback([o] {
    Graph g;
    if (o->kind == "toy") {
      g = toy_graph(o->t);
    } else if (o->kind == "cliques") {
      g = clique_union(o->n, o->c, o->self_loops);
    } else if (o->kind == "er") {
      g = erdos_renyi(o->n, o->edges, o->seed);
    } else if (o->kind == "pa") {
      g = preferential_attachment(o->n, o->m, o->seed);
    } else {
      if (o->from.empty()) throw UsageError("chung-lu needs --degrees-from");
      g = chung_lu(degree_sequence(read_graph({o->from})), o->seed);
    }
    save_edge_list(g, o->out);
    std::cout << "wrote " << o->out << " (n=" << g.num_nodes() << ", edges=" << g.num_edges() << ")\n";
  });
}

// ---------------------------------------------------------------------------

void add_embed(CLI::App& app) {
  struct Opts {
    GraphInput graph;
    std::string method = "lpca", out, metrics, mode;
    std::size_t rank = 0;
    std::uint64_t seed = 1;
    int max_iters = 2000;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("embed", "Fit an LPCA or TSVD embedding");
  add_graph_flags(sub, o->graph);
  sub->add_option("--method", o->method, "lpca | tsvd")->check(CLI::IsMember({"lpca", "tsvd"}))->capture_default_str();
  sub->add_option("--rank", o->rank, "Embedding dimension")->required()->check(CLI::PositiveNumber);
  sub->add_option("--seed", o->seed, "LPCA initialization seed")->capture_default_str();
  sub->add_option("--max-iters", o->max_iters, "L-BFGS iteration budget")->capture_default_str();
  sub->add_option("--out", o->out, "Embedding output file");
  sub->add_option("--metrics", o->metrics, "Metrics JSON path (default: stdout)");
  sub->add_option("--mode", o->mode, "Error reported as rel_frob_error: threshold | logistic "
                                     "(default logistic for lpca, threshold for tsvd)");
  sub->callback([o] {
    const Graph g = read_graph(o->graph);
    const auto start = std::chrono::steady_clock::now();
    EmbeddingPair e;
    if (o->method == "lpca") {
      LpcaOptions opts;
      opts.lbfgs.max_iters = o->max_iters;
      e = lpca_fit(g, o->rank, o->seed, opts);
    } else {
      e = tsvd_fit(g, o->rank);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o->out.empty()) save_embedding(e, o->out);

    const ReconstructMode mode =
        o->mode.empty() ? (o->method == "lpca" ? ReconstructMode::Logistic : ReconstructMode::Threshold)
                        : parse_mode(o->mode);
    const ExactnessReport ex = verify_exact(g, e);
    const double thr = rel_frobenius_error(g, e, ReconstructMode::Threshold);
    if (ex.exact && thr != 0.0) throw NumericalError("exact embedding with nonzero threshold error");
    json j = {{"graph", o->graph.path},
              {"n", g.num_nodes()},
              {"edges", g.num_edges()},
              {"method", o->method},
              {"rank", o->rank},
              {"exact", ex.exact},
              {"exactness", exactness_json(ex)},
              {"mode", mode_name(mode)},
              {"rel_frob_error", mode == ReconstructMode::Threshold ? thr : rel_frobenius_error(g, e, mode)},
              {"rel_frob_error_threshold", thr},
              {"wall_time_s", wall}};
    if (o->method == "lpca") {
      j["seed"] = o->seed;
      j["iterations"] = e.iterations;
      j["loss"] = e.final_loss;
      j["stop_reason"] = std::string(to_string(e.stop_reason));
      j["rel_frob_error_logistic"] = rel_frobenius_error(g, e, ReconstructMode::Logistic);
    }
    emit(j, o->metrics);
  });
}

// ---------------------------------------------------------------------------

void add_construct(CLI::App& app) {
  struct Opts {
    std::string method, out, certificate, target_out, basis = "orthonormal";
    GraphInput graph;
    std::size_t n = 0, c = 0, degree_bound = 0;
    double d = 8.0, gap = 3.0, eps = 0.0;
    std::uint64_t seed = 1;
    bool minimal_rank = false, no_reorder = false, no_balance = false, centers = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("construct", "Build an exact embedding by construction");
  sub->add_option("--method", o->method, "cliques-line | vandermonde | binary")
      ->required()
      ->check(CLI::IsMember({"cliques-line", "vandermonde", "binary"}));
  add_graph_flags(sub, o->graph, false);
  sub->add_option("--n", o->n, "cliques-line, binary: number of nodes");
  sub->add_option("--c", o->c, "cliques-line, binary: clique size");
  sub->add_option("--gap", o->gap, "cliques-line: cluster spacing")->capture_default_str();
  sub->add_option("--eps", o->eps, "cliques-line: cluster spread (0 = 0.01/c)")->capture_default_str();
  sub->add_option("--degree-bound", o->degree_bound, "vandermonde: c (0 = max degree)")->capture_default_str();
  sub->add_flag("--minimal-rank", o->minimal_rank, "vandermonde: 2 * (max runs) + 1 columns");
  sub->add_flag("--no-reorder", o->no_reorder, "vandermonde: keep node i at sample i");
  sub->add_flag("--no-balance", o->no_balance, "vandermonde: pad with far roots instead of double roots");
  sub->add_option("--basis", o->basis, "vandermonde: orthonormal | monomial")
      ->check(CLI::IsMember({"orthonormal", "monomial"}))
      ->capture_default_str();
  sub->add_option("--d", o->d, "binary: k = ceil(d ln n)")->capture_default_str();
  sub->add_option("--seed", o->seed, "binary: sampling seed")->capture_default_str();
  sub->add_flag("--include-centers", o->centers, "binary: append cluster centers as rows (no exactness claim)");
  sub->add_option("--out", o->out, "Embedding output file");
  sub->add_option("--target-out", o->target_out, "Write the target graph as an edge list");
  sub->add_option("--certificate", o->certificate, "Certificate JSON path (default: stdout)");
  sub->callback([o] {
    EmbeddingPair e;
    Graph target;
    json extra;
    bool check = true;
    if (o->method == "cliques-line") {
      const LineConstruction lc = clique_line_construct(o->n, o->c, o->gap, o->eps);
      e = lc.embedding;
      target = clique_union(o->n, o->c, true);
      const ExactnessReport masked = verify_exact(clique_union(o->n, o->c), e, DiagonalPolicy::Ignore);
      extra = {{"gap", lc.layout.gap}, {"eps", lc.layout.eps}, {"masked_diagonal_exact", masked.exact}};
    } else if (o->method == "vandermonde") {
      if (o->graph.path.empty()) throw UsageError("vandermonde needs --graph");
      target = read_graph(o->graph);
      VandermondeOptions opts;
      opts.degree_bound = o->degree_bound;
      opts.minimal_rank = o->minimal_rank;
      opts.reorder = !o->no_reorder;
      opts.balance = !o->no_balance;
      opts.basis = o->basis == "monomial" ? PolynomialBasis::Monomial : PolynomialBasis::Orthonormal;
      const VandermondeConstruction vc = vandermonde_construct(target, opts);
      e = vc.embedding;
      extra = {{"degree_bound", vc.degree_bound}, {"max_runs", vc.max_runs}};
    } else {
      BinaryClusterOptions opts;
      opts.d = o->d;
      opts.include_centers = o->centers;
      const BinaryClusterConstruction bc = binary_cluster_construct(o->n, o->c, o->seed, opts);
      e = bc.embedding;
      target = clique_union(o->n, o->c, true);
      check = !o->centers;
      extra = {{"ones_per_row", bc.ones_per_row},
               {"swaps", bc.swaps},
               {"offset", bc.offset},
               {"center_overlap_bound", bc.center_overlap_bound},
               {"rows", bc.u.rows()}};
    }
    if (!o->out.empty()) save_embedding(e, o->out);
    if (!o->target_out.empty()) save_edge_list(target, o->target_out);
    json cert = {{"method", o->method}, {"n", target.num_nodes()}, {"k", e.rank()}, {"details", extra}};
    if (check) {
      const ExactnessReport r = verify_exact(target, e);
      cert["exact"] = r.exact;
      cert["worst_margin"] = r.worst_margin;
      cert["violations"] = r.violations;
    } else {
      cert["exact"] = nullptr;
    }
    emit(cert, o->certificate);
  });
}

// ---------------------------------------------------------------------------

void add_eval(CLI::App& app) {
  struct Opts {
    GraphInput graph;
    std::string embedding, mode, caps, out_dir, label;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("eval", "Degree, triangle and error metrics for a graph or embedding");
  add_graph_flags(sub, o->graph);
  sub->add_option("--embedding", o->embedding, "Embedding file (omit to evaluate the graph itself)");
  sub->add_option("--mode", o->mode, "threshold | logistic (default logistic for lpca, else threshold)");
  sub->add_option("--caps", o->caps, "Comma-separated degree caps (default 1..max degree)");
  sub->add_option("--out-dir", o->out_dir, "Output directory (default $EXEMB_OUT_DIR or ./out)");
  sub->add_option("--label", o->label, "Method label written into the CSVs");
  sub->callback([o] {
    const Graph g = read_graph(o->graph);
    const std::vector<double> caps = o->caps.empty() ? std::vector<double>{} : parse_double_list(o->caps, "--caps");
    Manifest manifest(o->out_dir.empty() ? default_out_dir() : fs::path(o->out_dir), "eval");
    EvalReport report;
    std::string method = "true";
    std::size_t rank = 0;
    json j;
    if (o->embedding.empty()) {
      report = evaluate_graph(g, caps);
    } else {
      const EmbeddingPair e = load_embedding(o->embedding);
      const ReconstructMode mode =
          o->mode.empty() ? (e.method == Method::Lpca ? ReconstructMode::Logistic : ReconstructMode::Threshold)
                          : parse_mode(o->mode);
      ExpectedAdjacency p = reconstruct(e, mode);
      p.count_diagonal = g.allow_self_loops();
      const ExactnessReport ex = verify_exact(g, e);
      report = evaluate_reconstruction(g, p, ex.exact, caps);
      method = std::string(to_string(e.method));
      rank = e.rank();
      j["mode"] = mode_name(mode);
      j["exactness"] = exactness_json(ex);
    }
    if (!o->label.empty()) method = o->label;
    j.update(report_summary(report));
    j["n"] = g.num_nodes();
    j["method"] = method;
    j["rank"] = rank;
    write_json(j, manifest.add("metrics.json", "scalar metrics"));
    write_sorted_series_csv({{method, rank, report.degrees.values}}, "degree",
                            manifest.add("degrees.csv", "degrees sorted descending"));
    write_sorted_series_csv({{method, rank, report.triangles}}, "triangles",
                            manifest.add("triangles.csv", "per-node triangles sorted descending"));
    write_curves_csv({{method, rank, report.curve}}, manifest.add("curve.csv", "low-degree triangle curve"));
    manifest.computed() = j;
    manifest.computed()["single_triangle_level"] = 1.0 / static_cast<double>(g.num_nodes());
    std::cout << manifest.write().string() << '\n';
  });
}

// ---------------------------------------------------------------------------

void add_efd(CLI::App& app) {
  struct Opts {
    GraphInput graph;
    std::string grid, baseline = "none", out_dir;
    std::size_t max_rank = 256;
    int seeds = 1, trials = 3, max_iters = 2000;
    std::uint64_t base_seed = 1, graph_seed = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("efd", "Search the exact factorization dimension over a rank grid");
  add_graph_flags(sub, o->graph);
  sub->add_option("--rank-grid", o->grid, "Comma-separated ascending ranks (default multiples of 16)");
  sub->add_option("--max-rank", o->max_rank, "Largest multiple of 16 tried by default")->capture_default_str();
  sub->add_option("--seeds", o->seeds, "Seeds tried per rank before declaring failure")->capture_default_str();
  sub->add_option("--base-seed", o->base_seed, "First LPCA seed")->capture_default_str();
  sub->add_option("--max-iters", o->max_iters, "L-BFGS iteration budget")->capture_default_str();
  sub->add_option("--baseline", o->baseline, "none | chung-lu | erdos-renyi")
      ->check(CLI::IsMember({"none", "chung-lu", "erdos-renyi"}))
      ->capture_default_str();
  sub->add_option("--trials", o->trials, "Random graphs per baseline")->capture_default_str();
  sub->add_option("--graph-seed", o->graph_seed, "Seed of the first baseline graph")->capture_default_str();
  sub->add_option("--out-dir", o->out_dir, "Output directory (default $EXEMB_OUT_DIR or ./out)");
  sub->callback([o] {
    const Graph g = read_graph(o->graph);
    const auto grid = o->grid.empty() ? multiples_of_16(o->max_rank) : parse_size_list(o->grid, "--rank-grid");
    LpcaOptions opts;
    opts.lbfgs.max_iters = o->max_iters;
    const SeedPolicy policy{o->base_seed, o->seeds};
    const std::string id = fs::path(o->graph.path).stem().string();
    EfdResult r;
    if (o->baseline == "none") {
      r = efd_search(g, grid, policy, opts, id);
    } else {
      const auto kind = o->baseline == "chung-lu" ? BaselineKind::ChungLu : BaselineKind::ErdosRenyi;
      r = baseline_efd(g, kind, grid, o->trials, o->graph_seed, policy, opts, id);
    }
    json outcomes = json::array();
    for (const auto& x : r.outcomes) {
      outcomes.push_back({{"rank", x.rank},
                          {"trial", x.trial},
                          {"seed", x.seed},
                          {"exact", x.exact},
                          {"iterations", x.iterations},
                          {"final_loss", x.final_loss},
                          {"violations", x.violations}});
    }
    json j = {{"graph", id},
              {"baseline", o->baseline},
              {"rank_grid", r.rank_grid},
              {"efd", r.efd ? json(*r.efd) : json("none")},
              {"outcomes", outcomes}};
    Manifest manifest(o->out_dir.empty() ? default_out_dir() : fs::path(o->out_dir), "efd");
    write_json(j, manifest.add("efd_" + id + (o->baseline == "none" ? "" : "_" + o->baseline) + ".json",
                               "EFD search outcomes"));
    manifest.computed() = {{"efd", j["efd"]}};
    manifest.write();
    std::cout << "efd " << j["efd"].dump() << '\n';
  });
}

}  // namespace exemb::cli
