#include "common.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "exemb/errors.hpp"

namespace exemb::cli {
namespace {

// True when the file starts with the "# nodes:" header save_edge_list writes.
bool has_nodes_header(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') return false;
    if (line.find("nodes:") != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << std::setprecision(10);
  return out;
}

}  // namespace

Graph read_graph(const GraphInput& in) {
  const fs::path path(in.path);
  if (!fs::exists(path)) throw DataError("graph file '" + in.path + "' does not exist");
  EdgeListOptions opts;
  if (in.id_mode == "auto") {
    opts.id_mode = IdMode::Auto;
  } else if (in.id_mode == "compact") {
    opts.id_mode = IdMode::Compact;
  } else if (in.id_mode == "identity") {
    opts.id_mode = IdMode::Identity;
  } else {
    throw UsageError("unknown --id-mode '" + in.id_mode + "'");
  }
  opts.index_base = in.index_base;
  if (in.self_loops == "auto") {
    opts.drop_self_loops = !has_nodes_header(path);
  } else if (in.self_loops == "keep" || in.self_loops == "drop") {
    opts.drop_self_loops = in.self_loops == "drop";
  } else {
    throw UsageError("unknown --self-loops '" + in.self_loops + "'");
  }
  return load_edge_list(path, opts);
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& p : split_commas(text)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(p, &used);
      if (used != p.size() || v <= 0) throw std::invalid_argument(p);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value '") + p + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& p : split_commas(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value '") + p + "' in " + what);
    }
  }
  return out;
}

ReconstructMode parse_mode(const std::string& text) {
  if (text == "threshold") return ReconstructMode::Threshold;
  if (text == "logistic") return ReconstructMode::Logistic;
  throw UsageError("unknown --mode '" + text + "' (threshold | logistic)");
}

std::string mode_name(ReconstructMode m) { return m == ReconstructMode::Threshold ? "threshold" : "logistic"; }

fs::path default_out_dir() {
  const char* env = std::getenv("EXEMB_OUT_DIR");
  return env && *env ? fs::path(env) : fs::path("out");
}

fs::path default_data_dir() {
  const char* env = std::getenv("EXEMB_DATA_DIR");
  return env && *env ? fs::path(env) : fs::path("data");
}

Manifest::Manifest(fs::path dir, std::string target) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
  doc_["target"] = std::move(target);
  doc_["files"] = json::array();
  doc_["reference"] = json::object();
  doc_["computed"] = json::object();
}

fs::path Manifest::add(const std::string& name, const std::string& description) {
  doc_["files"].push_back({{"path", name}, {"description", description}});
  return dir_ / name;
}

fs::path Manifest::write() {
  const fs::path path = dir_ / "manifest.json";
  write_json(doc_, path);
  return path;
}

void write_json(const json& j, const fs::path& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_matrix_csv(const DenseMatrix& m, const fs::path& path) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

void write_sorted_series_csv(const std::vector<Series>& series, const std::string& value_column,
                             const fs::path& path) {
  auto out = open_out(path);
  out << "position," << value_column << ",method,rank\n";
  for (const auto& s : series) {
    std::vector<double> v = s.values;
    std::sort(v.begin(), v.end(), std::greater<>());
    for (std::size_t i = 0; i < v.size(); ++i) out << i << ',' << v[i] << ',' << s.method << ',' << s.rank << '\n';
  }
}

void write_curves_csv(const std::vector<LabeledCurve>& curves, const fs::path& path) {
  auto out = open_out(path);
  out << "cap,value,method,rank\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.curve.caps.size(); ++i) {
      out << c.curve.caps[i] << ',' << c.curve.values[i] << ',' << c.method << ',' << c.rank << '\n';
    }
  }
}

json report_summary(const EvalReport& r) {
  double triangles = 0.0;
  for (double t : r.triangles) triangles += t;
  return {
      {"exact", r.exact},
      {"rel_frob_error", r.rel_frobenius_error},
      {"provenance", std::string(to_string(r.provenance))},
      {"mean_degree", r.degrees.mean()},
      {"max_degree", r.degrees.max()},
      {"degree_p95", r.degrees.percentile(95.0)},
      {"triangles", triangles / 3.0},
      {"curve_final", r.curve.values.empty() ? 0.0 : r.curve.values.back()},
  };
}

}  // namespace exemb::cli
