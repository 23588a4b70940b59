#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "exemb/graph.hpp"
#include "exemb/lpca.hpp"
#include "exemb/metrics.hpp"

namespace exemb::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Thrown for bad flag values that CLI11 cannot catch on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphInput {
  std::string path;
  std::string id_mode = "auto";      // auto | compact | identity
  int index_base = 0;
  std::string self_loops = "auto";   // auto | keep | drop
};

Graph read_graph(const GraphInput& in);

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what);
std::vector<double> parse_double_list(const std::string& text, const char* what);
ReconstructMode parse_mode(const std::string& text);
std::string mode_name(ReconstructMode m);

fs::path default_out_dir();
fs::path default_data_dir();

// Tracks artifacts written under one directory and emits manifest.json.
class Manifest {
 public:
  Manifest(fs::path dir, std::string target);
  const fs::path& dir() const { return dir_; }
  fs::path add(const std::string& name, const std::string& description);
  json& reference() { return doc_["reference"]; }
  json& computed() { return doc_["computed"]; }
  fs::path write();

 private:
  fs::path dir_;
  json doc_;
};

void write_json(const json& j, const fs::path& path);
void write_matrix_csv(const DenseMatrix& m, const fs::path& path);

// Plot-ready CSVs; every row carries the method label and rank.
struct Series {
  std::string method;
  std::size_t rank = 0;
  std::vector<double> values;
};
void write_sorted_series_csv(const std::vector<Series>& series, const std::string& value_column, const fs::path& path);
struct LabeledCurve {
  std::string method;
  std::size_t rank = 0;
  TriangleCurve curve;
};
void write_curves_csv(const std::vector<LabeledCurve>& curves, const fs::path& path);

// Scalar summary of one evaluation (no per-node vectors).
json report_summary(const EvalReport& r);

}  // namespace exemb::cli
