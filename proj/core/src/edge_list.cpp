#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "exemb/errors.hpp"
#include "exemb/graph.hpp"

namespace exemb {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char ch) { return ch == ' ' || ch == '\t' || ch == ',' || ch == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<long long> parse_int(std::string_view tok) {
  long long v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// "# nodes: 12 edges: 30" written by save_edge_list.
std::optional<std::size_t> parse_nodes_header(std::string_view body) {
  const auto fields = split_fields(body);
  for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
    if (fields[i] == "nodes:") {
      if (auto v = parse_int(fields[i + 1]); v && *v >= 0) return static_cast<std::size_t>(*v);
    }
  }
  return std::nullopt;
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list '" + path.string() + "'");

  struct Record {
    long long a, b;
    std::size_t line;
  };
  std::vector<Record> records;
  std::optional<std::size_t> header_nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    view.remove_prefix(first);
    if (!options.comment_prefix.empty() && view.starts_with(options.comment_prefix)) {
      if (auto nodes = parse_nodes_header(view.substr(options.comment_prefix.size()))) header_nodes = nodes;
      continue;
    }
    const auto fields = split_fields(view);
    if (fields.size() < 2) throw ParseError(path.string(), line_no, "expected two node ids");
    const auto a = parse_int(fields[0]);
    const auto b = parse_int(fields[1]);
    if (!a || !b) {
      throw ParseError(path.string(), line_no, "non-integer node id in '" + std::string(view) + "'");
    }
    records.push_back({*a, *b, line_no});
  }
  if (records.empty() && !header_nodes) throw DataError("edge list '" + path.string() + "' is empty");

  const bool identity = options.id_mode == IdMode::Identity ||
                        (options.id_mode == IdMode::Auto && header_nodes.has_value());

  std::vector<Edge> arcs;
  arcs.reserve(records.size());
  std::size_t n = 0;
  if (identity) {
    const int base = options.id_mode == IdMode::Auto ? 0 : options.index_base;
    for (const auto& r : records) {
      const long long a = r.a - base, b = r.b - base;
      if (a < 0 || b < 0) throw ParseError(path.string(), r.line, "node id below index base");
      if (std::max(a, b) >= static_cast<long long>(std::numeric_limits<NodeId>::max())) {
        throw ParseError(path.string(), r.line, "node id too large");
      }
      arcs.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
      n = std::max(n, static_cast<std::size_t>(std::max(a, b)) + 1);
    }
    if (header_nodes) n = std::max(n, *header_nodes);
  } else {
    std::unordered_map<long long, NodeId> ids;
    auto id_of = [&](long long raw) {
      auto [it, inserted] = ids.try_emplace(raw, static_cast<NodeId>(ids.size()));
      return it->second;
    };
    for (const auto& r : records) {
      const NodeId a = id_of(r.a);
      const NodeId b = id_of(r.b);
      arcs.emplace_back(a, b);
    }
    n = ids.size();
  }

  if (!options.symmetrize) {
    std::set<Edge> seen;
    for (const auto& [a, b] : arcs) {
      if (a != b) seen.emplace(a, b);
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const auto [a, b] = arcs[i];
      if (a != b && !seen.contains({b, a})) {
        throw ParseError(path.string(), records[i].line, "arc without its reverse (input is directed)");
      }
    }
  }

  bool loops = false;
  if (options.drop_self_loops) {
    std::erase_if(arcs, [](const Edge& e) { return e.first == e.second; });
  } else {
    loops = std::any_of(arcs.begin(), arcs.end(), [](const Edge& e) { return e.first == e.second; });
  }
  return Graph::from_edges(n, arcs, loops);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write edge list '" + path.string() + "'");
  out << "# nodes: " << g.num_nodes() << " edges: " << g.num_edges() << "\n";
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace exemb
