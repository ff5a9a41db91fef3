#include "lbsnet/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "lbsnet/error.hpp"

namespace lbsnet {

NodeId NodeLabels::intern(std::string_view name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> NodeLabels::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

NodeLabels NodeLabels::identity(std::size_t n) {
  NodeLabels labels;
  for (std::size_t i = 0; i < n; ++i) labels.intern(std::to_string(i));
  return labels;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

LabeledGraph read_edge_list(std::istream& in, Directedness directedness, std::string_view origin) {
  LabeledGraph out;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      // A lone identifier declares a node that may have no edges.
      out.labels.intern(view);
      continue;
    }
    if (tab == 0 || tab + 1 == view.size() || view.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::Parse, std::string(origin) + ":" + std::to_string(line_no) +
                                        ": expected 'src<TAB>dst'");
    }
    const NodeId u = out.labels.intern(view.substr(0, tab));
    const NodeId v = out.labels.intern(view.substr(tab + 1));
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw Error(ErrorCode::Io, std::string(origin) + ": read failure");
  if (edges.empty() && out.labels.size() == 0) throw Error(ErrorCode::EmptyGraph, std::string(origin) + ": no edges");
  auto built = build_graph(std::move(edges), directedness, out.labels.size());
  out.graph = std::move(built.graph);
  out.duplicates_dropped = built.duplicates_dropped;
  out.self_loops_dropped = built.self_loops_dropped;
  return out;
}

LabeledGraph read_edge_list(const std::filesystem::path& path, Directedness directedness) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_edge_list(in, directedness, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g, const NodeLabels& labels) {
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.out_degree(v) == 0 && g.in_degree(v) == 0) out << labels.name(v) << '\n';
  for (const auto& [u, v] : g.edges()) out << labels.name(u) << '\t' << labels.name(v) << '\n';
}

}  // namespace lbsnet
