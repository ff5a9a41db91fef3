#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lbsnet/graph.hpp"

namespace lbsnet {

/// Dense relabelling of arbitrary string node identifiers, in first-seen order.
class NodeLabels {
 public:
  NodeId intern(std::string_view name);
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

  /// Labels "0".."n-1"; used when a graph was built without external ids.
  static NodeLabels identity(std::size_t n);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> index_;
};

struct LabeledGraph {
  Graph graph;
  NodeLabels labels;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Splits a tab-separated line into fields (no quoting). A trailing '\r' is stripped.
std::vector<std::string_view> split_tabs(std::string_view line);

/// Streams `src<TAB>dst` lines; '#' comments and blank lines are skipped. A
/// line holding a single identifier declares an (isolated) node.
/// Throws Error(Parse) naming the offending line number.
LabeledGraph read_edge_list(std::istream& in, Directedness directedness, std::string_view origin = "<stream>");
LabeledGraph read_edge_list(const std::filesystem::path& path, Directedness directedness);

/// One edge per line using the labels (undirected graphs list each edge once),
/// preceded by single-field lines for isolated nodes.
void write_edge_list(std::ostream& out, const Graph& g, const NodeLabels& labels);

}  // namespace lbsnet
