#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lbsnet {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

enum class Directedness { Undirected, Directed };

/// Immutable simple graph in compressed sparse row form.
///
/// Neighbour lists are sorted and duplicate-free and there are no self-loops.
/// For undirected graphs the in-view aliases the out-view, and edge_count() is
/// the number of unordered pairs.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }
  bool directed() const { return directed_; }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    if (!directed_) return out_neighbors(v);
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  /// Undirected graphs: plain degree.
  std::size_t out_degree(NodeId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(NodeId v) const {
    return directed_ ? in_offsets_[v + 1] - in_offsets_[v] : out_degree(v);
  }

  bool contains(NodeId v) const { return v < node_count(); }
  bool has_edge(NodeId from, NodeId to) const;

  /// Edges in (source, sorted target) order; undirected graphs list each pair once with first < second.
  std::vector<Edge> edges() const;

  friend struct GraphAccess;

 private:
  bool directed_ = false;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

struct BuildResult {
  Graph graph;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Builds a simple graph over max(node_count, max id + 1) nodes. Duplicate
/// edges (for undirected graphs also reversed duplicates) and self-loops are
/// dropped and counted. Takes the edge vector by value; pass an rvalue to
/// avoid the copy on large inputs.
BuildResult build_graph(std::vector<Edge> edges, Directedness directedness, std::size_t node_count = 0);

/// Graph with no nodes (build_graph refuses to produce one).
Graph empty_graph(Directedness directedness);

/// Undirected graph with an edge {u,v} wherever u->v or v->u exists.
Graph undirected_projection(const Graph& g);

/// Directed graph carrying both orientations of every undirected edge.
Graph symmetrized(const Graph& g);

/// Subgraph induced on `nodes` (strictly increasing ids), relabelled to 0..nodes.size()-1.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace lbsnet
