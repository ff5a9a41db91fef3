#include "lbsnet/graph.hpp"

#include <algorithm>

#include "lbsnet/error.hpp"

namespace lbsnet {

struct GraphAccess {
  // Builds CSR rows from per-node targets by counting sort, then sorts and
  // deduplicates each row. Returns the number of entries removed as duplicates.
  static std::size_t fill_out(Graph& g, std::size_t n, std::span<const Edge> arcs) {
    g.out_offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.out_offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.out_targets_.resize(arcs.size());
    std::vector<std::uint64_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (auto [u, v] : arcs) g.out_targets_[cursor[u]++] = v;
    cursor.clear();
    cursor.shrink_to_fit();

    std::size_t write = 0;
    std::uint64_t row_begin = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t row_end = g.out_offsets_[i + 1];
      auto first = g.out_targets_.begin() + static_cast<std::ptrdiff_t>(row_begin);
      auto last = g.out_targets_.begin() + static_cast<std::ptrdiff_t>(row_end);
      std::sort(first, last);
      auto unique_end = std::unique(first, last);
      g.out_offsets_[i] = write;
      for (auto it = first; it != unique_end; ++it) g.out_targets_[write++] = *it;
      row_begin = row_end;
    }
    g.out_offsets_[n] = write;
    const std::size_t removed = g.out_targets_.size() - write;
    g.out_targets_.resize(write);
    g.out_targets_.shrink_to_fit();
    return removed;
  }

  static void fill_in(Graph& g) {
    const std::size_t n = g.node_count();
    g.in_offsets_.assign(n + 1, 0);
    for (NodeId v : g.out_targets_) ++g.in_offsets_[v + 1];
    for (std::size_t i = 0; i < n; ++i) g.in_offsets_[i + 1] += g.in_offsets_[i];
    g.in_sources_.resize(g.out_targets_.size());
    std::vector<std::uint64_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // Sources are visited in increasing order, so every in-row comes out sorted.
    for (std::size_t u = 0; u < n; ++u)
      for (NodeId v : g.out_neighbors(static_cast<NodeId>(u))) g.in_sources_[cursor[v]++] = static_cast<NodeId>(u);
  }

  static void set_meta(Graph& g, bool directed) {
    g.directed_ = directed;
    g.edge_count_ = directed ? g.out_targets_.size() : g.out_targets_.size() / 2;
  }
};

bool Graph::has_edge(NodeId from, NodeId to) const {
  if (!contains(from) || !contains(to)) return false;
  auto row = out_neighbors(from);
  return std::binary_search(row.begin(), row.end(), to);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : out_neighbors(u))
      if (directed_ || u < v) out.emplace_back(u, v);
  return out;
}

BuildResult build_graph(std::vector<Edge> edges, Directedness directedness, std::size_t node_count) {
  if (edges.empty() && node_count == 0) throw Error(ErrorCode::EmptyGraph, "no edges and no declared nodes");

  BuildResult result;
  std::size_t n = node_count;
  std::size_t kept = 0;
  for (const auto& e : edges) {
    n = std::max<std::size_t>(n, std::max(e.first, e.second) + std::size_t{1});
    if (e.first == e.second) {
      ++result.self_loops_dropped;
      continue;
    }
    edges[kept++] = e;
  }
  edges.resize(kept);

  const bool directed = directedness == Directedness::Directed;
  if (!directed) {
    edges.reserve(2 * kept);
    for (std::size_t i = 0; i < kept; ++i) edges.emplace_back(edges[i].second, edges[i].first);
  }
  const std::size_t removed = GraphAccess::fill_out(result.graph, n, edges);
  // An undirected duplicate shows up once in each endpoint's row.
  result.duplicates_dropped = directed ? removed : removed / 2;
  std::vector<Edge>().swap(edges);

  GraphAccess::set_meta(result.graph, directed);
  if (directed) GraphAccess::fill_in(result.graph);
  return result;
}

Graph empty_graph(Directedness directedness) {
  Graph g;
  GraphAccess::fill_out(g, 0, {});
  GraphAccess::set_meta(g, directedness == Directedness::Directed);
  if (g.directed()) GraphAccess::fill_in(g);
  return g;
}

Graph undirected_projection(const Graph& g) {
  if (!g.directed()) return g;
  if (g.node_count() == 0) return empty_graph(Directedness::Undirected);
  std::vector<Edge> arcs;
  arcs.reserve(g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u)) arcs.emplace_back(std::min(u, v), std::max(u, v));
  return build_graph(std::move(arcs), Directedness::Undirected, g.node_count()).graph;
}

Graph symmetrized(const Graph& g) {
  if (g.directed()) return g;
  if (g.node_count() == 0) return empty_graph(Directedness::Directed);
  std::vector<Edge> arcs;
  arcs.reserve(2 * g.edge_count());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u)) arcs.emplace_back(u, v);
  return build_graph(std::move(arcs), Directedness::Directed, g.node_count()).graph;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId absent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.node_count(), absent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!g.contains(nodes[i])) throw Error(ErrorCode::NodeNotFound, "node " + std::to_string(nodes[i]));
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<Edge> arcs;
  for (NodeId u : nodes)
    for (NodeId v : g.out_neighbors(u))
      if (local[v] != absent && (g.directed() || u < v)) arcs.emplace_back(local[u], local[v]);
  if (nodes.empty()) return empty_graph(g.directed() ? Directedness::Directed : Directedness::Undirected);
  return build_graph(std::move(arcs), g.directed() ? Directedness::Directed : Directedness::Undirected,
                     nodes.size())
      .graph;
}

}  // namespace lbsnet
