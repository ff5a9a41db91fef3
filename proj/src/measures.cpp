#include "lbsnet/measures.hpp"

#include <algorithm>
#include <numeric>

#include "lbsnet/error.hpp"

namespace lbsnet {

namespace {

DegreePmf counts_to_pmf(const std::vector<std::uint64_t>& counts, std::size_t n) {
  DegreePmf pmf(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t k = 0; k < counts.size(); ++k)
    pmf[static_cast<Eigen::Index>(k)] = static_cast<double>(counts[k]) / static_cast<double>(n);
  return pmf;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

// Tarjan's algorithm with an explicit call stack.
std::vector<std::uint32_t> strong_labels(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t unvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<NodeId> stack;
  std::vector<bool> on_stack(n, false);
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> calls;
  std::uint32_t counter = 0;
  std::uint32_t comp_count = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto nbrs = g.out_neighbors(f.node);
      if (f.next < nbrs.size()) {
        const NodeId w = nbrs[f.next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const NodeId v = f.node;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != v);
        ++comp_count;
      }
    }
  }
  return comp;
}

// Relabels arbitrary component representatives to 0..count-1 by first node.
std::vector<std::uint32_t> canonical_labels(const std::vector<std::uint32_t>& raw) {
  constexpr std::uint32_t unseen = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> remap(raw.size(), unseen);
  std::vector<std::uint32_t> out(raw.size());
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < raw.size(); ++v) {
    auto& slot = remap[raw[v]];
    if (slot == unseen) slot = next++;
    out[v] = slot;
  }
  return out;
}

}  // namespace

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "degree_stats on a graph without nodes");

  std::vector<std::uint64_t> in_counts, out_counts;
  std::map<std::pair<int, int>, std::uint64_t> joint_counts;
  std::uint64_t sum_k = 0, sum_k2 = 0, sum_jk = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t k = g.out_degree(v);
    const std::uint64_t j = g.in_degree(v);
    if (out_counts.size() <= k) out_counts.resize(k + 1, 0);
    if (in_counts.size() <= j) in_counts.resize(j + 1, 0);
    ++out_counts[k];
    ++in_counts[j];
    ++joint_counts[{static_cast<int>(j), static_cast<int>(k)}];
    sum_k += k;
    sum_k2 += k * k;
    sum_jk += j * k;
  }

  DegreeStats s;
  s.node_count = n;
  s.in_pmf = counts_to_pmf(in_counts, n);
  s.out_pmf = counts_to_pmf(out_counts, n);
  for (const auto& [key, count] : joint_counts)
    s.joint_pmf.emplace(key, static_cast<double>(count) / static_cast<double>(n));
  const auto dn = static_cast<double>(n);
  s.mean_k = static_cast<double>(sum_k) / dn;
  s.mean_k2 = static_cast<double>(sum_k2) / dn;
  s.mean_jk = static_cast<double>(sum_jk) / dn;
  return s;
}

std::pair<double, double> pmf_moments(const DegreePmf& pmf) {
  double m1 = 0.0, m2 = 0.0;
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    const auto kd = static_cast<double>(k);
    m1 += kd * pmf[k];
    m2 += kd * kd * pmf[k];
  }
  return {m1, m2};
}

double reciprocity(const Graph& g) {
  if (!g.directed()) throw Error(ErrorCode::NotDirected, "reciprocity needs a directed graph");
  if (g.edge_count() == 0) throw Error(ErrorCode::NoEdges, "reciprocity of a graph without edges");
  std::uint64_t mutual = 0;
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u))
      if (g.has_edge(v, u)) ++mutual;
  return static_cast<double>(mutual) / static_cast<double>(g.edge_count());
}

namespace {

// Projected neighbourhood of `node`, sorted and duplicate-free.
void projected_neighbourhood(const Graph& g, NodeId node, std::vector<NodeId>& out) {
  out.clear();
  const auto outs = g.out_neighbors(node);
  if (!g.directed()) {
    out.assign(outs.begin(), outs.end());
    return;
  }
  const auto ins = g.in_neighbors(node);
  std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(), std::back_inserter(out));
}

ClusteringTally tally_with(const Graph& g, NodeId node, std::vector<NodeId>& nbhd, std::vector<NodeId>& mark) {
  projected_neighbourhood(g, node, nbhd);
  const std::uint64_t d = nbhd.size();
  ClusteringTally t;
  if (d < 2) return t;
  t.pairs = d * (d - 1);
  const NodeId stamp = node + 1;
  for (NodeId a : nbhd) mark[a] = stamp;
  for (NodeId a : nbhd)
    for (NodeId b : g.out_neighbors(a))
      if (mark[b] == stamp) ++t.links;
  return t;
}

}  // namespace

ClusteringTally clustering_tally(const Graph& g, NodeId node) {
  if (!g.contains(node)) throw Error(ErrorCode::NodeNotFound, "node " + std::to_string(node));
  std::vector<NodeId> nbhd, mark(g.node_count(), 0);
  return tally_with(g, node, nbhd, mark);
}

std::vector<ClusteringTally> clustering_tallies(const Graph& g) {
  std::vector<ClusteringTally> out(g.node_count());
  std::vector<NodeId> nbhd, mark(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) out[v] = tally_with(g, v, nbhd, mark);
  return out;
}

std::optional<double> local_clustering(const Graph& g, NodeId node) { return clustering_tally(g, node).value(); }

double global_clustering(const Graph& g, ClusteringMode mode) {
  const auto tallies = clustering_tallies(g);
  std::uint64_t links = 0, pairs = 0;
  double sum_local = 0.0;
  std::size_t defined = 0;
  for (const auto& t : tallies) {
    if (t.pairs == 0) continue;
    links += t.links;
    pairs += t.pairs;
    sum_local += *t.value();
    ++defined;
  }
  if (defined == 0) throw Error(ErrorCode::NoTriples, "no node has degree 2 or more");
  if (mode == ClusteringMode::MeanLocal) return sum_local / static_cast<double>(defined);
  return static_cast<double>(links) / static_cast<double>(pairs);
}

std::vector<std::uint32_t> component_labels(const Graph& g, ComponentKind kind) {
  if (kind == ComponentKind::Strong && !g.directed())
    throw Error(ErrorCode::KindMismatch, "strong components need a directed graph");
  if (kind == ComponentKind::Undirected && g.directed())
    throw Error(ErrorCode::KindMismatch, "undirected components need an undirected graph; use weak");
  const std::size_t n = g.node_count();
  if (kind == ComponentKind::Strong) return canonical_labels(strong_labels(g));

  UnionFind uf(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : g.out_neighbors(u))
      if (g.directed() || u < v) uf.unite(u, v);
  std::vector<std::uint32_t> raw(n);
  for (NodeId v = 0; v < n; ++v) raw[v] = uf.find(v);
  return canonical_labels(raw);
}

ComponentReport connected_components(const Graph& g, ComponentKind kind) {
  if (g.node_count() == 0) throw Error(ErrorCode::EmptyGraph, "components of a graph without nodes");
  const auto labels = component_labels(g, kind);
  std::vector<std::size_t> sizes;
  for (auto label : labels) {
    if (sizes.size() <= label) sizes.resize(label + 1, 0);
    ++sizes[label];
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  ComponentReport r;
  r.component_kind = kind;
  r.component_sizes = std::move(sizes);
  r.gcc_size = r.component_sizes.front();
  r.gcc_fraction_of_nodes = static_cast<double>(r.gcc_size) / static_cast<double>(g.node_count());
  return r;
}

const char* to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Weak: return "weak";
    case ComponentKind::Strong: return "strong";
    case ComponentKind::Undirected: return "undirected";
  }
  return "?";
}

const char* to_string(ClusteringMode mode) {
  return mode == ClusteringMode::MeanLocal ? "mean_local" : "transitivity";
}

}  // namespace lbsnet
