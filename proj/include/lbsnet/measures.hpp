#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lbsnet/graph.hpp"

namespace lbsnet {

/// Probability per degree value, indexed by degree.
using DegreePmf = Eigen::VectorXd;
/// Probability per (in-degree, out-degree) pair; absent pairs have probability zero.
using JointPmf = std::map<std::pair<int, int>, double>;

struct DegreeStats {
  DegreePmf in_pmf;
  DegreePmf out_pmf;
  JointPmf joint_pmf;
  /// Moments of the out-degree (the degree, for undirected graphs).
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  /// Mixed moment <jk> of in- and out-degree.
  double mean_jk = 0.0;
  std::size_t node_count = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Mean and second moment of an arbitrary degree pmf.
std::pair<double, double> pmf_moments(const DegreePmf& pmf);

/// Fraction of directed edges whose reverse edge also exists.
double reciprocity(const Graph& g);

/// Exact tallies behind a local clustering coefficient: the coefficient is
/// links / pairs, where pairs is d(d-1) over the (projected) neighbourhood of
/// size d and links counts ordered neighbour pairs (a, b) with an edge a->b.
/// For undirected graphs that is twice the triangle count through the node.
struct ClusteringTally {
  std::uint64_t links = 0;
  std::uint64_t pairs = 0;
  std::optional<double> value() const {
    if (pairs == 0) return std::nullopt;
    return static_cast<double>(links) / static_cast<double>(pairs);
  }
};

/// Neighbourhoods of directed graphs are taken on the undirected projection
/// (in- and out-neighbours merged); neighbour links keep their direction, so
/// a one-way link between two neighbours counts half as much as a mutual one.
/// On undirected and symmetric graphs this is the usual triangle-based value.
ClusteringTally clustering_tally(const Graph& g, NodeId node);
std::vector<ClusteringTally> clustering_tallies(const Graph& g);

/// Undefined (nullopt) when the projected degree is below 2.
std::optional<double> local_clustering(const Graph& g, NodeId node);

enum class ClusteringMode { MeanLocal, Transitivity };

/// MeanLocal averages the defined local coefficients; Transitivity is the
/// ratio of summed links to summed pairs (3 x triangles / connected triples
/// on undirected graphs).
double global_clustering(const Graph& g, ClusteringMode mode);

enum class ComponentKind { Weak, Strong, Undirected };

struct ComponentReport {
  std::vector<std::size_t> component_sizes;  // descending
  std::size_t gcc_size = 0;
  double gcc_fraction_of_nodes = 0.0;
  ComponentKind component_kind = ComponentKind::Weak;
};

/// Component label per node (labels are 0..count-1 in order of first node).
std::vector<std::uint32_t> component_labels(const Graph& g, ComponentKind kind);
ComponentReport connected_components(const Graph& g, ComponentKind kind);

const char* to_string(ComponentKind kind);
const char* to_string(ClusteringMode mode);

}  // namespace lbsnet
