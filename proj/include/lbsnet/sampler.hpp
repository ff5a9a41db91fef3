#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lbsnet/graph.hpp"

namespace lbsnet {

/// Uniform LBS rates. The link copy probability is p1 * p2.
struct LbsParams {
  double p1 = 1.0;  // node sampling rate
  double p2 = 1.0;  // link sampling rate
  std::uint64_t seed = 1;

  double link_copy_probability() const { return p1 * p2; }
};

void validate(const LbsParams& params);

/// Directed copied network over the sampled node set S. Node i of
/// copied_graph is source node sampled_nodes[i]; isolated sampled nodes stay.
struct CopiedNetwork {
  std::vector<NodeId> sampled_nodes;  // increasing source ids
  Graph copied_graph;
  std::string source_ref;
};

/// Link Bootstrapping Sampling on an undirected source.
///
/// Random stream layout (fixed, so sweeps over p1/p2 with the same seed are
/// coupled and monotone): one uniform per node in id order, compared against
/// the node's inclusion probability; then two uniforms per source edge {u, v}
/// with u < v in edge order, for u->v and v->u, compared against p2. Every
/// uniform is drawn whether or not the endpoints were sampled.
CopiedNetwork lbs_sample(const Graph& source, const LbsParams& params, std::string source_ref = {});

/// Variant with node inclusion probability min(1, base_p1 * deg(i) / <k>).
CopiedNetwork lbs_sample_degree_weighted(const Graph& source, double base_p1, double p2, std::uint64_t seed,
                                         std::string source_ref = {});

/// Per-node inclusion probabilities used by lbs_sample_degree_weighted.
std::vector<double> degree_weighted_inclusion(const Graph& source, double base_p1);

struct ReplicaMeasurement {
  double p1 = 0.0;
  double p2 = 0.0;
  std::size_t replica = 0;
  std::size_t sampled_nodes = 0;
  std::size_t copied_edges = 0;
  double gcc_weak_frac = 0.0;
  double gcc_strong_frac = 0.0;
  double reciprocity = 0.0;            // NaN without copied edges
  double clustering_mean_local = 0.0;  // NaN when undefined everywhere
  double clustering_transitivity = 0.0;
  double mean_k = 0.0;  // out-degree moments over S
  double mean_k2 = 0.0;
};

/// Measures one copied network (all quantities over the sampled node set).
ReplicaMeasurement measure_copied(const CopiedNetwork& net);

struct CellSummary {
  double p1 = 0.0;
  double p2 = 0.0;
  std::size_t replicas = 0;
  // mean and standard error of the mean, over replicas with a defined value
  struct Stat {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
  };
  Stat gcc_weak_frac, gcc_strong_frac, reciprocity, clustering_mean_local, clustering_transitivity, mean_k, mean_k2;
};

struct SweepReport {
  std::uint64_t seed = 0;
  std::vector<ReplicaMeasurement> rows;  // cell-major (p1 outer, p2 inner), then replica
  std::vector<CellSummary> cells;
};

struct SweepOptions {
  std::vector<double> p1_grid;
  std::vector<double> p2_grid;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Replica r of every cell uses seed derive_seed(seed, {r}), so cells are
/// coupled across the grid and each row is reproducible on its own with
/// lbs_sample(source, {p1, p2, derive_seed(seed, {r})}). Output order does not
/// depend on the thread count.
SweepReport lbs_sweep(const Graph& source, const SweepOptions& options);

/// Seed used for replica `replica` of a sweep rooted at `seed`.
std::uint64_t replica_seed(std::uint64_t seed, std::size_t replica);

/// Header: p1,p2,p_e,replica,gcc_weak_frac,gcc_strong_frac,reciprocity,
/// clustering_mean_local,clustering_transitivity,mean_k,mean_k2
void write_sweep_csv(std::ostream& out, const SweepReport& report);
std::vector<ReplicaMeasurement> read_sweep_csv(std::istream& in);

CellSummary::Stat summarize(const std::vector<double>& values);

}  // namespace lbsnet
