#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "lbsnet/measures.hpp"

namespace lbsnet {

/// A pmf cut at a maximum value; `remainder` is the probability mass that fell
/// beyond the cut (pmf.sum() + remainder == total input mass).
struct TruncatedPmf {
  DegreePmf pmf;
  double remainder = 0.0;
};

/// Joint pmf as a dense matrix, rows = in-degree j, columns = out-degree k.
struct TruncatedJointPmf {
  Eigen::MatrixXd pmf;
  double remainder = 0.0;
};

/// Binomial thinning kernel: K(k0, k) = C(k0, k) p^k (1 - p)^(k0 - k) for
/// k0 <= max_in and k <= max_out (zero above the diagonal).
Eigen::MatrixXd binomial_kernel(int max_in, int max_out, double p);

/// Degree pmf after keeping each link independently with probability p_e.
/// k_max_out < 0 keeps the full support of the input.
TruncatedPmf thinned_degree_pmf(const DegreePmf& source_pmf, double p_e, int k_max_out = -1);

/// Independent thinning of both coordinates of a joint (in, out) pmf.
/// Negative caps keep the full input support.
TruncatedJointPmf thinned_joint_pmf(const JointPmf& source_joint, double p_e, int j_cap = -1, int k_cap = -1);

struct GccThreshold {
  /// <k>' / <k^2>' (or <k>' / <jk>'); above 1 means no giant component is
  /// reachable at any link copy probability.
  double raw = 0.0;
  bool achievable() const { return raw <= 1.0; }
  double clamped() const { return raw < 1.0 ? raw : 1.0; }
};

GccThreshold gcc_threshold(double mean_k, double mean_k2_or_jk);

/// True iff p_e >= <k>' / <jk>'.
bool gcc_predicate(double mean_k, double mean_jk, double p_e);

struct MomentPair {
  double mean_k = 0.0;
  double mean_k2 = 0.0;
};

/// <k> = p_e <k>',  <k^2> = p_e^2 <k^2>' + p_e (1 - p_e) <k>'.
MomentPair predict_moments(double mean_k_src, double mean_k2_src, double p_e);

/// Copied-network reciprocity under independent per-direction link selection.
double predict_reciprocity(double p2);

struct UncorrelatedClustering {
  double raw = 0.0;  // may exceed 1 for heavy tails at small n
  double clamped() const { return raw < 1.0 ? raw : 1.0; }
};

/// C = (<k^2> - <k>)^2 / (n <k>^3) for an uncorrelated network.
UncorrelatedClustering predict_clustering_uncorrelated(double n, double mean_k, double mean_k2);

/// C^c = p2 C^s.
double predict_copied_clustering(double p2, double clustering_src);

/// The same prediction along the moment route: the uncorrelated formula on
/// predict_moments' output with the sampled node count replaced by its
/// expectation p1 N. Equals p2 times the source's uncorrelated value.
UncorrelatedClustering predict_copied_clustering_from_moments(double source_nodes, double p1, double p2,
                                                              double mean_k_src, double mean_k2_src);

struct SourceSummary {
  std::size_t node_count = 0;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  double mean_jk = 0.0;  // equals mean_k2 for undirected sources
  std::optional<double> clustering;
  std::optional<DegreePmf> degree_pmf;
};

SourceSummary summarize_source(const Graph& source, bool with_clustering = true);

struct TheoryReport {
  double p1 = 0.0, p2 = 0.0, p_e = 0.0;
  GccThreshold threshold;          // from <k>'/<k^2>'
  GccThreshold threshold_jk;       // from <k>'/<jk>'
  bool gcc_predicted = false;
  MomentPair moments;
  double reciprocity = 0.0;
  UncorrelatedClustering clustering_source_uncorrelated;
  UncorrelatedClustering clustering_copied_uncorrelated;
  std::optional<double> copied_clustering;
  std::optional<TruncatedPmf> degree_pmf;
};

TheoryReport predict_all(const SourceSummary& source, double p1, double p2, int k_max_out = -1);

}  // namespace lbsnet
