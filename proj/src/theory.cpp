#include "lbsnet/theory.hpp"

#include <algorithm>
#include <cmath>

#include "lbsnet/error.hpp"

namespace lbsnet {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, std::string(what) + " must lie in [0, 1]");
}

void check_moments(double mean_k, double mean_k2) {
  if (!(mean_k > 0.0) || !(mean_k2 > 0.0) || !std::isfinite(mean_k) || !std::isfinite(mean_k2))
    throw Error(ErrorCode::BadMoments, "moments must be positive and finite");
}

// Binomial(k0, p) probabilities for k = 0..min(k0, max_out).
Eigen::VectorXd binomial_row(int k0, double p, int max_out) {
  const int top = std::min(k0, max_out);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(top + 1);
  if (p == 0.0) {
    row[0] = 1.0;
    return row;
  }
  if (p == 1.0) {
    if (k0 <= max_out) row[k0] = 1.0;
    return row;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_fact_k0 = std::lgamma(k0 + 1.0);
  for (int k = 0; k <= top; ++k)
    row[k] = std::exp(log_fact_k0 - std::lgamma(k + 1.0) - std::lgamma(k0 - k + 1.0) + k * log_p + (k0 - k) * log_q);
  return row;
}

void check_pmf_entries(const DegreePmf& pmf) {
  for (Eigen::Index k = 0; k < pmf.size(); ++k)
    if (!(pmf[k] >= 0.0)) throw Error(ErrorCode::BadProbability, "pmf entries must be non-negative");
}

}  // namespace

Eigen::MatrixXd binomial_kernel(int max_in, int max_out, double p) {
  check_probability(p, "thinning probability");
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(max_in + 1, max_out + 1);
  for (int k0 = 0; k0 <= max_in; ++k0) {
    const auto row = binomial_row(k0, p, max_out);
    kernel.row(k0).head(row.size()) = row.transpose();
  }
  return kernel;
}

TruncatedPmf thinned_degree_pmf(const DegreePmf& source_pmf, double p_e, int k_max_out) {
  check_probability(p_e, "p_e");
  check_pmf_entries(source_pmf);
  const int max_in = static_cast<int>(source_pmf.size()) - 1;
  const int max_out = k_max_out < 0 ? std::max(max_in, 0) : k_max_out;
  TruncatedPmf out{DegreePmf::Zero(max_out + 1), 0.0};
  for (int k0 = 0; k0 <= max_in; ++k0) {
    const double mass = source_pmf[k0];
    if (mass == 0.0) continue;
    const auto row = binomial_row(k0, p_e, max_out);
    out.pmf.head(row.size()) += mass * row;
  }
  out.remainder = std::max(0.0, source_pmf.sum() - out.pmf.sum());
  return out;
}

TruncatedJointPmf thinned_joint_pmf(const JointPmf& source_joint, double p_e, int j_cap, int k_cap) {
  check_probability(p_e, "p_e");
  int max_j = 0, max_k = 0;
  double total = 0.0;
  for (const auto& [jk, mass] : source_joint) {
    if (!(mass >= 0.0) || jk.first < 0 || jk.second < 0)
      throw Error(ErrorCode::BadProbability, "joint pmf entries must be non-negative");
    max_j = std::max(max_j, jk.first);
    max_k = std::max(max_k, jk.second);
    total += mass;
  }
  const int rows = j_cap < 0 ? max_j : j_cap;
  const int cols = k_cap < 0 ? max_k : k_cap;
  TruncatedJointPmf out{Eigen::MatrixXd::Zero(rows + 1, cols + 1), 0.0};
  for (const auto& [jk, mass] : source_joint) {
    if (mass == 0.0) continue;
    const auto in_row = binomial_row(jk.first, p_e, rows);
    const auto out_row = binomial_row(jk.second, p_e, cols);
    out.pmf.topLeftCorner(in_row.size(), out_row.size()) += mass * in_row * out_row.transpose();
  }
  out.remainder = std::max(0.0, total - out.pmf.sum());
  return out;
}

GccThreshold gcc_threshold(double mean_k, double mean_k2_or_jk) {
  check_moments(mean_k, mean_k2_or_jk);
  return GccThreshold{mean_k / mean_k2_or_jk};
}

bool gcc_predicate(double mean_k, double mean_jk, double p_e) {
  check_probability(p_e, "p_e");
  return p_e >= gcc_threshold(mean_k, mean_jk).raw;
}

MomentPair predict_moments(double mean_k_src, double mean_k2_src, double p_e) {
  check_probability(p_e, "p_e");
  if (!(mean_k_src >= 0.0) || !(mean_k2_src >= 0.0)) throw Error(ErrorCode::BadMoments, "moments must be non-negative");
  return {p_e * mean_k_src, p_e * p_e * mean_k2_src + p_e * (1.0 - p_e) * mean_k_src};
}

double predict_reciprocity(double p2) {
  check_probability(p2, "p2");
  return p2;
}

UncorrelatedClustering predict_clustering_uncorrelated(double n, double mean_k, double mean_k2) {
  if (!(n > 0.0)) throw Error(ErrorCode::BadMoments, "node count must be positive");
  if (!(mean_k > 0.0)) throw Error(ErrorCode::BadMoments, "<k> must be positive");
  const double excess = mean_k2 - mean_k;
  return {excess * excess / (n * mean_k * mean_k * mean_k)};
}

double predict_copied_clustering(double p2, double clustering_src) {
  check_probability(p2, "p2");
  return p2 * clustering_src;
}

UncorrelatedClustering predict_copied_clustering_from_moments(double source_nodes, double p1, double p2,
                                                              double mean_k_src, double mean_k2_src) {
  check_probability(p1, "p1");
  const auto m = predict_moments(mean_k_src, mean_k2_src, p1 * p2);
  return predict_clustering_uncorrelated(p1 * source_nodes, m.mean_k, m.mean_k2);
}

SourceSummary summarize_source(const Graph& source, bool with_clustering) {
  const auto stats = degree_stats(source);
  SourceSummary s;
  s.node_count = stats.node_count;
  s.mean_k = stats.mean_k;
  s.mean_k2 = stats.mean_k2;
  s.mean_jk = stats.mean_jk;
  s.degree_pmf = stats.out_pmf;
  if (with_clustering) {
    try {
      s.clustering = global_clustering(source, ClusteringMode::MeanLocal);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoTriples) throw;
    }
  }
  return s;
}

TheoryReport predict_all(const SourceSummary& source, double p1, double p2, int k_max_out) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  TheoryReport r;
  r.p1 = p1;
  r.p2 = p2;
  r.p_e = p1 * p2;
  r.threshold = gcc_threshold(source.mean_k, source.mean_k2);
  r.threshold_jk = gcc_threshold(source.mean_k, source.mean_jk > 0.0 ? source.mean_jk : source.mean_k2);
  r.gcc_predicted = r.p_e >= r.threshold_jk.raw;
  r.moments = predict_moments(source.mean_k, source.mean_k2, r.p_e);
  r.reciprocity = predict_reciprocity(p2);
  const auto n = static_cast<double>(source.node_count);
  if (n > 0.0) {
    r.clustering_source_uncorrelated = predict_clustering_uncorrelated(n, source.mean_k, source.mean_k2);
    if (p1 > 0.0 && p2 > 0.0)
      r.clustering_copied_uncorrelated =
          predict_copied_clustering_from_moments(n, p1, p2, source.mean_k, source.mean_k2);
  }
  if (source.clustering) r.copied_clustering = predict_copied_clustering(p2, *source.clustering);
  if (source.degree_pmf) r.degree_pmf = thinned_degree_pmf(*source.degree_pmf, r.p_e, k_max_out);
  return r;
}

}  // namespace lbsnet
