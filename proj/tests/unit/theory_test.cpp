#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "lbsnet/error.hpp"
#include "lbsnet/generators.hpp"
#include "lbsnet/random.hpp"
#include "lbsnet/theory.hpp"

using namespace lbsnet;

namespace {

double tv_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const auto n = std::max(a.size(), b.size());
  double tv = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) tv += std::abs((k < a.size() ? a[k] : 0.0) - (k < b.size() ? b[k] : 0.0));
  return tv / 2.0;
}

DegreePmf random_pmf(Rng& rng) {
  const int size = 1 + static_cast<int>(rng.below(40));
  DegreePmf p(size);
  for (int k = 0; k < size; ++k) p[k] = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
  if (p.sum() == 0.0) p[size - 1] = 1.0;
  return p / p.sum();
}

int draw(Rng& rng, const DegreePmf& pmf) {
  double u = rng.uniform();
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    u -= pmf[k];
    if (u < 0.0) return static_cast<int>(k);
  }
  return static_cast<int>(pmf.size() - 1);
}

int thin(Rng& rng, int k, double p) {
  int kept = 0;
  for (int i = 0; i < k; ++i) kept += rng.bernoulli(p);
  return kept;
}

}  // namespace

TEST_CASE("binomial kernel rows") {
  const auto k = binomial_kernel(4, 4, 0.3);
  for (int r = 0; r <= 4; ++r) CHECK(k.row(r).sum() == doctest::Approx(1.0));
  CHECK(k(2, 1) == doctest::Approx(2 * 0.3 * 0.7));
  CHECK(k(1, 3) == 0.0);
  CHECK(binomial_kernel(3, 3, 1.0) == Eigen::MatrixXd::Identity(4, 4));
}

TEST_CASE("thinned degree pmf") {
  DegreePmf two = DegreePmf::Zero(3);
  two[2] = 1.0;
  const auto half = thinned_degree_pmf(two, 0.5);
  CHECK(half.pmf[0] == doctest::Approx(0.25));
  CHECK(half.pmf[1] == doctest::Approx(0.5));
  CHECK(half.pmf[2] == doctest::Approx(0.25));
  CHECK(half.remainder == doctest::Approx(0.0));

  const auto law = truncated_powerlaw_pmf(2.5, 2, 1000);
  CHECK(thinned_degree_pmf(law, 1.0).pmf == law);

  const auto cut = thinned_degree_pmf(law, 0.3, 20);
  CHECK(cut.pmf.size() == 21);
  CHECK(cut.pmf.sum() + cut.remainder == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cut.remainder > 0.0);

  CHECK_THROWS_AS(thinned_degree_pmf(two, 1.5), Error);
  CHECK_THROWS_AS(thinned_degree_pmf(two, -0.1), Error);
}

TEST_CASE("thinned power law against Monte Carlo") {
  const auto law = truncated_powerlaw_pmf(2.5, 2, 1000);
  const auto exact = thinned_degree_pmf(law, 0.3).pmf;
  Rng rng(2024);
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(exact.size());
  const int trials = 1000000;
  for (int t = 0; t < trials; ++t) hist[thin(rng, draw(rng, law), 0.3)] += 1.0;
  CHECK(tv_distance(exact, hist / trials) < 0.005);
}

TEST_CASE("thinned joint pmf") {
  const auto one = thinned_joint_pmf({{{1, 1}, 1.0}}, 0.5);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) CHECK(one.pmf(j, k) == doctest::Approx(0.25));

  const JointPmf src{{{2, 3}, 0.4}, {{1, 0}, 0.6}};
  const auto id = thinned_joint_pmf(src, 1.0);
  CHECK(id.pmf(2, 3) == 0.4);
  CHECK(id.pmf(1, 0) == 0.6);

  // fully correlated undirected source, j = k in {2, 3}, thinned per coordinate
  const JointPmf corr{{{2, 2}, 0.5}, {{3, 3}, 0.5}};
  const auto exact = thinned_joint_pmf(corr, 0.4);
  Rng rng(77);
  Eigen::MatrixXd hist = Eigen::MatrixXd::Zero(4, 4);
  const int trials = 400000;
  for (int t = 0; t < trials; ++t) {
    const int k = rng.uniform() < 0.5 ? 2 : 3;
    hist(thin(rng, k, 0.4), thin(rng, k, 0.4)) += 1.0;
  }
  CHECK(0.5 * (exact.pmf - hist / trials).cwiseAbs().sum() < 0.005);
  CHECK_THROWS_AS(thinned_joint_pmf(corr, 2.0), Error);
}

TEST_CASE("thinning composes multiplicatively") {
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_pmf(rng);
    const double a = rng.uniform();
    const double b = rng.uniform();
    const auto twice = thinned_degree_pmf(thinned_degree_pmf(p, a).pmf, b).pmf;
    const auto once = thinned_degree_pmf(p, a * b).pmf;
    REQUIRE(twice.size() == once.size());
    CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("thinned moments agree with predict_moments") {
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_pmf(rng);
    const double pe = rng.uniform();
    const auto [m1, m2] = pmf_moments(p);
    const auto [t1, t2] = pmf_moments(thinned_degree_pmf(p, pe).pmf);
    const auto pred = predict_moments(m1, m2, pe);
    CHECK(t1 == doctest::Approx(pred.mean_k).epsilon(1e-10));
    CHECK(t2 == doctest::Approx(pred.mean_k2).epsilon(1e-10));
  }
}

TEST_CASE("giant component threshold") {
  const double lambda = 10.0;
  CHECK(gcc_threshold(lambda, lambda * lambda + lambda).raw == doctest::Approx(1.0 / 11.0));
  CHECK(gcc_threshold(4.0, 16.0).raw == 0.25);
  CHECK(!gcc_predicate(lambda, lambda * lambda + lambda, 0.05));
  CHECK(gcc_predicate(lambda, lambda * lambda + lambda, 0.12));
  CHECK(gcc_predicate(3.0, 9.0, 1.0));

  const auto [m1, m2] = truncated_powerlaw_moments(2.5, 2, 1000);
  CHECK(gcc_threshold(m1, m2).raw == doctest::Approx(0.025478945734254674).epsilon(1e-12));

  for (auto [a, b] : {std::pair{3.0, 17.0}, {10.0, 110.0}, {4.5, 178.0}}) {
    const double t = gcc_threshold(a, b).raw;
    CHECK(gcc_predicate(a, b, t));
    CHECK(!gcc_predicate(a, b, std::nextafter(t, 0.0)));
  }

  const auto above = gcc_threshold(2.0, 1.5);
  CHECK(!above.achievable());
  CHECK(above.clamped() == 1.0);
  CHECK_THROWS_AS(gcc_threshold(0.0, 1.0), Error);
  CHECK_THROWS_AS(gcc_threshold(1.0, -1.0), Error);
}

TEST_CASE("undirected sources give the same threshold from <jk> and <k^2>") {
  const auto s = summarize_source(test::paw());
  CHECK(s.mean_jk == s.mean_k2);
  const auto r = predict_all(s, 0.5, 0.5);
  CHECK(r.threshold.raw == r.threshold_jk.raw);
}

TEST_CASE("moments, reciprocity, clustering") {
  const auto id = predict_moments(10.0, 150.0, 1.0);
  CHECK(id.mean_k == 10.0);
  CHECK(id.mean_k2 == 150.0);
  const auto zero = predict_moments(10.0, 150.0, 0.0);
  CHECK(zero.mean_k == 0.0);
  CHECK(zero.mean_k2 == 0.0);
  const auto half = predict_moments(10.0, 150.0, 0.5);
  CHECK(half.mean_k == 5.0);
  CHECK(half.mean_k2 == 40.0);

  CHECK(predict_reciprocity(1.0) == 1.0);
  CHECK(predict_reciprocity(0.5) == 0.5);

  CHECK(predict_clustering_uncorrelated(10000, 10.0, 100.0).raw == doctest::Approx(0.00081));
  CHECK(predict_clustering_uncorrelated(10000, 10.0, 110.0).raw == doctest::Approx(0.001));
  CHECK(predict_clustering_uncorrelated(100, 3.0, 3.0).raw == 0.0);
  CHECK(predict_clustering_uncorrelated(10, 2.0, 400.0).raw > 1.0);

  CHECK(predict_copied_clustering(1.0, 0.4) == 0.4);
  CHECK(predict_copied_clustering(0.0, 0.4) == 0.0);
  CHECK(predict_copied_clustering(0.3, 0.5) == doctest::Approx(0.15));

  const double src = predict_clustering_uncorrelated(5000, 8.0, 80.0).raw;
  CHECK(predict_copied_clustering_from_moments(5000, 0.6, 0.3, 8.0, 80.0).raw == doctest::Approx(0.3 * src));
}

TEST_CASE("random regular graph clustering matches the uncorrelated formula") {
  GeneratorSpec spec;
  spec.family = GeneratorFamily::PowerlawConfig;
  spec.node_count = 10000;
  spec.powerlaw = {2.5, 10, 10};
  spec.seed = 3;
  const auto g = generate(spec);
  const double c = global_clustering(g, ClusteringMode::Transitivity);
  const double predicted = predict_clustering_uncorrelated(10000, 10.0, 100.0).raw;
  CHECK(c > 0.7 * predicted);
  CHECK(c < 1.3 * predicted);
}

TEST_CASE("predict_all bundles everything") {
  const auto g = test::paw();
  const auto s = summarize_source(g);
  REQUIRE(s.clustering.has_value());
  const auto r = predict_all(s, 0.5, 0.4);
  CHECK(r.p_e == 0.2);
  CHECK(r.reciprocity == 0.4);
  CHECK(*r.copied_clustering == doctest::Approx(0.4 * 7.0 / 9.0));
  REQUIRE(r.degree_pmf.has_value());
  CHECK(r.degree_pmf->pmf.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(predict_all(s, 1.2, 0.5), Error);
}
