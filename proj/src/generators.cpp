#include "lbsnet/generators.hpp"

#include <algorithm>
#include <cmath>

#include "lbsnet/error.hpp"
#include "lbsnet/random.hpp"

namespace lbsnet {

namespace {

constexpr int kParityAttempts = 100;

Graph erdos_renyi(std::size_t n, double mean_degree, Rng& rng) {
  const double p = mean_degree / static_cast<double>(n - 1);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(mean_degree * static_cast<double>(n) / 2.0 * 1.05) + 16);
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v)
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(v, w);
    return build_graph(std::move(edges), Directedness::Undirected, n).graph;
  }
  // Batagelj & Brandes skipping over the lower triangle.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1, w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = rng.uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return build_graph(std::move(edges), Directedness::Undirected, n).graph;
}

Graph powerlaw_config(const GeneratorSpec& spec, Rng& rng) {
  const std::size_t n = spec.node_count;
  const int k_min = spec.powerlaw.k_min;
  const int k_max = powerlaw_k_max(spec);
  const DegreePmf pmf = truncated_powerlaw_pmf(spec.powerlaw.exponent, k_min, k_max);
  std::vector<double> cdf(static_cast<std::size_t>(k_max) + 1);
  double acc = 0.0;
  for (int k = 0; k <= k_max; ++k) cdf[static_cast<std::size_t>(k)] = acc += pmf[k];
  cdf.back() = 1.0;
  auto draw = [&]() {
    const double u = rng.uniform();
    return static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  };

  std::vector<int> degrees(n);
  std::uint64_t total = 0;
  for (auto& d : degrees) total += static_cast<std::uint64_t>(d = draw());
  for (int attempt = 0; total % 2 == 1; ++attempt) {
    if (attempt == kParityAttempts) throw Error(ErrorCode::GenerationFailed, "could not make the degree sum even");
    auto& d = degrees[rng.below(n)];
    total -= static_cast<std::uint64_t>(d);
    total += static_cast<std::uint64_t>(d = draw());
  }

  std::vector<NodeId> stubs;
  stubs.reserve(total);
  for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), static_cast<NodeId>(v));
  for (std::size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.below(i)]);
  std::vector<Edge> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.emplace_back(stubs[i], stubs[i + 1]);
  return build_graph(std::move(edges), Directedness::Undirected, n).graph;
}

Graph ring_rewire(std::size_t n, int k, double beta, Rng& rng) {
  std::vector<std::vector<NodeId>> adj(n);
  for (std::size_t u = 0; u < n; ++u)
    for (int j = 1; j <= k / 2; ++j) {
      const auto v = static_cast<NodeId>((u + static_cast<std::size_t>(j)) % n);
      adj[u].push_back(v);
      adj[v].push_back(static_cast<NodeId>(u));
    }
  auto linked = [&](NodeId a, NodeId b) { return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end(); };
  auto unlink = [&](NodeId a, NodeId b) { adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b)); };

  if (beta > 0.0) {
    for (int j = 1; j <= k / 2; ++j)
      for (std::size_t ui = 0; ui < n; ++ui) {
        const auto u = static_cast<NodeId>(ui);
        const auto v = static_cast<NodeId>((ui + static_cast<std::size_t>(j)) % n);
        if (!rng.bernoulli(beta)) continue;
        if (adj[u].size() + 1 >= n) continue;
        NodeId w;
        do {
          w = static_cast<NodeId>(rng.below(n));
        } while (w == u || linked(u, w));
        unlink(u, v);
        unlink(v, u);
        adj[u].push_back(w);
        adj[w].push_back(u);
      }
  }

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (NodeId v : adj[u])
      if (u < v) edges.emplace_back(static_cast<NodeId>(u), v);
  return build_graph(std::move(edges), Directedness::Undirected, n).graph;
}

}  // namespace

int powerlaw_k_max(const GeneratorSpec& spec) {
  if (spec.powerlaw.k_max) return *spec.powerlaw.k_max;
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(spec.node_count) * spec.powerlaw.k_min)));
}

void validate(const GeneratorSpec& spec) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
  if (spec.node_count < 2) fail("node_count must be at least 2");
  switch (spec.family) {
    case GeneratorFamily::ErdosRenyi:
      if (!(spec.erdos_renyi.mean_degree > 0.0)) fail("mean degree must be positive");
      if (spec.erdos_renyi.mean_degree > static_cast<double>(spec.node_count - 1))
        fail("mean degree exceeds n - 1");
      break;
    case GeneratorFamily::PowerlawConfig: {
      const int k_max = powerlaw_k_max(spec);
      if (!(spec.powerlaw.exponent > 1.0)) fail("exponent must exceed 1");
      if (spec.powerlaw.k_min < 1) fail("k_min must be at least 1");
      if (k_max < spec.powerlaw.k_min) fail("k_max below k_min");
      if (static_cast<std::size_t>(k_max) >= spec.node_count) fail("k_max must be below node_count");
      break;
    }
    case GeneratorFamily::RingRewire:
      if (spec.ring.lattice_degree < 2 || spec.ring.lattice_degree % 2 != 0) fail("lattice degree must be even and >= 2");
      if (static_cast<std::size_t>(spec.ring.lattice_degree) >= spec.node_count) fail("lattice degree must be below n");
      if (!(spec.ring.rewire_probability >= 0.0 && spec.ring.rewire_probability <= 1.0))
        fail("rewiring probability must lie in [0, 1]");
      break;
  }
}

Graph generate(const GeneratorSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  switch (spec.family) {
    case GeneratorFamily::ErdosRenyi: return erdos_renyi(spec.node_count, spec.erdos_renyi.mean_degree, rng);
    case GeneratorFamily::PowerlawConfig: return powerlaw_config(spec, rng);
    case GeneratorFamily::RingRewire:
      return ring_rewire(spec.node_count, spec.ring.lattice_degree, spec.ring.rewire_probability, rng);
  }
  throw Error(ErrorCode::InvalidSpec, "unknown family");
}

DegreePmf truncated_powerlaw_pmf(double exponent, int k_min, int k_max) {
  if (!(exponent > 1.0) || k_min < 1 || k_max < k_min)
    throw Error(ErrorCode::InvalidSpec, "power law needs gamma > 1 and 1 <= k_min <= k_max");
  DegreePmf pmf = DegreePmf::Zero(k_max + 1);
  // Normalise relative to k_min so large exponents do not underflow.
  for (int k = k_min; k <= k_max; ++k) pmf[k] = std::pow(static_cast<double>(k) / k_min, -exponent);
  pmf /= pmf.sum();
  return pmf;
}

std::pair<double, double> truncated_powerlaw_moments(double exponent, int k_min, int k_max) {
  return pmf_moments(truncated_powerlaw_pmf(exponent, k_min, k_max));
}

const char* to_string(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::ErdosRenyi: return "erdos_renyi";
    case GeneratorFamily::PowerlawConfig: return "powerlaw_config";
    case GeneratorFamily::RingRewire: return "ring_rewire";
  }
  return "?";
}

GeneratorFamily parse_family(const std::string& name) {
  if (name == "er" || name == "erdos_renyi") return GeneratorFamily::ErdosRenyi;
  if (name == "powerlaw" || name == "powerlaw_config") return GeneratorFamily::PowerlawConfig;
  if (name == "ring" || name == "ring_rewire") return GeneratorFamily::RingRewire;
  throw Error(ErrorCode::InvalidSpec, "unknown generator family '" + name + "'");
}

}  // namespace lbsnet
