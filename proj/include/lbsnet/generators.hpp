#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "lbsnet/graph.hpp"
#include "lbsnet/measures.hpp"

namespace lbsnet {

enum class GeneratorFamily { ErdosRenyi, PowerlawConfig, RingRewire };

struct ErdosRenyiParams {
  double mean_degree = 0.0;
};

struct PowerlawParams {
  double exponent = 2.5;
  int k_min = 1;
  /// Defaults to floor(sqrt(n * k_min)) (the structural cutoff).
  std::optional<int> k_max;
};

struct RingRewireParams {
  int lattice_degree = 4;  // even
  double rewire_probability = 0.0;
};

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::ErdosRenyi;
  std::size_t node_count = 0;
  ErdosRenyiParams erdos_renyi;
  PowerlawParams powerlaw;
  RingRewireParams ring;
  std::uint64_t seed = 1;
};

/// Throws Error(InvalidSpec) when the family's parameter constraints fail.
void validate(const GeneratorSpec& spec);

/// Pure function of spec (including seed): same input, same graph.
///   erdos_renyi     G(n, p) with p = mean_degree / (n - 1), geometric edge skipping.
///   powerlaw_config i.i.d. degrees from c k^-gamma on [k_min, k_max], parity fixed
///                   by redrawing one node's degree, uniform stub matching, then
///                   self-loops and multi-edges erased.
///   ring_rewire     ring lattice of even degree k, each lattice edge's far end
///                   rewired with probability beta (no self-loops or duplicates).
Graph generate(const GeneratorSpec& spec);

/// Effective k_max for a powerlaw spec.
int powerlaw_k_max(const GeneratorSpec& spec);

/// Normalised truncated power law c k^-gamma as a pmf indexed by degree.
DegreePmf truncated_powerlaw_pmf(double exponent, int k_min, int k_max);

/// Exact (<k>, <k^2>) of the truncated law by direct summation.
std::pair<double, double> truncated_powerlaw_moments(double exponent, int k_min, int k_max);

const char* to_string(GeneratorFamily family);
GeneratorFamily parse_family(const std::string& name);

}  // namespace lbsnet
