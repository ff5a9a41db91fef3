#include "lbsnet/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "lbsnet/csv.hpp"
#include "lbsnet/edge_list.hpp"
#include "lbsnet/error.hpp"
#include "lbsnet/measures.hpp"
#include "lbsnet/random.hpp"

namespace lbsnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, std::string(name) + " must lie in [0, 1]");
}

void require_undirected(const Graph& source) {
  if (source.directed()) throw Error(ErrorCode::NotUndirected, "LBS copies from an undirected source");
}

CopiedNetwork sample_with(const Graph& source, const std::vector<double>& inclusion, double p2, std::uint64_t seed,
                          std::string source_ref) {
  const std::size_t n = source.node_count();
  Rng rng(seed);
  constexpr NodeId absent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(n, absent);
  CopiedNetwork net;
  net.source_ref = std::move(source_ref);
  for (NodeId v = 0; v < n; ++v) {
    if (rng.uniform() < inclusion[v]) {
      local[v] = static_cast<NodeId>(net.sampled_nodes.size());
      net.sampled_nodes.push_back(v);
    }
  }
  std::vector<Edge> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : source.out_neighbors(u)) {
      if (v <= u) continue;
      const double forward = rng.uniform();
      const double backward = rng.uniform();
      if (local[u] == absent || local[v] == absent) continue;
      if (forward < p2) arcs.emplace_back(local[u], local[v]);
      if (backward < p2) arcs.emplace_back(local[v], local[u]);
    }
  if (!net.sampled_nodes.empty())
    net.copied_graph = build_graph(std::move(arcs), Directedness::Directed, net.sampled_nodes.size()).graph;
  else
    net.copied_graph = empty_graph(Directedness::Directed);
  return net;
}

}  // namespace

void validate(const LbsParams& params) {
  check_probability(params.p1, "p1");
  check_probability(params.p2, "p2");
}

CopiedNetwork lbs_sample(const Graph& source, const LbsParams& params, std::string source_ref) {
  require_undirected(source);
  validate(params);
  const std::vector<double> inclusion(source.node_count(), params.p1);
  return sample_with(source, inclusion, params.p2, params.seed, std::move(source_ref));
}

std::vector<double> degree_weighted_inclusion(const Graph& source, double base_p1) {
  require_undirected(source);
  check_probability(base_p1, "base_p1");
  const std::size_t n = source.node_count();
  std::vector<double> inclusion(n, 0.0);
  if (source.edge_count() == 0) return inclusion;
  const double mean_k = 2.0 * static_cast<double>(source.edge_count()) / static_cast<double>(n);
  for (NodeId v = 0; v < n; ++v)
    inclusion[v] = std::min(1.0, base_p1 * static_cast<double>(source.out_degree(v)) / mean_k);
  return inclusion;
}

CopiedNetwork lbs_sample_degree_weighted(const Graph& source, double base_p1, double p2, std::uint64_t seed,
                                         std::string source_ref) {
  check_probability(p2, "p2");
  return sample_with(source, degree_weighted_inclusion(source, base_p1), p2, seed, std::move(source_ref));
}

ReplicaMeasurement measure_copied(const CopiedNetwork& net) {
  ReplicaMeasurement m;
  const Graph& g = net.copied_graph;
  m.sampled_nodes = net.sampled_nodes.size();
  m.copied_edges = g.edge_count();
  if (g.node_count() == 0) {
    m.gcc_weak_frac = m.gcc_strong_frac = m.reciprocity = kNaN;
    m.clustering_mean_local = m.clustering_transitivity = m.mean_k = m.mean_k2 = kNaN;
    return m;
  }
  m.gcc_weak_frac = connected_components(g, ComponentKind::Weak).gcc_fraction_of_nodes;
  m.gcc_strong_frac = connected_components(g, ComponentKind::Strong).gcc_fraction_of_nodes;
  m.reciprocity = g.edge_count() > 0 ? reciprocity(g) : kNaN;
  try {
    m.clustering_mean_local = global_clustering(g, ClusteringMode::MeanLocal);
    m.clustering_transitivity = global_clustering(g, ClusteringMode::Transitivity);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoTriples) throw;
    m.clustering_mean_local = m.clustering_transitivity = kNaN;
  }
  const auto stats = degree_stats(g);
  m.mean_k = stats.mean_k;
  m.mean_k2 = stats.mean_k2;
  return m;
}

std::uint64_t replica_seed(std::uint64_t seed, std::size_t replica) { return derive_seed(seed, {replica}); }

CellSummary::Stat summarize(const std::vector<double>& values) {
  CellSummary::Stat s;
  double sum = 0.0;
  for (double v : values)
    if (!std::isnan(v)) {
      sum += v;
      ++s.count;
    }
  if (s.count == 0) {
    s.mean = s.std_error = kNaN;
    return s;
  }
  s.mean = sum / static_cast<double>(s.count);
  if (s.count < 2) return s;
  double ss = 0.0;
  for (double v : values)
    if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
  return s;
}

SweepReport lbs_sweep(const Graph& source, const SweepOptions& options) {
  require_undirected(source);
  if (options.p1_grid.empty() || options.p2_grid.empty())
    throw Error(ErrorCode::InvalidSpec, "sweep grids must be non-empty");
  if (options.replicas < 1) throw Error(ErrorCode::InvalidSpec, "replicas must be at least 1");
  for (double p : options.p1_grid) check_probability(p, "p1");
  for (double p : options.p2_grid) check_probability(p, "p2");

  SweepReport report;
  report.seed = options.seed;
  const std::size_t cells = options.p1_grid.size() * options.p2_grid.size();
  report.rows.resize(cells * options.replicas);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t task; (task = next.fetch_add(1)) < report.rows.size();) {
      const std::size_t cell = task / options.replicas;
      const std::size_t replica = task % options.replicas;
      const LbsParams params{options.p1_grid[cell / options.p2_grid.size()],
                             options.p2_grid[cell % options.p2_grid.size()], replica_seed(options.seed, replica)};
      auto m = measure_copied(lbs_sample(source, params));
      m.p1 = params.p1;
      m.p2 = params.p2;
      m.replica = replica;
      report.rows[task] = m;
    }
  };
  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, report.rows.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t cell = 0; cell < cells; ++cell) {
    CellSummary c;
    c.p1 = options.p1_grid[cell / options.p2_grid.size()];
    c.p2 = options.p2_grid[cell % options.p2_grid.size()];
    c.replicas = options.replicas;
    auto collect = [&](double ReplicaMeasurement::*field) {
      std::vector<double> v;
      for (std::size_t r = 0; r < options.replicas; ++r) v.push_back(report.rows[cell * options.replicas + r].*field);
      return summarize(v);
    };
    c.gcc_weak_frac = collect(&ReplicaMeasurement::gcc_weak_frac);
    c.gcc_strong_frac = collect(&ReplicaMeasurement::gcc_strong_frac);
    c.reciprocity = collect(&ReplicaMeasurement::reciprocity);
    c.clustering_mean_local = collect(&ReplicaMeasurement::clustering_mean_local);
    c.clustering_transitivity = collect(&ReplicaMeasurement::clustering_transitivity);
    c.mean_k = collect(&ReplicaMeasurement::mean_k);
    c.mean_k2 = collect(&ReplicaMeasurement::mean_k2);
    report.cells.push_back(c);
  }
  return report;
}

namespace {
constexpr const char* kSweepHeader =
    "p1,p2,p_e,replica,gcc_weak_frac,gcc_strong_frac,reciprocity,clustering_mean_local,"
    "clustering_transitivity,mean_k,mean_k2";
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << kSweepHeader << '\n';
  for (const auto& r : report.rows) {
    out << format_real(r.p1) << ',' << format_real(r.p2) << ',' << format_real(r.p1 * r.p2) << ',' << r.replica << ','
        << format_real(r.gcc_weak_frac) << ',' << format_real(r.gcc_strong_frac) << ',' << format_real(r.reciprocity)
        << ',' << format_real(r.clustering_mean_local) << ',' << format_real(r.clustering_transitivity) << ','
        << format_real(r.mean_k) << ',' << format_real(r.mean_k2) << '\n';
  }
}

std::vector<ReplicaMeasurement> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> column;
  std::vector<ReplicaMeasurement> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string field; std::getline(ss, field, ',');) out.push_back(field);
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
      for (const char* needed : {"p1", "p2", "replica", "gcc_weak_frac", "gcc_strong_frac", "reciprocity",
                                 "clustering_mean_local", "clustering_transitivity", "mean_k", "mean_k2"})
        if (!column.count(needed))
          throw Error(ErrorCode::Parse, "sweep csv: missing column '" + std::string(needed) + "'");
      continue;
    }
    auto get = [&](const char* name) {
      const std::size_t idx = column.at(name);
      double v = 0.0;
      if (idx >= fields.size() || !parse_real(fields[idx], v))
        throw Error(ErrorCode::Parse, "sweep csv:" + std::to_string(line_no) + ": bad value in column " + name);
      return v;
    };
    ReplicaMeasurement r;
    r.p1 = get("p1");
    r.p2 = get("p2");
    r.replica = static_cast<std::size_t>(get("replica"));
    r.gcc_weak_frac = get("gcc_weak_frac");
    r.gcc_strong_frac = get("gcc_strong_frac");
    r.reciprocity = get("reciprocity");
    r.clustering_mean_local = get("clustering_mean_local");
    r.clustering_transitivity = get("clustering_transitivity");
    r.mean_k = get("mean_k");
    r.mean_k2 = get("mean_k2");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lbsnet
