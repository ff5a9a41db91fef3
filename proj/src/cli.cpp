#include "lbsnet/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lbsnet/crossnet.hpp"
#include "lbsnet/crossnet_io.hpp"
#include "lbsnet/csv.hpp"
#include "lbsnet/edge_list.hpp"
#include "lbsnet/error.hpp"
#include "lbsnet/generators.hpp"
#include "lbsnet/measures.hpp"
#include "lbsnet/sampler.hpp"
#include "lbsnet/series.hpp"
#include "lbsnet/theory.hpp"

namespace lbsnet {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

json real(double x) { return std::isnan(x) ? json(nullptr) : json(x); }
json real(std::optional<double> x) { return x ? real(*x) : json(nullptr); }

std::string ratio_cell(const Ratio& r) { return r.defined() ? format_real(*r.value()) : "nan"; }
std::string tally_cell(const ClusteringTally& t) { return t.pairs ? format_real(*t.value()) : "nan"; }

/// Files produced by one run. JSON outputs embed the run metadata; every
/// other file gets a `<name>.meta.json` sidecar. On failure everything is
/// removed again.
class OutputSet {
 public:
  OutputSet(fs::path dir, json metadata) : dir_(std::move(dir)), metadata_(std::move(metadata)) {}

  void text(const std::string& name, const std::string& body) {
    put(name, body);
    put(name + ".meta.json", metadata_.dump(2) + "\n");
  }

  void document(const std::string& name, json body) {
    json doc;
    doc["metadata"] = metadata_;
    for (auto& [k, v] : body.items()) doc[k] = std::move(v);
    put(name, doc.dump(2) + "\n");
  }

  void discard() {
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
    written_.clear();
  }

  const std::vector<fs::path>& written() const { return written_; }

 private:
  void put(const std::string& name, const std::string& body) {
    fs::create_directories(dir_);
    const auto path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  }

  fs::path dir_;
  json metadata_;
  std::vector<fs::path> written_;
};

struct Common {
  std::string out_dir;
  std::uint64_t seed = 1;
  std::vector<std::string> formats{"csv", "json"};

  bool csv() const { return std::find(formats.begin(), formats.end(), "csv") != formats.end(); }
  bool json_out() const { return std::find(formats.begin(), formats.end(), "json") != formats.end(); }
};

void add_common(CLI::App* sub, Common& common) {
  const char* env = std::getenv("LBSNET_OUT_DIR");
  common.out_dir = env && *env ? env : ".";
  sub->add_option("-o,--out-dir", common.out_dir, "output directory (default $LBSNET_OUT_DIR or .)")
      ->capture_default_str();
  sub->add_option("--seed", common.seed, "root random seed")->capture_default_str();
  sub->add_option("--format", common.formats, "output formats: csv, json")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

json echo_options(const CLI::App& sub) {
  json cfg;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h,--help" || name == "-o,--out-dir") continue;
    const auto key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      cfg[key] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      cfg[key] = opt->get_default_str();
    } else if (opt->get_type_size() == 0) {
      cfg[key] = false;
    }
  }
  return cfg;
}

json metadata_for(const CLI::App& sub, const Common& common) {
  json m;
  m["tool"] = "lbsnet";
  m["version"] = kVersion;
  m["subcommand"] = sub.get_name();
  m["seed"] = common.seed;
  m["config"] = echo_options(sub);
  return m;
}

Directedness directedness(bool directed) { return directed ? Directedness::Directed : Directedness::Undirected; }

json degree_summary(const Graph& g) {
  const auto s = degree_stats(g);
  json j;
  j["node_count"] = g.node_count();
  j["edge_count"] = g.edge_count();
  j["directed"] = g.directed();
  j["mean_k"] = s.mean_k;
  j["mean_k2"] = s.mean_k2;
  j["mean_jk"] = s.mean_jk;
  return j;
}

std::string pmf_csv(const DegreePmf& pmf) {
  std::ostringstream out;
  out << "degree,probability\n";
  for (Eigen::Index k = 0; k < pmf.size(); ++k) out << k << ',' << format_real(pmf[k]) << '\n';
  return out.str();
}

DegreePmf read_pmf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#' || line.rfind("degree", 0) == 0) continue;
    const auto comma = line.find(',');
    double k = 0.0, p = 0.0;
    if (comma == std::string::npos || !parse_real(std::string_view(line).substr(0, comma), k) ||
        !parse_real(std::string_view(line).substr(comma + 1), p) || k < 0 || k != std::floor(k))
      throw Error(ErrorCode::Parse, path + ":" + std::to_string(line_no) + ": expected 'degree,probability'");
    const auto idx = static_cast<std::size_t>(k);
    if (values.size() <= idx) values.resize(idx + 1, 0.0);
    values[idx] += p;
  }
  if (values.empty()) throw Error(ErrorCode::Parse, path + ": no pmf rows");
  return Eigen::Map<DegreePmf>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string family = "er";
  std::size_t n = 1000;
  double mean_degree = 10.0;
  double gamma = 2.5;
  int k_min = 2;
  int k_max = 0;
  int k = 10;
  double beta = 0.0;
  std::string prefix = "graph";
};

void run_generate(const CLI::App& sub, const Common& common, const GenerateArgs& a, OutputSet& out) {
  GeneratorSpec spec;
  spec.family = parse_family(a.family);
  spec.node_count = a.n;
  spec.erdos_renyi.mean_degree = a.mean_degree;
  spec.powerlaw.exponent = a.gamma;
  spec.powerlaw.k_min = a.k_min;
  if (a.k_max > 0) spec.powerlaw.k_max = a.k_max;
  spec.ring.lattice_degree = a.k;
  spec.ring.rewire_probability = a.beta;
  spec.seed = common.seed;
  const Graph g = generate(spec);

  std::ostringstream tsv;
  write_edge_list(tsv, g, NodeLabels::identity(g.node_count()));
  out.text(a.prefix + ".tsv", tsv.str());

  json spec_json;
  spec_json["family"] = to_string(spec.family);
  spec_json["node_count"] = spec.node_count;
  spec_json["seed"] = spec.seed;
  switch (spec.family) {
    case GeneratorFamily::ErdosRenyi: spec_json["mean_degree"] = a.mean_degree; break;
    case GeneratorFamily::PowerlawConfig:
      spec_json["exponent"] = a.gamma;
      spec_json["k_min"] = a.k_min;
      spec_json["k_max"] = powerlaw_k_max(spec);
      break;
    case GeneratorFamily::RingRewire:
      spec_json["lattice_degree"] = a.k;
      spec_json["rewire_probability"] = a.beta;
      break;
  }
  json summary = degree_summary(g);
  summary["gcc_fraction"] = connected_components(g, ComponentKind::Undirected).gcc_fraction_of_nodes;
  try {
    summary["clustering_mean_local"] = global_clustering(g, ClusteringMode::MeanLocal);
    summary["clustering_transitivity"] = global_clustering(g, ClusteringMode::Transitivity);
  } catch (const Error&) {
    summary["clustering_mean_local"] = nullptr;
    summary["clustering_transitivity"] = nullptr;
  }
  (void)sub;
  out.document(a.prefix + ".json", json{{"spec", spec_json}, {"summary", summary}});
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string source;
  double p1 = 1.0;
  double p2 = 1.0;
  std::size_t replicas = 1;
  bool degree_weighted = false;
};

json measurement_json(const ReplicaMeasurement& m) {
  return json{{"replica", m.replica},
              {"sampled_nodes", m.sampled_nodes},
              {"copied_edges", m.copied_edges},
              {"gcc_weak_frac", real(m.gcc_weak_frac)},
              {"gcc_strong_frac", real(m.gcc_strong_frac)},
              {"reciprocity", real(m.reciprocity)},
              {"clustering_mean_local", real(m.clustering_mean_local)},
              {"clustering_transitivity", real(m.clustering_transitivity)},
              {"mean_k", real(m.mean_k)},
              {"mean_k2", real(m.mean_k2)}};
}

void run_sample(const Common& common, const SampleArgs& a, OutputSet& out) {
  const auto source = read_edge_list(a.source, Directedness::Undirected);
  json replicas = json::array();
  for (std::size_t r = 0; r < a.replicas; ++r) {
    const auto seed = replica_seed(common.seed, r);
    const auto net = a.degree_weighted ? lbs_sample_degree_weighted(source.graph, a.p1, a.p2, seed, a.source)
                                       : lbs_sample(source.graph, {a.p1, a.p2, seed}, a.source);
    auto m = measure_copied(net);
    m.p1 = a.p1;
    m.p2 = a.p2;
    m.replica = r;
    if (common.csv()) {
      std::ostringstream edges, nodes;
      for (const auto& [u, v] : net.copied_graph.edges())
        edges << source.labels.name(net.sampled_nodes[u]) << '\t' << source.labels.name(net.sampled_nodes[v]) << '\n';
      for (NodeId v : net.sampled_nodes) nodes << source.labels.name(v) << '\n';
      out.text("copied_r" + std::to_string(r) + ".tsv", edges.str());
      out.text("sampled_r" + std::to_string(r) + ".txt", nodes.str());
    }
    auto mj = measurement_json(m);
    mj["seed"] = seed;
    replicas.push_back(mj);
  }
  out.document("sample_summary.json",
               json{{"p1", a.p1},
                    {"p2", a.p2},
                    {"p_e", a.p1 * a.p2},
                    {"node_sampling", a.degree_weighted ? "degree_weighted" : "uniform"},
                    {"source", degree_summary(source.graph)},
                    {"replicas", replicas}});
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string source;
  std::vector<double> p1{1.0};
  std::vector<double> p2;
  std::size_t replicas = 1;
  std::size_t threads = 0;
};

json stat_json(const CellSummary::Stat& s) {
  return json{{"mean", real(s.mean)}, {"stderr", real(s.std_error)}, {"count", s.count}};
}

void run_sweep(const Common& common, const SweepArgs& a, OutputSet& out) {
  const auto source = read_edge_list(a.source, Directedness::Undirected);
  SweepOptions options{a.p1, a.p2, a.replicas, common.seed, a.threads};
  const auto report = lbs_sweep(source.graph, options);
  std::ostringstream csv;
  write_sweep_csv(csv, report);
  out.text("sweep.csv", csv.str());
  json cells = json::array();
  for (const auto& c : report.cells)
    cells.push_back(json{{"p1", c.p1},
                         {"p2", c.p2},
                         {"p_e", c.p1 * c.p2},
                         {"replicas", c.replicas},
                         {"gcc_weak_frac", stat_json(c.gcc_weak_frac)},
                         {"gcc_strong_frac", stat_json(c.gcc_strong_frac)},
                         {"reciprocity", stat_json(c.reciprocity)},
                         {"clustering_mean_local", stat_json(c.clustering_mean_local)},
                         {"clustering_transitivity", stat_json(c.clustering_transitivity)},
                         {"mean_k", stat_json(c.mean_k)},
                         {"mean_k2", stat_json(c.mean_k2)}});
  out.document("sweep_summary.json", json{{"source", degree_summary(source.graph)}, {"cells", cells}});
}

// ---------------------------------------------------------------- theory / compare

struct SourceArgs {
  std::string source;
  std::string pmf;
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  double mean_jk = 0.0;
  double clustering = -1.0;
  std::size_t n = 0;
};

void add_source_options(CLI::App* sub, SourceArgs& s) {
  sub->add_option("--source", s.source, "source edge list (undirected)");
  sub->add_option("--pmf", s.pmf, "source degree pmf CSV (degree,probability)");
  sub->add_option("--mean-k", s.mean_k, "source <k>");
  sub->add_option("--mean-k2", s.mean_k2, "source <k^2>");
  sub->add_option("--mean-jk", s.mean_jk, "source <jk> (defaults to <k^2>)");
  sub->add_option("--clustering", s.clustering, "source clustering coefficient");
  sub->add_option("--n", s.n, "source node count");
}

SourceSummary load_source_summary(const SourceArgs& s) {
  SourceSummary out;
  if (!s.source.empty()) {
    const auto g = read_edge_list(s.source, Directedness::Undirected);
    out = summarize_source(g.graph);
  } else if (!s.pmf.empty()) {
    const auto pmf = read_pmf_csv(s.pmf);
    const auto [m1, m2] = pmf_moments(pmf);
    out.mean_k = m1;
    out.mean_k2 = m2;
    out.mean_jk = m2;
    out.degree_pmf = pmf;
  } else if (s.mean_k > 0.0) {
    out.mean_k = s.mean_k;
    out.mean_k2 = s.mean_k2;
    out.mean_jk = s.mean_k2;
  } else {
    throw Error(ErrorCode::InvalidSpec, "give --source, --pmf, or --mean-k/--mean-k2");
  }
  if (s.mean_jk > 0.0) out.mean_jk = s.mean_jk;
  if (s.clustering >= 0.0) out.clustering = s.clustering;
  if (s.n > 0) out.node_count = s.n;
  return out;
}

json theory_json(const TheoryReport& r) {
  json j;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["p_e"] = r.p_e;
  j["gcc_threshold"] = json{{"value", r.threshold.raw},
                            {"achievable", r.threshold.achievable()},
                            {"value_from_mean_jk", r.threshold_jk.raw}};
  j["gcc_predicted"] = r.gcc_predicted;
  j["moments"] = json{{"mean_k", r.moments.mean_k}, {"mean_k2", r.moments.mean_k2}};
  j["reciprocity"] = r.reciprocity;
  j["clustering"] = json{{"copied_from_source", real(r.copied_clustering)},
                         {"source_uncorrelated", r.clustering_source_uncorrelated.raw},
                         {"copied_uncorrelated", r.clustering_copied_uncorrelated.raw},
                         {"copied_uncorrelated_clamped", r.clustering_copied_uncorrelated.clamped()},
                         {"note", "copied_uncorrelated uses n = p1 * N"}};
  if (r.degree_pmf) {
    std::vector<double> pmf(r.degree_pmf->pmf.data(), r.degree_pmf->pmf.data() + r.degree_pmf->pmf.size());
    j["degree_pmf"] = json{{"pmf", pmf}, {"truncation_remainder", r.degree_pmf->remainder}};
  }
  return j;
}

struct TheoryArgs {
  SourceArgs source;
  double p1 = 1.0;
  double p2 = 1.0;
  int k_max_out = -1;
};

void run_theory(const TheoryArgs& a, OutputSet& out) {
  const auto summary = load_source_summary(a.source);
  const auto report = predict_all(summary, a.p1, a.p2, a.k_max_out);
  json src{{"node_count", summary.node_count},
           {"mean_k", summary.mean_k},
           {"mean_k2", summary.mean_k2},
           {"mean_jk", summary.mean_jk},
           {"clustering", real(summary.clustering)}};
  out.document("theory.json", json{{"source", src}, {"predictions", theory_json(report)}});
  if (report.degree_pmf) out.text("theory_degree_pmf.csv", pmf_csv(report.degree_pmf->pmf));
}

struct CompareArgs {
  SourceArgs source;
  std::string sweep;
  double gcc_cutoff = 0.05;
};

void run_compare(const CompareArgs& a, OutputSet& out) {
  const auto summary = load_source_summary(a.source);
  std::ifstream in(a.sweep);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + a.sweep);
  const auto rows = read_sweep_csv(in);
  std::ostringstream csv;
  csv << "p1,p2,p_e,replica,gcc_predicted,gcc_weak_frac,weak_has_gcc,weak_matches,gcc_strong_frac,strong_has_gcc,"
         "strong_matches,reciprocity,predicted_reciprocity,dev_reciprocity,mean_k,predicted_mean_k,dev_mean_k,"
         "mean_k2,predicted_mean_k2,dev_mean_k2,clustering_mean_local,predicted_clustering,dev_clustering\n";
  std::size_t weak_matches = 0, strong_matches = 0;
  for (const auto& r : rows) {
    const double pe = r.p1 * r.p2;
    const bool predicted = gcc_predicate(summary.mean_k, summary.mean_jk, pe);
    const bool weak = r.gcc_weak_frac >= a.gcc_cutoff;
    const bool strong = r.gcc_strong_frac >= a.gcc_cutoff;
    weak_matches += weak == predicted;
    strong_matches += strong == predicted;
    const auto m = predict_moments(summary.mean_k, summary.mean_k2, pe);
    const double pc = summary.clustering ? predict_copied_clustering(r.p2, *summary.clustering) : std::nan("");
    csv << format_real(r.p1) << ',' << format_real(r.p2) << ',' << format_real(pe) << ',' << r.replica << ','
        << predicted << ',' << format_real(r.gcc_weak_frac) << ',' << weak << ',' << (weak == predicted) << ','
        << format_real(r.gcc_strong_frac) << ',' << strong << ',' << (strong == predicted) << ','
        << format_real(r.reciprocity) << ',' << format_real(r.p2) << ',' << format_real(r.reciprocity - r.p2) << ','
        << format_real(r.mean_k) << ',' << format_real(m.mean_k) << ',' << format_real(r.mean_k - m.mean_k) << ','
        << format_real(r.mean_k2) << ',' << format_real(m.mean_k2) << ',' << format_real(r.mean_k2 - m.mean_k2)
        << ',' << format_real(r.clustering_mean_local) << ',' << format_real(pc) << ','
        << format_real(r.clustering_mean_local - pc) << '\n';
  }
  out.text("compare.csv", csv.str());
  const double total = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  const double weak_rate = static_cast<double>(weak_matches) / total;
  const double strong_rate = static_cast<double>(strong_matches) / total;
  out.document("compare_summary.json",
               json{{"rows", rows.size()},
                    {"gcc_threshold", gcc_threshold(summary.mean_k, summary.mean_jk).raw},
                    {"gcc_cutoff", a.gcc_cutoff},
                    {"weak_match_rate", weak_rate},
                    {"strong_match_rate", strong_rate},
                    {"better_matching_component", weak_rate == strong_rate ? "tie"
                                                  : weak_rate > strong_rate ? "weak"
                                                                            : "strong"}});
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string input;
  bool directed = false;
};

void run_metrics(const MetricsArgs& a, OutputSet& out) {
  const auto lg = read_edge_list(a.input, directedness(a.directed));
  const Graph& g = lg.graph;
  json j = degree_summary(g);
  j["duplicates_dropped"] = lg.duplicates_dropped;
  j["self_loops_dropped"] = lg.self_loops_dropped;
  if (g.directed() && g.edge_count() > 0) j["reciprocity"] = reciprocity(g);
  try {
    j["clustering_mean_local"] = global_clustering(g, ClusteringMode::MeanLocal);
    j["clustering_transitivity"] = global_clustering(g, ClusteringMode::Transitivity);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoTriples) throw;
    j["clustering_mean_local"] = nullptr;
    j["clustering_transitivity"] = nullptr;
  }
  auto components = [&](ComponentKind kind) {
    const auto r = connected_components(g, kind);
    return json{{"count", r.component_sizes.size()}, {"gcc_size", r.gcc_size}, {"gcc_fraction", r.gcc_fraction_of_nodes}};
  };
  j["components"][g.directed() ? "weak" : "undirected"] =
      components(g.directed() ? ComponentKind::Weak : ComponentKind::Undirected);
  if (g.directed()) j["components"]["strong"] = components(ComponentKind::Strong);
  out.document("metrics.json", j);
  const auto stats = degree_stats(g);
  out.text("degree_pmf.csv", pmf_csv(stats.out_pmf));
  if (g.directed()) out.text("in_degree_pmf.csv", pmf_csv(stats.in_pmf));
}

// ---------------------------------------------------------------- crossnet

struct CrossnetArgs {
  std::string target;
  std::string friend_requests;
  bool undirected_target = false;
  std::string source;
  std::string mapping;
  std::string log;
  std::string interests;
  std::string friend_set = "copiable";
  std::string bin_scale = "log";
  std::size_t bins = 10;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return in;
}

std::string cdf_csv(std::vector<double> values) {
  std::ostringstream out;
  out << "value,cumulative_fraction\n";
  for (const auto& p : empirical_cdf(std::move(values)))
    out << format_real(p.value) << ',' << format_real(p.cumulative_fraction) << '\n';
  return out.str();
}

std::string binned_csv(const std::vector<BinRow>& rows) {
  std::ostringstream out;
  out << "bin_center,mean_y,stderr,count\n";
  for (const auto& r : rows)
    out << format_real(r.bin_center) << ',' << format_real(r.mean_y) << ',' << format_real(r.std_error) << ','
        << r.count << '\n';
  return out.str();
}

double ratio_or_nan(const Ratio& r) { return r.value().value_or(std::nan("")); }

void run_crossnet(const CrossnetArgs& a, OutputSet& out) {
  LabeledGraph target;
  if (!a.friend_requests.empty()) {
    auto in = open_input(a.friend_requests);
    target = graph_from_friend_requests(read_friend_requests(in, a.friend_requests));
  } else if (!a.target.empty()) {
    target = read_edge_list(a.target, directedness(!a.undirected_target));
    if (a.undirected_target) target.graph = symmetrized(target.graph);
  } else {
    throw Error(ErrorCode::InvalidSpec, "give --target or --friend-requests");
  }
  const auto source = read_edge_list(a.source, Directedness::Undirected);
  auto mapping_in = open_input(a.mapping);
  const auto mapping = read_mapping(mapping_in, target.labels, source.labels, a.mapping);
  LogLoad log;
  if (!a.log.empty()) {
    auto in = open_input(a.log);
    log = read_interaction_log(in, target.labels, a.log);
  }
  std::vector<LabelSet> interests(target.labels.size());
  if (!a.interests.empty()) {
    auto in = open_input(a.interests);
    interests = read_interests(in, target.labels, a.interests);
  }
  const FriendSet variant = a.friend_set == "copied" ? FriendSet::Copied : FriendSet::Copiable;

  const Graph& g = target.graph;
  const auto part = partition(g, source.graph, mapping.mapping);
  const auto users = user_metrics(g, part, log.log, variant);
  const auto pairs = pair_metrics(part, g, source.graph, mapping.mapping, interests);
  const auto interaction = interaction_subgraph(g, log.log);

  std::set<std::string> kinds;
  for (const auto& e : log.log.events) kinds.insert(e.kind);

  std::ostringstream users_csv;
  users_csv << "node,connected,category,cr,cr_ind,cr_out,r_copied,r_native,copied_frac_reciprocated,"
               "clustering_copied_net,clustering_native_net,clustering_target,clustering_interaction,"
               "interaction_frac_reciprocated,interaction_frac_unreciprocated,interaction_frac_copied,"
               "interaction_frac_native,social_ratio_activity,social_ratio_influence,fb_ratio_activity,"
               "fb_ratio_influence,events_made,events_received,copied_friend_count,native_fof_follower_count";
  for (const auto& k : kinds) users_csv << ",made_" << k << ",received_" << k;
  users_csv << '\n';
  std::vector<double> activity, influence, cr, cr_out, social_act, fb_inf, fof_x, fof_y;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto& m = users[u];
    const auto made = m.social.social_activity.den;
    const auto received = m.social.social_influence.den;
    users_csv << target.labels.name(u) << ',' << m.connected << ',' << to_string(m.category) << ','
              << ratio_cell(m.copy.all) << ',' << ratio_cell(m.copy.ind) << ',' << ratio_cell(m.copy.out) << ','
              << ratio_cell(m.reciprocity.copied) << ',' << ratio_cell(m.reciprocity.native) << ','
              << ratio_cell(m.copied_fraction_of_reciprocated) << ',' << tally_cell(m.clustering_copied_net) << ','
              << tally_cell(m.clustering_native_net) << ',' << tally_cell(m.interaction.clustering_target) << ','
              << tally_cell(m.interaction.clustering_interaction) << ',' << ratio_cell(m.interaction.reciprocated)
              << ',' << ratio_cell(m.interaction.unreciprocated) << ',' << ratio_cell(m.interaction.copied) << ','
              << ratio_cell(m.interaction.native) << ',' << ratio_cell(m.social.social_activity) << ','
              << ratio_cell(m.social.social_influence) << ',' << ratio_cell(m.social.fb_activity) << ','
              << ratio_cell(m.social.fb_influence) << ',' << made << ',' << received << ','
              << m.fof.copied_friend_count << ',' << m.fof.native_fof_follower_count;
    for (const auto& k : kinds) {
      auto count = [&](const std::map<std::string, std::uint64_t>& c) {
        auto it = c.find(k);
        return it == c.end() ? std::uint64_t{0} : it->second;
      };
      users_csv << ',' << count(m.social.made) << ',' << count(m.social.received);
    }
    users_csv << '\n';
    if (m.connected) {
      activity.push_back(static_cast<double>(made));
      influence.push_back(static_cast<double>(received));
      cr.push_back(ratio_or_nan(m.copy.all));
      cr_out.push_back(ratio_or_nan(m.copy.out));
      social_act.push_back(ratio_or_nan(m.social.social_activity));
      fb_inf.push_back(ratio_or_nan(m.social.fb_influence));
      fof_x.push_back(static_cast<double>(m.fof.copied_friend_count));
      fof_y.push_back(static_cast<double>(m.fof.native_fof_follower_count));
    }
  }
  out.text("user_metrics.csv", users_csv.str());

  std::ostringstream pairs_csv;
  pairs_csv << "u,v,link_class,similarity,closeness\n";
  for (const auto& p : pairs)
    pairs_csv << target.labels.name(p.u) << ',' << target.labels.name(p.v) << ',' << to_string(p.link_class) << ','
              << ratio_cell(p.similarity) << ',' << ratio_cell(p.closeness) << '\n';
  out.text("pair_metrics.csv", pairs_csv.str());

  // CDFs over connected users, as plotted for the per-user comparisons.
  auto per_user = [&](auto&& field) {
    std::vector<double> v;
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (users[u].connected) v.push_back(field(users[u]));
    return v;
  };
  auto tally_nan = [](const ClusteringTally& t) { return t.value().value_or(std::nan("")); };
  out.text("cdf_copy_ratio.csv", cdf_csv(per_user([](const UserMetrics& m) { return ratio_or_nan(m.copy.all); })));
  out.text("cdf_r_copied.csv", cdf_csv(per_user([](const UserMetrics& m) { return ratio_or_nan(m.reciprocity.copied); })));
  out.text("cdf_r_native.csv", cdf_csv(per_user([](const UserMetrics& m) { return ratio_or_nan(m.reciprocity.native); })));
  out.text("cdf_copied_frac_reciprocated.csv",
           cdf_csv(per_user([](const UserMetrics& m) { return ratio_or_nan(m.copied_fraction_of_reciprocated); })));
  out.text("cdf_clustering_copied_net.csv",
           cdf_csv(per_user([&](const UserMetrics& m) { return tally_nan(m.clustering_copied_net); })));
  out.text("cdf_clustering_native_net.csv",
           cdf_csv(per_user([&](const UserMetrics& m) { return tally_nan(m.clustering_native_net); })));
  LinkClassValues similarity, closeness;
  for (const auto& p : pairs) {
    auto push = [&](LinkClassValues& dst, const Ratio& r) {
      if (!r.defined()) return;
      auto& bucket = p.link_class == LinkClass::Copied     ? dst.copied
                     : p.link_class == LinkClass::Uncopied ? dst.uncopied
                                                           : dst.native;
      bucket.push_back(*r.value());
    };
    push(similarity, p.similarity);
    if (p.link_class != LinkClass::Native) push(closeness, p.closeness);
  }
  out.text("cdf_similarity_copied.csv", cdf_csv(similarity.copied));
  out.text("cdf_similarity_uncopied.csv", cdf_csv(similarity.uncopied));
  out.text("cdf_similarity_native.csv", cdf_csv(similarity.native));
  out.text("cdf_closeness_copied.csv", cdf_csv(closeness.copied));
  out.text("cdf_closeness_uncopied.csv", cdf_csv(closeness.uncopied));

  BinSpec spec;
  spec.bins = a.bins;
  spec.scale = a.bin_scale == "linear" ? BinScale::Linear : BinScale::Log;
  auto binned = [&](const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (spec.scale == BinScale::Linear || x[i] > 0.0) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
      }
    out.text(name, binned_csv(binned_series(xs, ys, spec)));
  };
  binned("binned_cr_out_by_activity.csv", activity, cr_out);
  binned("binned_cr_by_influence.csv", influence, cr);
  binned("binned_social_ratio_by_activity.csv", activity, social_act);
  binned("binned_fb_ratio_by_influence.csv", influence, fb_inf);
  binned("binned_native_fof_by_copied_friends.csv", fof_x, fof_y);

  const auto copied = copied_network(part, g);
  json components = nullptr;
  if (copied.graph.node_count() > 0) {
    const auto r = connected_components(copied.graph, ComponentKind::Weak);
    std::map<std::size_t, std::size_t> histogram;
    for (auto s : r.component_sizes) ++histogram[s];
    std::ostringstream comp_csv;
    comp_csv << "component_size,count\n";
    for (auto it = histogram.rbegin(); it != histogram.rend(); ++it) comp_csv << it->first << ',' << it->second << '\n';
    out.text("copied_components.csv", comp_csv.str());
    components = json{{"count", r.component_sizes.size()},
                      {"gcc_size", r.gcc_size},
                      {"gcc_fraction_of_connected", r.gcc_fraction_of_nodes},
                      {"gcc_fraction_of_target", static_cast<double>(r.gcc_size) / static_cast<double>(g.node_count())}};
  }
  std::map<std::string, std::size_t> categories;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (users[u].connected) ++categories[to_string(users[u].category)];
  std::size_t uncopied = 0;
  for (const auto& p : pairs) uncopied += p.link_class == LinkClass::Uncopied;
  out.document("crossnet_summary.json",
               json{{"target", degree_summary(g)},
                    {"connected_nodes", part.connected_count()},
                    {"links", {{"copied", part.copied_links.size()},
                               {"native", part.native_links.size()},
                               {"copiable", part.copiable_links.size()},
                               {"uncopied_copiable_pairs", uncopied}}},
                    {"user_categories", categories},
                    {"copied_network_components", components},
                    {"interactions", {{"events", log.log.events.size()},
                                      {"social_events", interaction.social_events},
                                      {"non_social_events", interaction.non_social_events},
                                      {"unknown_node_events", log.unknown_node_events},
                                      {"interaction_links", interaction.graph.edge_count()}}},
                    {"mapping", {{"pairs", mapping.mapping.size()}, {"unknown_target_ids", mapping.unknown_target_ids}}},
                    {"friend_set", a.friend_set}});
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::DanglingMapping:
    case ErrorCode::EmptyGraph: return kExitParse;
    case ErrorCode::InvalidSpec:
    case ErrorCode::BadProbability: return kExitUsage;
    default: return kExitRuntime;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"lbsnet: link bootstrapping sampling simulator and cross-network analytics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  std::function<void(OutputSet&)> action;
  CLI::App* chosen = nullptr;
  auto bind = [&](CLI::App* sub, std::function<void(OutputSet&)> fn) {
    add_common(sub, common);
    sub->callback([&, sub, fn] {
      chosen = sub;
      action = fn;
    });
  };

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "generate a synthetic undirected source network");
  generate_cmd->add_option("--family", gen.family, "er | powerlaw | ring")->capture_default_str();
  generate_cmd->add_option("--n", gen.n, "node count")->capture_default_str();
  generate_cmd->add_option("--mean-degree", gen.mean_degree, "er: mean degree")->capture_default_str();
  generate_cmd->add_option("--gamma", gen.gamma, "powerlaw: exponent")->capture_default_str();
  generate_cmd->add_option("--k-min", gen.k_min, "powerlaw: minimum degree")->capture_default_str();
  generate_cmd->add_option("--k-max", gen.k_max, "powerlaw: degree cutoff (0: sqrt(n k_min))")->capture_default_str();
  generate_cmd->add_option("--k", gen.k, "ring: lattice degree (even)")->capture_default_str();
  generate_cmd->add_option("--beta", gen.beta, "ring: rewiring probability")->capture_default_str();
  generate_cmd->add_option("--prefix", gen.prefix, "output file prefix")->capture_default_str();
  bind(generate_cmd, [&](OutputSet& out) { run_generate(*generate_cmd, common, gen, out); });

  SampleArgs smp;
  auto* sample_cmd = app.add_subcommand("sample", "draw LBS copied networks from a source edge list");
  sample_cmd->add_option("--source", smp.source, "source edge list")->required();
  sample_cmd->add_option("--p1", smp.p1, "node sampling rate (base rate with --degree-weighted)")->capture_default_str();
  sample_cmd->add_option("--p2", smp.p2, "link sampling rate")->capture_default_str();
  sample_cmd->add_option("--replicas", smp.replicas, "number of replicas")->capture_default_str()->check(CLI::PositiveNumber);
  sample_cmd->add_flag("--degree-weighted", smp.degree_weighted, "node inclusion min(1, p1 deg / <k>)");
  bind(sample_cmd, [&](OutputSet& out) { run_sample(common, smp, out); });

  SweepArgs swp;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep LBS over a (p1, p2) grid");
  sweep_cmd->add_option("--source", swp.source, "source edge list")->required();
  sweep_cmd->add_option("--p1", swp.p1, "node sampling rates")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--p2", swp.p2, "link sampling rates")->delimiter(',')->required();
  sweep_cmd->add_option("--replicas", swp.replicas, "replicas per cell")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", swp.threads, "worker threads (0: all cores)")->capture_default_str();
  bind(sweep_cmd, [&](OutputSet& out) { run_sweep(common, swp, out); });

  TheoryArgs thy;
  auto* theory_cmd = app.add_subcommand("theory", "closed-form predictions for a source and (p1, p2)");
  add_source_options(theory_cmd, thy.source);
  theory_cmd->add_option("--p1", thy.p1, "node sampling rate")->capture_default_str();
  theory_cmd->add_option("--p2", thy.p2, "link sampling rate")->capture_default_str();
  theory_cmd->add_option("--k-max-out", thy.k_max_out, "truncate the thinned pmf (-1: full support)")->capture_default_str();
  bind(theory_cmd, [&](OutputSet& out) { run_theory(thy, out); });

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "join a sweep CSV with predictions");
  add_source_options(compare_cmd, cmp.source);
  compare_cmd->add_option("--sweep", cmp.sweep, "sweep.csv from the sweep subcommand")->required();
  compare_cmd->add_option("--gcc-cutoff", cmp.gcc_cutoff, "GCC fraction counted as a giant component")->capture_default_str();
  bind(compare_cmd, [&](OutputSet& out) { run_compare(cmp, out); });

  MetricsArgs met;
  auto* metrics_cmd = app.add_subcommand("metrics", "structural metrics of one edge list");
  metrics_cmd->add_option("--input", met.input, "edge list")->required();
  metrics_cmd->add_flag("--directed", met.directed, "read edges as directed");
  bind(metrics_cmd, [&](OutputSet& out) { run_metrics(met, out); });

  CrossnetArgs xn;
  auto* crossnet_cmd = app.add_subcommand("crossnet", "copied-versus-native analytics of a target network");
  crossnet_cmd->add_option("--target", xn.target, "target edge list (directed unless --undirected-target)");
  crossnet_cmd->add_option("--friend-requests", xn.friend_requests, "initiator/responder/outcome TSV instead of --target");
  crossnet_cmd->add_flag("--undirected-target", xn.undirected_target, "target edge list is undirected");
  crossnet_cmd->add_option("--source", xn.source, "source edge list (undirected)")->required();
  crossnet_cmd->add_option("--mapping", xn.mapping, "target_id/source_id TSV")->required();
  crossnet_cmd->add_option("--log", xn.log, "interaction log TSV");
  crossnet_cmd->add_option("--interests", xn.interests, "interest labels TSV");
  crossnet_cmd->add_option("--friend-set", xn.friend_set, "copiable | copied")
      ->check(CLI::IsMember({"copiable", "copied"}))
      ->capture_default_str();
  crossnet_cmd->add_option("--bin-scale", xn.bin_scale, "log | linear")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  crossnet_cmd->add_option("--bins", xn.bins, "bins per binned series")->capture_default_str()->check(CLI::PositiveNumber);
  bind(crossnet_cmd, [&](OutputSet& out) { run_crossnet(xn, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!action || !chosen) return kExitUsage;

  OutputSet out(common.out_dir, metadata_for(*chosen, common));
  try {
    action(out);
  } catch (const Error& e) {
    out.discard();
    std::cerr << "lbsnet " << chosen->get_name() << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    out.discard();
    std::cerr << "lbsnet " << chosen->get_name() << ": " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace lbsnet
