#include "lbsnet/crossnet.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "lbsnet/error.hpp"

namespace lbsnet {

namespace {

using NodeList = std::vector<NodeId>;

template <class A, class B>
NodeList intersect(const A& a, const B& b) {
  NodeList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class A, class B>
NodeList unite(const A& a, const B& b) {
  NodeList out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class A, class B>
NodeList subtract(const A& a, const B& b) {
  NodeList out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Ratio ratio(std::size_t num, std::size_t den) { return {num, den}; }

void require_directed_target(const Graph& target) {
  if (!target.directed()) throw Error(ErrorCode::NotDirected, "target network must be directed (symmetrise it first)");
}

}  // namespace

void AccountMapping::link(NodeId target, NodeId source) {
  if (target >= source_of_.size()) source_of_.resize(target + 1);
  if (source_of_[target]) throw Error(ErrorCode::InvalidSpec, "target node mapped twice");
  if (!claimed_.emplace(source, target).second)
    throw Error(ErrorCode::InvalidSpec, "source node claimed by two target nodes");
  source_of_[target] = source;
}

bool NetworkPartition::is_copied(NodeId from, NodeId to) const {
  return std::binary_search(copied_links.begin(), copied_links.end(), Edge{from, to});
}

std::size_t NetworkPartition::connected_count() const {
  return static_cast<std::size_t>(std::count(connected.begin(), connected.end(), true));
}

NetworkPartition partition(const Graph& target, const Graph& source, const AccountMapping& mapping) {
  require_directed_target(target);
  if (source.directed()) throw Error(ErrorCode::NotUndirected, "source network must be undirected");
  const std::size_t n = target.node_count();

  constexpr NodeId absent = static_cast<NodeId>(-1);
  std::vector<NodeId> target_of(source.node_count(), absent);
  std::vector<NodeId> image(n, absent);
  NetworkPartition part;
  part.connected.assign(n, false);
  for (NodeId u = 0; u < mapping.target_nodes(); ++u) {
    const auto s = mapping.source_of(u);
    if (!s) continue;
    if (!source.contains(*s)) throw Error(ErrorCode::DanglingMapping, "mapping names unknown source node " + std::to_string(*s));
    if (u >= n) continue;  // target account without links
    part.connected[u] = true;
    image[u] = *s;
    target_of[*s] = u;
  }

  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : target.out_neighbors(u)) {
      const bool copied = image[u] != absent && image[v] != absent && source.has_edge(image[u], image[v]);
      (copied ? part.copied_links : part.native_links).emplace_back(u, v);
    }

  part.copiable_friends.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    if (image[u] == absent) continue;
    for (NodeId s : source.out_neighbors(image[u])) {
      const NodeId w = target_of[s];
      if (w == absent) continue;
      part.copiable_friends[u].push_back(w);
      if (image[u] < s) part.copiable_links.emplace_back(image[u], s);
    }
    std::sort(part.copiable_friends[u].begin(), part.copiable_friends[u].end());
  }
  std::sort(part.copiable_links.begin(), part.copiable_links.end());
  return part;
}

std::vector<NodeId> friend_set(const NetworkPartition& part, const Graph& target, NodeId node, FriendSet variant) {
  if (!target.contains(node)) throw Error(ErrorCode::NodeNotFound, "node " + std::to_string(node));
  if (variant == FriendSet::Copiable) return part.copiable_friends[node];
  NodeList out;
  for (NodeId v : unite(target.out_neighbors(node), target.in_neighbors(node)))
    if (part.is_copied(node, v) || part.is_copied(v, node)) out.push_back(v);
  return out;
}

CopyRatios copy_ratios(const NetworkPartition& part, const Graph& target, NodeId node, FriendSet variant) {
  const auto fr = friend_set(part, target, node, variant);
  const auto ind = target.in_neighbors(node);
  const auto out = target.out_neighbors(node);
  const auto all = unite(ind, out);
  return {ratio(intersect(all, fr).size(), all.size()), ratio(intersect(ind, fr).size(), ind.size()),
          ratio(intersect(out, fr).size(), out.size())};
}

UserCategory categorize(const Ratio& copy_ratio) {
  if (!copy_ratio.defined()) return UserCategory::Undefined;
  if (copy_ratio.num == 0) return UserCategory::Native;
  if (copy_ratio.num == copy_ratio.den) return UserCategory::Expat;
  return UserCategory::Binetworked;
}

const char* to_string(UserCategory category) {
  switch (category) {
    case UserCategory::Native: return "native";
    case UserCategory::Expat: return "expat";
    case UserCategory::Binetworked: return "binetworked";
    case UserCategory::Undefined: return "undefined";
  }
  return "?";
}

ReciprocityRatios reciprocity_ratios(const NetworkPartition& part, const Graph& target, NodeId node,
                                     FriendSet variant) {
  const auto fr = friend_set(part, target, node, variant);
  const auto ind = target.in_neighbors(node);
  const auto out = target.out_neighbors(node);
  const auto mutual = intersect(ind, out);
  const auto ind_native = subtract(ind, fr);
  const auto out_native = subtract(out, fr);
  return {ratio(intersect(fr, mutual).size(), intersect(fr, unite(ind, out)).size()),
          ratio(intersect(ind_native, out_native).size(), unite(ind_native, out_native).size())};
}

Ratio copied_fraction_of_reciprocated(const NetworkPartition& part, const Graph& target, NodeId node,
                                      FriendSet variant) {
  const auto fr = friend_set(part, target, node, variant);
  const auto mutual = intersect(target.in_neighbors(node), target.out_neighbors(node));
  return ratio(intersect(mutual, fr).size(), mutual.size());
}

void sort_by_time(InteractionLog& log) {
  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const InteractionEvent& a, const InteractionEvent& b) { return a.timestamp < b.timestamp; });
}

InteractionSubgraph interaction_subgraph(const Graph& target, const InteractionLog& log) {
  require_directed_target(target);
  InteractionSubgraph out;
  std::vector<Edge> arcs;
  for (const auto& e : log.events) {
    if (target.has_edge(e.actor, e.author)) {
      ++out.social_events;
      arcs.emplace_back(e.actor, e.author);
    } else {
      ++out.non_social_events;
    }
  }
  out.graph = target.node_count() == 0 ? empty_graph(Directedness::Directed)
                                       : build_graph(std::move(arcs), Directedness::Directed, target.node_count()).graph;
  return out;
}

std::vector<InteractionSampling> interaction_sampling_stats(const Graph& target, const NetworkPartition& part,
                                                            const Graph& interaction_net) {
  require_directed_target(target);
  const std::size_t n = target.node_count();
  std::vector<InteractionSampling> out(n);
  const auto target_cc = clustering_tallies(target);
  const auto interaction_cc = clustering_tallies(interaction_net);
  auto visit = [&](InteractionSampling& s, NodeId a, NodeId b) {
    const bool present = interaction_net.has_edge(a, b);
    Ratio& by_reciprocity = target.has_edge(b, a) ? s.reciprocated : s.unreciprocated;
    Ratio& by_origin = part.is_copied(a, b) ? s.copied : s.native;
    ++by_reciprocity.den;
    ++by_origin.den;
    if (present) {
      ++by_reciprocity.num;
      ++by_origin.num;
    }
  };
  for (NodeId u = 0; u < n; ++u) {
    auto& s = out[u];
    for (NodeId v : target.out_neighbors(u)) visit(s, u, v);
    for (NodeId v : target.in_neighbors(u)) visit(s, v, u);
    s.clustering_target = target_cc[u];
    s.clustering_interaction = u < interaction_cc.size() ? interaction_cc[u] : ClusteringTally{};
  }
  return out;
}

std::vector<SocialRatios> social_interaction_ratios(const Graph& target, const NetworkPartition& part,
                                                    const InteractionLog& log) {
  require_directed_target(target);
  std::vector<SocialRatios> out(target.node_count());
  for (const auto& e : log.events) {
    if (!target.contains(e.actor) || !target.contains(e.author))
      throw Error(ErrorCode::NodeNotFound, "interaction event names a node outside the target");
    auto& actor = out[e.actor];
    auto& author = out[e.author];
    ++actor.made[e.kind];
    ++author.received[e.kind];
    ++actor.social_activity.den;
    ++author.social_influence.den;
    if (!target.has_edge(e.actor, e.author)) continue;
    ++actor.social_activity.num;
    ++author.social_influence.num;
    ++actor.fb_activity.den;
    ++author.fb_influence.den;
    if (part.is_copied(e.actor, e.author)) {
      ++actor.fb_activity.num;
      ++author.fb_influence.num;
    }
  }
  return out;
}

Ratio jaccard_similarity(const LabelSet& a, const LabelSet& b) { return jaccard(a, b); }

const char* to_string(LinkClass c) {
  switch (c) {
    case LinkClass::Copied: return "copied";
    case LinkClass::Uncopied: return "uncopied";
    case LinkClass::Native: return "native";
  }
  return "?";
}

std::vector<PairMetrics> pair_metrics(const NetworkPartition& part, const Graph& target, const Graph& source,
                                      const AccountMapping& mapping, std::span<const LabelSet> interests) {
  require_directed_target(target);
  std::map<Edge, LinkClass> pairs;
  for (NodeId u = 0; u < target.node_count(); ++u)
    for (NodeId v : target.out_neighbors(u))
      pairs.emplace(Edge{std::min(u, v), std::max(u, v)}, part.is_copied(u, v) ? LinkClass::Copied : LinkClass::Native);
  for (NodeId u = 0; u < target.node_count(); ++u)
    for (NodeId v : part.copiable_friends[u])
      if (u < v && !target.has_edge(u, v) && !target.has_edge(v, u)) pairs.emplace(Edge{u, v}, LinkClass::Uncopied);

  static const LabelSet empty;
  auto labels = [&](NodeId v) -> const LabelSet& { return v < interests.size() ? interests[v] : empty; };
  std::vector<PairMetrics> out;
  out.reserve(pairs.size());
  for (const auto& [uv, cls] : pairs) {
    PairMetrics m;
    m.u = uv.first;
    m.v = uv.second;
    m.link_class = cls;
    m.similarity = jaccard_similarity(labels(m.u), labels(m.v));
    const auto su = mapping.source_of(m.u);
    const auto sv = mapping.source_of(m.v);
    if (su && sv) m.closeness = jaccard(source.out_neighbors(*su), source.out_neighbors(*sv));
    out.push_back(m);
  }
  return out;
}

namespace {

std::vector<double>& bucket(LinkClassValues& values, LinkClass c) {
  switch (c) {
    case LinkClass::Copied: return values.copied;
    case LinkClass::Uncopied: return values.uncopied;
    case LinkClass::Native: break;
  }
  return values.native;
}

}  // namespace

LinkClassValues similarity_by_link_class(const NetworkPartition& part, const Graph& target,
                                         std::span<const LabelSet> interests) {
  LinkClassValues out;
  const Graph no_source = empty_graph(Directedness::Undirected);
  for (const auto& m : pair_metrics(part, target, no_source, AccountMapping{}, interests))
    if (auto v = m.similarity.value()) bucket(out, m.link_class).push_back(*v);
  return out;
}

LinkClassValues closeness_by_link_class(const NetworkPartition& part, const Graph& target, const Graph& source,
                                        const AccountMapping& mapping) {
  LinkClassValues out;
  for (const auto& m : pair_metrics(part, target, source, mapping, {}))
    if (m.link_class != LinkClass::Native)
      if (auto v = m.closeness.value()) bucket(out, m.link_class).push_back(*v);
  return out;
}

std::vector<FofNativeFollow> fof_native_follow_stats(const NetworkPartition& part, const Graph& target) {
  require_directed_target(target);
  std::vector<FofNativeFollow> out(target.node_count());
  for (NodeId u = 0; u < target.node_count(); ++u) {
    NodeList copied_friends;
    for (NodeId c : target.out_neighbors(u))
      if (part.is_copied(u, c)) copied_friends.push_back(c);
    out[u].copied_friend_count = copied_friends.size();
    for (NodeId v : target.in_neighbors(u)) {
      if (part.is_copied(v, u)) continue;
      const bool fof = std::any_of(copied_friends.begin(), copied_friends.end(),
                                   [&](NodeId c) { return target.has_edge(v, c) || target.has_edge(c, v); });
      if (fof) ++out[u].native_fof_follower_count;
    }
  }
  return out;
}

CopiedSubnetwork copied_network(const NetworkPartition& part, const Graph& target) {
  require_directed_target(target);
  CopiedSubnetwork out;
  constexpr NodeId absent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(target.node_count(), absent);
  for (NodeId u = 0; u < target.node_count(); ++u)
    if (part.connected[u]) {
      local[u] = static_cast<NodeId>(out.nodes.size());
      out.nodes.push_back(u);
    }
  if (out.nodes.empty()) {
    out.graph = empty_graph(Directedness::Directed);
    return out;
  }
  std::vector<Edge> arcs;
  arcs.reserve(part.copied_links.size());
  for (auto [u, v] : part.copied_links) arcs.emplace_back(local[u], local[v]);
  out.graph = build_graph(std::move(arcs), Directedness::Directed, out.nodes.size()).graph;
  return out;
}

Graph native_network(const NetworkPartition& part, const Graph& target) {
  require_directed_target(target);
  if (target.node_count() == 0) return empty_graph(Directedness::Directed);
  return build_graph(part.native_links, Directedness::Directed, target.node_count()).graph;
}

std::vector<UserMetrics> user_metrics(const Graph& target, const NetworkPartition& part, const InteractionLog& log,
                                      FriendSet variant) {
  const auto copied = copied_network(part, target);
  const auto copied_cc = clustering_tallies(copied.graph);
  const auto native_cc = clustering_tallies(native_network(part, target));
  const auto interaction = interaction_subgraph(target, log);
  auto sampling = interaction_sampling_stats(target, part, interaction.graph);
  auto social = social_interaction_ratios(target, part, log);
  const auto fof = fof_native_follow_stats(part, target);
  std::vector<UserMetrics> out(target.node_count());
  for (NodeId u = 0; u < target.node_count(); ++u) {
    auto& m = out[u];
    m.connected = part.connected[u];
    m.clustering_native_net = native_cc[u];
    m.copy = copy_ratios(part, target, u, variant);
    m.category = categorize(m.copy.all);
    m.reciprocity = reciprocity_ratios(part, target, u, variant);
    m.copied_fraction_of_reciprocated = copied_fraction_of_reciprocated(part, target, u, variant);
    m.interaction = sampling[u];
    m.social = std::move(social[u]);
    m.fof = fof[u];
  }
  for (std::size_t i = 0; i < copied.nodes.size(); ++i) out[copied.nodes[i]].clustering_copied_net = copied_cc[i];
  return out;
}

bool parse_request_outcome(const std::string& outcome) {
  std::string s;
  for (char c : outcome) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return s == "accepted" || s == "accept" || s == "yes" || s == "true" || s == "1";
}

}  // namespace lbsnet
