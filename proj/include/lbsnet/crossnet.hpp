#pragma once

#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lbsnet/graph.hpp"
#include "lbsnet/measures.hpp"
#include "lbsnet/ratio.hpp"

namespace lbsnet {

/// Injective association target node -> source node. Unmapped target nodes
/// are unconnected.
class AccountMapping {
 public:
  AccountMapping() = default;
  explicit AccountMapping(std::size_t target_nodes) : source_of_(target_nodes) {}

  /// Throws Error(InvalidSpec) if the target is already mapped or the source
  /// is already claimed by another target node.
  void link(NodeId target, NodeId source);

  std::optional<NodeId> source_of(NodeId target) const {
    return target < source_of_.size() ? source_of_[target] : std::nullopt;
  }
  std::size_t target_nodes() const { return source_of_.size(); }
  std::size_t size() const { return claimed_.size(); }

 private:
  std::vector<std::optional<NodeId>> source_of_;
  std::map<NodeId, NodeId> claimed_;  // source -> target
};

/// Target links split into copied and native, plus the copiable pool.
///
/// A target link u->v is copied iff both endpoints are connected and their
/// images are adjacent in the source; every other link is native. Links that
/// merely coincide with a source friendship are therefore counted as copied.
struct NetworkPartition {
  std::vector<bool> connected;      // per target node
  std::vector<Edge> copied_links;   // directed target edges, sorted
  std::vector<Edge> native_links;   // directed target edges, sorted
  std::vector<Edge> copiable_links;  // source edges (u < v) between images of connected nodes
  /// Per target node: connected target nodes whose images are source neighbours.
  std::vector<std::vector<NodeId>> copiable_friends;

  bool is_copied(NodeId from, NodeId to) const;
  std::size_t connected_count() const;
};

/// Target is read as directed (undirected targets are symmetrised first).
/// Throws Error(DanglingMapping) when the mapping names a node the source lacks.
NetworkPartition partition(const Graph& target, const Graph& source, const AccountMapping& mapping);

/// Which set plays the role of a user's source-network friends `fr`.
/// Copiable: connected target nodes adjacent in the source. Copied: target
/// neighbours reached over a copied link. Both give identical ratios because
/// every formula intersects fr with the user's target neighbours.
enum class FriendSet { Copiable, Copied };

std::vector<NodeId> friend_set(const NetworkPartition& part, const Graph& target, NodeId node,
                               FriendSet variant = FriendSet::Copiable);

struct CopyRatios {
  Ratio all;  // |all & fr| / |all|, all = in | out
  Ratio ind;
  Ratio out;
};

CopyRatios copy_ratios(const NetworkPartition& part, const Graph& target, NodeId node,
                       FriendSet variant = FriendSet::Copiable);

enum class UserCategory { Native, Expat, Binetworked, Undefined };
UserCategory categorize(const Ratio& copy_ratio);
const char* to_string(UserCategory category);

struct ReciprocityRatios {
  Ratio copied;  // |fr & ind & out| / |fr & (ind | out)|
  Ratio native;  // |(ind - fr) & (out - fr)| / |(ind - fr) | (out - fr)|
};

ReciprocityRatios reciprocity_ratios(const NetworkPartition& part, const Graph& target, NodeId node,
                                     FriendSet variant = FriendSet::Copiable);

/// |fr & ind & out| / |ind & out|.
Ratio copied_fraction_of_reciprocated(const NetworkPartition& part, const Graph& target, NodeId node,
                                      FriendSet variant = FriendSet::Copiable);

struct InteractionEvent {
  NodeId actor = 0;
  NodeId author = 0;
  std::string kind;
  std::int64_t timestamp = 0;
};

struct InteractionLog {
  std::vector<InteractionEvent> events;  // sorted by timestamp (stable)
};

/// Sorts events by timestamp, keeping input order among equal stamps.
void sort_by_time(InteractionLog& log);

struct InteractionSubgraph {
  Graph graph;  // directed, over the target's nodes
  std::size_t social_events = 0;
  std::size_t non_social_events = 0;  // actor does not follow author
};

/// Follow links actor->author carrying at least one event.
InteractionSubgraph interaction_subgraph(const Graph& target, const InteractionLog& log);

/// How the interaction network samples one user's incident directed links
/// (both followings and followers).
struct InteractionSampling {
  Ratio reciprocated;
  Ratio unreciprocated;
  Ratio copied;
  Ratio native;
  ClusteringTally clustering_target;
  ClusteringTally clustering_interaction;
};

std::vector<InteractionSampling> interaction_sampling_stats(const Graph& target, const NetworkPartition& part,
                                                            const Graph& interaction_net);

struct SocialRatios {
  Ratio social_activity;   // social events made / events made
  Ratio social_influence;  // social events received / events received
  Ratio fb_activity;       // social events made over copied links / social events made
  Ratio fb_influence;
  std::map<std::string, std::uint64_t> made;  // per event kind
  std::map<std::string, std::uint64_t> received;
};

std::vector<SocialRatios> social_interaction_ratios(const Graph& target, const NetworkPartition& part,
                                                    const InteractionLog& log);

/// Jaccard index of two sorted, duplicate-free ranges; Undefined if both empty.
template <class Range>
Ratio jaccard(const Range& a, const Range& b) {
  std::uint64_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::uint64_t size_a = static_cast<std::uint64_t>(std::distance(a.begin(), a.end()));
  const std::uint64_t size_b = static_cast<std::uint64_t>(std::distance(b.begin(), b.end()));
  return {common, size_a + size_b - common};
}

using LabelSet = std::set<std::string>;

Ratio jaccard_similarity(const LabelSet& a, const LabelSet& b);

enum class LinkClass { Copied, Uncopied, Native };
const char* to_string(LinkClass c);

/// One unordered pair of target users joined by a link of the given class.
/// Uncopied pairs are copiable source friendships with no target link.
struct PairMetrics {
  NodeId u = 0;
  NodeId v = 0;  // u < v
  LinkClass link_class = LinkClass::Native;
  Ratio similarity;  // interests
  Ratio closeness;   // source friend lists; Undefined unless both endpoints are connected
};

/// All copied, uncopied-copiable and native pairs with their similarity and
/// closeness. `interests` is indexed by target node (missing entries count as
/// empty sets); `source` and `mapping` supply the friend lists for closeness.
std::vector<PairMetrics> pair_metrics(const NetworkPartition& part, const Graph& target, const Graph& source,
                                      const AccountMapping& mapping, std::span<const LabelSet> interests);

struct LinkClassValues {
  std::vector<double> copied;
  std::vector<double> uncopied;
  std::vector<double> native;
};

/// Defined similarity values grouped by link class (CDF-ready).
LinkClassValues similarity_by_link_class(const NetworkPartition& part, const Graph& target,
                                         std::span<const LabelSet> interests);

/// Defined closeness values of copied and uncopied pairs.
LinkClassValues closeness_by_link_class(const NetworkPartition& part, const Graph& target, const Graph& source,
                                        const AccountMapping& mapping);

struct FofNativeFollow {
  std::uint64_t copied_friend_count = 0;         // copied out-neighbours
  std::uint64_t native_fof_follower_count = 0;  // native followers adjacent to one of them
};

std::vector<FofNativeFollow> fof_native_follow_stats(const NetworkPartition& part, const Graph& target);

/// Copied network: connected nodes and copied links, relabelled to
/// 0..connected_count-1 in target id order (`nodes` maps back).
struct CopiedSubnetwork {
  std::vector<NodeId> nodes;
  Graph graph;
};
CopiedSubnetwork copied_network(const NetworkPartition& part, const Graph& target);

/// Native links over the full target node set (nodes without native links stay isolated).
Graph native_network(const NetworkPartition& part, const Graph& target);

/// Everything tracked per target user.
struct UserMetrics {
  bool connected = false;
  ClusteringTally clustering_copied_net;  // zero pairs for unconnected users
  ClusteringTally clustering_native_net;
  CopyRatios copy;
  UserCategory category = UserCategory::Undefined;
  ReciprocityRatios reciprocity;
  Ratio copied_fraction_of_reciprocated;
  InteractionSampling interaction;
  SocialRatios social;
  FofNativeFollow fof;
};

std::vector<UserMetrics> user_metrics(const Graph& target, const NetworkPartition& part, const InteractionLog& log,
                                      FriendSet variant = FriendSet::Copiable);

struct FriendRequest {
  std::string initiator;
  std::string responder;
  bool accepted = false;
};

/// True for "accepted", "accept", "yes", "true", "1" (case-insensitive).
bool parse_request_outcome(const std::string& outcome);

}  // namespace lbsnet
