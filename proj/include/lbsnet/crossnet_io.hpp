#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lbsnet/crossnet.hpp"
#include "lbsnet/edge_list.hpp"

namespace lbsnet {

struct MappingLoad {
  AccountMapping mapping;
  std::size_t unknown_target_ids = 0;  // target accounts without any link; skipped
};

/// `target_id<TAB>source_id` lines. Source ids must exist in `source_labels`
/// (Error(DanglingMapping) otherwise).
MappingLoad read_mapping(std::istream& in, const NodeLabels& target_labels, const NodeLabels& source_labels,
                         std::string_view origin = "<mapping>");

struct LogLoad {
  InteractionLog log;
  std::size_t unknown_node_events = 0;  // events naming users absent from the target; skipped
};

/// `actor<TAB>author<TAB>kind<TAB>unix_timestamp` lines, sorted by time on return.
LogLoad read_interaction_log(std::istream& in, const NodeLabels& target_labels, std::string_view origin = "<log>");

/// `node<TAB>label,label,...` lines, indexed by target node.
std::vector<LabelSet> read_interests(std::istream& in, const NodeLabels& target_labels,
                                     std::string_view origin = "<interests>");

/// `initiator<TAB>responder<TAB>outcome` lines.
std::vector<FriendRequest> read_friend_requests(std::istream& in, std::string_view origin = "<requests>");

/// Directed target from friend requests: initiator -> responder for every
/// request, plus responder -> initiator when it was accepted.
LabeledGraph graph_from_friend_requests(const std::vector<FriendRequest>& requests);

}  // namespace lbsnet
