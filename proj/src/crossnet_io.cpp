#include "lbsnet/crossnet_io.hpp"

#include <charconv>
#include <istream>

#include "lbsnet/error.hpp"

namespace lbsnet {

namespace {

// Calls fn(fields, line_no) for every non-comment, non-blank line.
template <class Fn>
void for_each_record(std::istream& in, std::string_view origin, std::size_t expected_fields, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_tabs(view);
    if (fields.size() != expected_fields)
      throw Error(ErrorCode::Parse, std::string(origin) + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(expected_fields) + " tab-separated fields");
    fn(fields, line_no);
  }
  if (in.bad()) throw Error(ErrorCode::Io, std::string(origin) + ": read failure");
}

}  // namespace

MappingLoad read_mapping(std::istream& in, const NodeLabels& target_labels, const NodeLabels& source_labels,
                         std::string_view origin) {
  MappingLoad out{AccountMapping(target_labels.size()), 0};
  for_each_record(in, origin, 2, [&](const auto& f, std::size_t line_no) {
    const auto source = source_labels.find(f[1]);
    if (!source)
      throw Error(ErrorCode::DanglingMapping, std::string(origin) + ":" + std::to_string(line_no) +
                                                  ": unknown source node '" + std::string(f[1]) + "'");
    const auto target = target_labels.find(f[0]);
    if (!target) {
      ++out.unknown_target_ids;
      return;
    }
    try {
      out.mapping.link(*target, *source);
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

LogLoad read_interaction_log(std::istream& in, const NodeLabels& target_labels, std::string_view origin) {
  LogLoad out;
  for_each_record(in, origin, 4, [&](const auto& f, std::size_t line_no) {
    std::int64_t stamp = 0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(), stamp);
    if (ec != std::errc() || ptr != f[3].data() + f[3].size())
      throw Error(ErrorCode::Parse, std::string(origin) + ":" + std::to_string(line_no) + ": bad timestamp");
    const auto actor = target_labels.find(f[0]);
    const auto author = target_labels.find(f[1]);
    if (!actor || !author) {
      ++out.unknown_node_events;
      return;
    }
    out.log.events.push_back({*actor, *author, std::string(f[2]), stamp});
  });
  sort_by_time(out.log);
  return out;
}

std::vector<LabelSet> read_interests(std::istream& in, const NodeLabels& target_labels, std::string_view origin) {
  std::vector<LabelSet> out(target_labels.size());
  for_each_record(in, origin, 2, [&](const auto& f, std::size_t) {
    const auto node = target_labels.find(f[0]);
    if (!node) return;
    std::string_view rest = f[1];
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto label = rest.substr(0, comma);
      if (!label.empty()) out[*node].emplace(label);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  });
  return out;
}

std::vector<FriendRequest> read_friend_requests(std::istream& in, std::string_view origin) {
  std::vector<FriendRequest> out;
  for_each_record(in, origin, 3, [&](const auto& f, std::size_t) {
    out.push_back({std::string(f[0]), std::string(f[1]), parse_request_outcome(std::string(f[2]))});
  });
  return out;
}

LabeledGraph graph_from_friend_requests(const std::vector<FriendRequest>& requests) {
  LabeledGraph out;
  std::vector<Edge> arcs;
  for (const auto& r : requests) {
    const NodeId a = out.labels.intern(r.initiator);
    const NodeId b = out.labels.intern(r.responder);
    arcs.emplace_back(a, b);
    if (r.accepted) arcs.emplace_back(b, a);
  }
  auto built = build_graph(std::move(arcs), Directedness::Directed, out.labels.size());
  out.graph = std::move(built.graph);
  out.duplicates_dropped = built.duplicates_dropped;
  out.self_loops_dropped = built.self_loops_dropped;
  return out;
}

}  // namespace lbsnet
