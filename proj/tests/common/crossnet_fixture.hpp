#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lbsnet/crossnet.hpp"
#include "lbsnet/crossnet_io.hpp"
#include "lbsnet/edge_list.hpp"

namespace fixture {

struct Crossnet {
  lbsnet::LabeledGraph target;
  lbsnet::LabeledGraph source;
  lbsnet::MappingLoad mapping;
  lbsnet::LogLoad log;
  std::vector<lbsnet::LabelSet> interests;
};

inline std::ifstream open(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("missing fixture file " + p.string());
  return in;
}

inline Crossnet load_crossnet(const std::filesystem::path& dir) {
  using namespace lbsnet;
  Crossnet c;
  c.target = read_edge_list(dir / "target.tsv", Directedness::Directed);
  c.source = read_edge_list(dir / "source.tsv", Directedness::Undirected);
  auto m = open(dir / "mapping.tsv");
  c.mapping = read_mapping(m, c.target.labels, c.source.labels);
  auto l = open(dir / "interactions.tsv");
  c.log = read_interaction_log(l, c.target.labels);
  auto i = open(dir / "interests.tsv");
  c.interests = read_interests(i, c.target.labels);
  return c;
}

/// Rows of a CSV as column name -> cell.
inline std::vector<std::map<std::string, std::string>> read_csv(const std::filesystem::path& p) {
  auto in = open(p);
  std::vector<std::map<std::string, std::string>> rows;
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  if (std::getline(in, line)) header = split(line);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

/// "n/d" or "undefined" from the exact oracle CSV.
inline lbsnet::Ratio parse_ratio(const std::string& s) {
  if (s == "undefined") return {};
  const auto slash = s.find('/');
  return {std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
}

}  // namespace fixture
