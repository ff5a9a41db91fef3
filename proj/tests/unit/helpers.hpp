#pragma once

#include <initializer_list>
#include <vector>

#include "lbsnet/graph.hpp"

namespace test {

inline lbsnet::Graph directed(std::initializer_list<lbsnet::Edge> edges, std::size_t n = 0) {
  return lbsnet::build_graph(std::vector<lbsnet::Edge>(edges), lbsnet::Directedness::Directed, n).graph;
}

inline lbsnet::Graph undirected(std::initializer_list<lbsnet::Edge> edges, std::size_t n = 0) {
  return lbsnet::build_graph(std::vector<lbsnet::Edge>(edges), lbsnet::Directedness::Undirected, n).graph;
}

inline lbsnet::Graph triangle() { return undirected({{0, 1}, {1, 2}, {0, 2}}); }

// a=0, b=1, c=2, d=3
inline lbsnet::Graph paw() { return undirected({{0, 1}, {0, 2}, {1, 2}, {2, 3}}); }

inline lbsnet::Graph star(std::size_t leaves) {
  std::vector<lbsnet::Edge> e;
  for (lbsnet::NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return lbsnet::build_graph(std::move(e), lbsnet::Directedness::Undirected).graph;
}

}  // namespace test
