#pragma once

#include "anchored/graph.hpp"

// Shared small fixtures used across the test suites.
namespace fixtures {

using anchored::WeightedGraph;

// Triangle a-b-c with a tail c-d; d is the frontier.
inline WeightedGraph kite() {
  return anchored::build_graph(
      {{"a", "b", 1}, {"b", "c", 1}, {"c", "a", 1}, {"c", "d", 1}}, {"d"});
}

// 4-cycle with unit weights, no frontier.
inline WeightedGraph c4() {
  return anchored::build_graph(
      {{"v0", "v1", 1}, {"v1", "v2", 1}, {"v2", "v3", 1}, {"v3", "v0", 1}});
}

// Depth-2 binary tree (root r, children x1/x2, four depth-2 frontier leaves)
// with a unit triangle {a,b,c} attached to x1 by the edge x1-a.
inline WeightedGraph trap() {
  return anchored::build_graph(
      {
          {"r", "x1", 1},
          {"r", "x2", 1},
          {"x1", "f11", 1},
          {"x1", "f12", 1},
          {"x2", "f21", 1},
          {"x2", "f22", 1},
          {"x1", "a", 1},
          {"a", "b", 1},
          {"b", "c", 1},
          {"c", "a", 1},
      },
      {"f11", "f12", "f21", "f22"});
}

// Depth-3 binary tree, the eight depth-3 vertices marked frontier.
inline WeightedGraph tree3() {
  anchored::GraphBuilder b;
  // ids chosen so lexicographic order matches level order: n, nl, nr, ...
  b.add_edge("n", "nl", 1);
  b.add_edge("n", "nr", 1);
  b.add_edge("nl", "nll", 1);
  b.add_edge("nl", "nlr", 1);
  b.add_edge("nr", "nrl", 1);
  b.add_edge("nr", "nrr", 1);
  for (const char* mid : {"nll", "nlr", "nrl", "nrr"}) {
    std::string m(mid);
    b.add_edge(m, m + "l", 1);
    b.add_edge(m, m + "r", 1);
    b.add_vertex(m + "l", true);
    b.add_vertex(m + "r", true);
  }
  return b.build();
}

}  // namespace fixtures
