#pragma once

#include <cstdint>
#include <string>

#include "anchored/graph.hpp"
#include "anchored/isolation.hpp"

namespace testutil {

struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

// Random graph with dyadic weights in {1,2,4} and a random frontier;
// `ensure_frontier` attaches every connected component to a frontier vertex
// (the shape of an honest truncation of an infinite graph).
inline anchored::WeightedGraph random_graph(std::uint64_t seed, int n,
                                            bool ensure_frontier = false) {
  SplitMix rng(seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
  anchored::GraphBuilder b;
  std::vector<std::string> ids;
  for (int v = 0; v < n; ++v) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "v%02d", v);
    ids.emplace_back(buf);
    bool frontier = rng.uniform() < 0.2 && v > 0;  // v00 always interior
    b.add_vertex(ids.back(), frontier);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < 2.6 / n) {
        double w = double(1u << (rng.next() % 3));
        b.add_edge(ids[u], ids[v], w);
      }
  if (rng.uniform() < 0.3) {
    int v = static_cast<int>(rng.next() % n);
    b.add_edge(ids[v], ids[v], double(1u << (rng.next() % 3)));  // a self-loop
  }
  auto g = b.build();
  if (!ensure_frontier) return g;

  // link each component to a fresh frontier vertex
  anchored::GraphBuilder b2;
  for (anchored::Vertex v = 0; v < g.size(); ++v)
    b2.add_vertex(g.id(v), g.is_frontier(v));
  for (const auto& e : g.edges()) b2.add_edge(g.id(e.u), g.id(e.v), e.weight);
  b2.add_vertex("zfront", true);
  auto comps = anchored::connected_components(g, g.all_vertices());
  for (const auto& comp : comps) {
    bool touches = false;
    for (anchored::Vertex v : comp) touches = touches || g.is_frontier(v);
    if (!touches) b2.add_edge(g.id(comp.front()), "zfront", 1.0);
  }
  return b2.build();
}

}  // namespace testutil
