#pragma once

#include <vector>

#include "anchored/graph.hpp"
#include "anchored/isolation.hpp"

namespace anchored {

// First-exit kernel of one island: for each island vertex, the distribution
// of the first vertex of V \ A_i hit by the walk started there. Columns run
// over the island's outer vertex boundary; frontier members of the boundary
// are absorbing columns like any other (the induced walk is killed when it
// steps onto them, not here).
struct IslandExitMatrix {
  VertexSet island;          // row order
  VertexSet outer;           // column order
  std::vector<double> dist;  // row-major |island| x |outer|, rows sum to 1

  double at(int row, int col) const { return dist[row * outer.size() + col]; }
};

IslandExitMatrix island_exit_matrix(const WeightedGraph& g, const VertexSet& island);

// G_i: the graph of the chain watched at ocean visits. Vertex set V \ A_i
// with frontier marks preserved; edge weights w_i((u,v)) = w(u) P_u(X_{N_1}=v)
// (original weights plus island-mediated mass, self-loops included).
struct InducedGraph {
  const WeightedGraph* base = nullptr;
  double i = 0.0;
  WeightedGraph graph;
  double max_symmetry_error = 0.0;  // worst relative asymmetry seen during assembly
};

InducedGraph build_induced_graph(const WeightedGraph& g, const IslandDecomposition& dec);

// Exhaustive check that every nonempty frontier-avoiding subset S of the
// ocean satisfies |dS|^{G_i} >= i |S|^{G_i} (slack 1e-9).
bool induced_cheeger_check(const InducedGraph& ind, double i, int enumeration_cap = 20);

}  // namespace anchored
