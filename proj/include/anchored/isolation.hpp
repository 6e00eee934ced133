#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anchored/graph.hpp"

namespace anchored {

// i-isolation of S: Delta_i(S) = i|S| - |dS|. S must avoid the frontier;
// edges into the frontier count fully in |dS|.
double isolation(const WeightedGraph& g, double i, const VertexSet& s);

// True iff Delta_i(S) strictly exceeds Delta_i(A) for every proper subset A
// of S (including the empty set). The empty set itself is not a core.
bool is_isolated_core_bruteforce(const WeightedGraph& g, double i, const VertexSet& s,
                                 int enumeration_cap = 20);

struct IslandDecomposition {
  const WeightedGraph* graph = nullptr;
  double i = 0.0;
  VertexSet a_i;                    // union of all i-isolated cores
  std::vector<VertexSet> islands;   // connected components of a_i
  VertexSet ocean;                  // non-frontier vertices not in a_i
  double a_i_volume = 0.0;
  double delta_i = 0.0;             // Delta_i(a_i)
  std::vector<char> in_a_i;         // indexed by vertex
  std::vector<int> island_of;       // island index or -1

  bool on_land(Vertex v) const { return in_a_i[v] != 0; }
};

// A_i as the inclusion-minimal maximizer of Delta_i over frontier-avoiding
// sets, computed by one max-flow: source arcs i*w(v) to each interior vertex,
// graph edges as symmetric arcs, frontier contracted into the sink; the
// minimal min-cut source side is read off residual reachability.
IslandDecomposition compute_A_i(const WeightedGraph& g, double i);

// Same construction with i in [0,1] admitted (used by the Dinkelbach loop,
// where the iterate can reach the boundary values).
IslandDecomposition compute_A_i_unchecked(const WeightedGraph& g, double i);

enum class CheegerMethod { ExactEnumeration, RatioSearch };

struct CheegerReport {
  double value = 0.0;
  VertexSet witness;
  CheegerMethod method = CheegerMethod::ExactEnumeration;
};

// min |dS|/|S| over nonempty frontier-avoiding S (volume-0 sets excluded:
// they satisfy the isoperimetric inequality vacuously). Exact enumeration up
// to `exact_cap` interior vertices, Dinkelbach ratio search above.
CheegerReport cheeger_constant(const WeightedGraph& g, int exact_cap = 20);
CheegerReport cheeger_constant(const WeightedGraph& g, CheegerMethod method, int exact_cap = 20);

// min |dS|/|S| over connected frontier-avoiding S containing v.
CheegerReport anchored_ratio(const WeightedGraph& g, Vertex v, int enumeration_cap = 20);

// Checks the sink property: every i-island of volume <= 1/i_prime is disjoint
// from A_{i_prime}. Returning false signals a bug (or a graph outside the
// property's scope, e.g. closed components). Requires edge weights >= 1.
bool verify_sink(const WeightedGraph& g, double i, double i_prime);

std::string decomposition_to_json(const IslandDecomposition& dec);

// --- enumeration helpers (shared by the exact methods and the test oracles) --

// Per-subset volume and boundary-weight tables over an explicit vertex list
// (boundaries measured in the host graph: edges to any non-member, frontier
// included). Index = bitmask over `verts`.
struct SubsetTables {
  std::vector<Vertex> verts;
  std::vector<double> vol;
  std::vector<double> cut;

  static SubsetTables build(const WeightedGraph& g, const VertexSet& verts, int cap = 24);
  std::uint32_t mask_count() const { return static_cast<std::uint32_t>(vol.size()); }
  VertexSet to_set(std::uint32_t mask) const;
};

// Independent oracle for compute_A_i: enumerates all frontier-avoiding
// subsets and returns the inclusion-minimal maximizer of Delta_i
// (intersection of all maximizers within absolute tolerance `tie_tol`).
VertexSet bruteforce_minimal_maximizer(const WeightedGraph& g, double i,
                                       double tie_tol = 1e-9, int cap = 20);

// Subgraph induced by `keep` (ids and frontier marks preserved).
WeightedGraph induced_subgraph(const WeightedGraph& g, const VertexSet& keep);

}  // namespace anchored
