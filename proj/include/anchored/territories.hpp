#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anchored/isolation.hpp"

namespace anchored {

// i-length of a bridge: the number of its vertices in the ocean
// (frontier vertices count as ocean).
int i_length(const IslandDecomposition& dec, const VertexSet& bridge);

// dist_i(v, S): 0 for v in S, otherwise 1 plus the i-length of the shortest
// bridge connecting {v} and S. Realized as a 0/1-cost shortest path where
// stepping onto an ocean vertex costs 1 and onto an island vertex costs 0;
// v and the target set carry no cost themselves. Throws Unreachable when no
// bridge exists.
int dist_i(const IslandDecomposition& dec, Vertex v, const VertexSet& s);

// All dist_i values to the set S at once (-1 where unreachable).
std::vector<int> dist_i_field(const IslandDecomposition& dec, const VertexSet& s);

// Witness bridge for dist_i(v, S): the intermediate vertices of one optimal
// path (exposed for debugging).
std::optional<VertexSet> shortest_bridge(const IslandDecomposition& dec, Vertex v,
                                         const VertexSet& s);

// r(level) = a 2^level / level^2 with a = (3/2) pi^-2 i / w0.
double r_of_level(int level, double i, double w0);

struct Country {
  int level = 0;
  VertexSet land;             // union of islands, volume in [2^(l-1), 2^l)
  VertexSet waters;           // ocean vertices with dist_i(v, land) <= r(level)
  double radius = 0.0;        // r(level)
  std::string region_tree;    // binary merge history, e.g. "((I0 I1) I4)"
};

struct CountriesResult {
  std::vector<Country> countries;
  std::vector<std::string> warnings;
};

// The level-by-level region construction: islands are labeled by dyadic
// volume level, level-l regions with intersecting waters are greedily
// matched (pairs ordered by smallest land vertex id) and promoted to level
// l+1, and the maximal regions are crowned with their waters.
CountriesResult build_countries(const WeightedGraph& g, const IslandDecomposition& dec,
                                double w0);

std::string countries_to_json(const WeightedGraph& g, const std::vector<Country>& countries);

// The quantitative hypothesis of the finiteness lemma for regions:
// w0 * #(bridge u {v} \ A_i) / |R| <= anchored_i - i. Diagnostic only.
bool connect_condition(double w0, int bridge_ocean_count, double region_volume,
                       double anchored_i, double i);

}  // namespace anchored
