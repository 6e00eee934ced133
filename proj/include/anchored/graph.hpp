#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anchored/error.hpp"

namespace anchored {

using Vertex = std::int32_t;

// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

struct Neighbor {
  Vertex to;
  double weight;
};

// Undirected edge in canonical form (u <= v). Self-loops have u == v.
struct EdgeRecord {
  Vertex u;
  Vertex v;
  double weight;
};

struct GeometrySummary {
  double w0 = 0.0;              // max vertex weight
  double min_edge_weight = 0.0;
  bool is_w0_bounded = false;   // all edge weights >= 1 and vertex weights <= w0
};

// Finite symmetric-weighted graph with an optional frontier marking.
//
// Frontier vertices stand in for the rest of an infinite graph: candidate
// sets for isolation/Cheeger computations must avoid them, edges into the
// frontier count fully in |dS|, and walks are killed on arrival there.
//
// Vertex indices are assigned in lexicographic order of the (opaque,
// string-valued) vertex ids, so index order is the canonical tie-breaking
// order everywhere downstream. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(Vertex v) const { return ids_[check(v)]; }
  Vertex vertex(std::string_view id) const;                // throws UnknownVertex
  std::optional<Vertex> find(std::string_view id) const;

  bool is_frontier(Vertex v) const { return frontier_[check(v)]; }
  // Vertex weight w(v): sum of incident edge weights, self-loop counted once.
  double vertex_weight(Vertex v) const { return weight_[check(v)]; }
  double self_loop(Vertex v) const { return loop_[check(v)]; }
  std::span<const Neighbor> neighbors(Vertex v) const {
    check(v);
    return {adj_.data() + adj_start_[v], adj_.data() + adj_start_[v + 1]};
  }
  int degree(Vertex v) const { return adj_start_[check(v) + 1] - adj_start_[v]; }

  // Canonically ordered edge list (u <= v, sorted lexicographically).
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  int interior_count() const { return interior_count_; }
  VertexSet interior() const;       // non-frontier vertices, sorted
  VertexSet frontier_set() const;   // frontier vertices, sorted
  VertexSet all_vertices() const;

  double total_volume() const { return total_volume_; }

  friend class GraphBuilder;

 private:
  Vertex check(Vertex v) const {
    if (v < 0 || v >= size()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
    return v;
  }

  std::vector<std::string> ids_;        // sorted
  std::vector<bool> frontier_;
  std::vector<double> weight_;
  std::vector<double> loop_;
  std::vector<int> adj_start_;          // CSR offsets, size() + 1
  std::vector<Neighbor> adj_;           // self-loop appears once as Neighbor{v, w}
  std::vector<EdgeRecord> edges_;
  int interior_count_ = 0;
  double total_volume_ = 0.0;
};

// Accumulates edges/vertices by id, then builds the canonical graph.
class GraphBuilder {
 public:
  GraphBuilder& add_vertex(std::string_view id, bool frontier = false);
  GraphBuilder& add_edge(std::string_view u, std::string_view v, double weight);
  WeightedGraph build() const;

 private:
  struct RawEdge {
    std::string u, v;
    double weight;
  };
  std::vector<std::pair<std::string, bool>> vertices_;
  std::vector<RawEdge> edges_;
};

// Convenience wrapper around GraphBuilder for literal fixtures.
struct EdgeSpec {
  std::string u;
  std::string v;
  double weight;
};
WeightedGraph build_graph(const std::vector<EdgeSpec>& edge_list,
                          const std::vector<std::string>& frontier = {});

// --- vertex-set helpers -----------------------------------------------------

VertexSet make_set(const WeightedGraph& g, const std::vector<std::string>& ids);
bool set_contains(const VertexSet& s, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
void validate_set(const WeightedGraph& g, const VertexSet& s);

// --- operations -------------------------------------------------------------

// |S|: sum of vertex weights over S.
double volume(const WeightedGraph& g, const VertexSet& s);

// dS: edges with exactly one endpoint in S (self-loops never qualify),
// plus their total weight.
struct EdgeBoundary {
  std::vector<EdgeRecord> edges;  // canonical order
  double weight = 0.0;
};
EdgeBoundary edge_boundary(const WeightedGraph& g, const VertexSet& s);

// Total weight of dS only (no edge list materialized).
double boundary_weight(const WeightedGraph& g, const VertexSet& s);

// Hop-count distance, ignoring edge weights; nullopt when unreachable.
std::optional<int> graph_distance(const WeightedGraph& g, Vertex source, Vertex target);

// Distances from `source` to every vertex (-1 for unreachable).
std::vector<int> bfs_distances(const WeightedGraph& g, Vertex source);

struct VertexBoundaries {
  VertexSet inner;  // members of S with a neighbor outside
  VertexSet outer;  // non-members with a neighbor in S
};
VertexBoundaries vertex_boundaries(const WeightedGraph& g, const VertexSet& s);

GeometrySummary geometry_summary(const WeightedGraph& g);  // throws EmptyGraph

// Connected components of `s` in the subgraph induced by `s`,
// each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const WeightedGraph& g, const VertexSet& s);

bool is_connected_in(const WeightedGraph& g, const VertexSet& s);

}  // namespace anchored
