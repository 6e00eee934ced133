#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "anchored/graph.hpp"

namespace anchored {

using LazyVertex = std::uint32_t;

struct LazyNeighbor {
  LazyVertex to;
  double weight;
};

// On-demand neighborhood oracle for the infinite graph families. Vertices are
// handles assigned on first discovery; answers are memoized and stable, and a
// fresh instance replayed with the same query sequence gives identical
// handles. Walks therefore use one instance per trajectory.
class LazyGraph {
 public:
  virtual ~LazyGraph() = default;

  LazyVertex root() const { return 0; }
  virtual std::span<const LazyNeighbor> neighbors(LazyVertex v) = 0;
  virtual int distance(LazyVertex v) const = 0;        // |v|, hops from the root
  virtual double vertex_weight(LazyVertex v) = 0;
  // Volume of the trap/pipe unit containing v, 0 for backbone vertices.
  virtual double island_volume(LazyVertex v) const = 0;
  virtual std::string label(LazyVertex v) const = 0;   // structural id for .wg output
  virtual double w0() const = 0;                       // sup vertex weight of the family
  virtual std::size_t materialized() const = 0;
};

struct FamilySpec {
  enum class Kind {
    BinaryTree,
    TrapTree,
    GeometricPipeTree,
    PipeTree,
    GaltonWatson,
  };
  Kind kind = Kind::BinaryTree;
  std::uint64_t seed = 0;              // GaltonWatson
  std::vector<double> offspring;       // GaltonWatson: P(k offspring) = offspring[k]
  std::uint64_t pipe_base = 4;         // PipeTree: pipe lengths l_n = base^n

  std::unique_ptr<LazyGraph> instantiate() const;
  std::string name() const;
  bool stochastic() const { return kind == Kind::GaltonWatson; }
};

// Binary tree with unit edge weights (root degree 2, all others 3).
FamilySpec binary_tree();

// Binary tree plus, at every vertex at depth n >= 2, a pendant attached by an
// edge of weight 1/(n ln n) carrying a self-loop of weight 1 - 1/(n ln n), so
// each pendant has total vertex weight 1.
FamilySpec trap_tree();

// Binary tree plus, at every vertex at depth n >= 2, a pipe of length 2k with
// k = ceil(log2(n ln n)) and edge weights 2^{-min(j, 2k-j)} for j = 1..2k
// walking away from the junction.
FamilySpec geometric_pipe_tree();

// Binary tree with one unit-weight pipe of length l_n attached at the
// leftmost vertex at depth l_n, for l_n = base^n.
FamilySpec pipe_tree(std::uint64_t base = 4);

// Seeded Galton-Watson tree with unit weights.
FamilySpec galton_watson(std::vector<double> offspring, std::uint64_t seed);

// Finite truncation: all backbone vertices with |v| <= radius (those at
// exactly |v| = radius marked frontier) plus, whole and never frontier, every
// trap/pipe unit whose junction satisfies |junction| < radius.
WeightedGraph truncate(LazyGraph& lz, int radius);

// Bernoulli(p) percolation: keeps each edge with a non-frontier endpoint
// independently with probability p and returns the anchor's cluster with
// inherited frontier marks.
WeightedGraph percolation(const WeightedGraph& base, double p, std::uint64_t seed,
                          Vertex anchor);

}  // namespace anchored
