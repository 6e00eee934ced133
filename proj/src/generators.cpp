#include "anchored/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "anchored/rng.hpp"

namespace anchored {

namespace {

constexpr std::size_t kArenaLimit = 200'000'000;

enum class NodeKind : std::uint8_t { Tree, Pendant, Pipe };

struct Node {
  LazyVertex parent = 0;
  int depth = 0;
  NodeKind kind = NodeKind::Tree;
  bool leftmost = false;        // on the all-left branch from the root
  bool expanded = false;
  int child_index = 0;          // index among the parent's tree children
  double unit_volume = 0.0;     // island volume of the containing unit
  std::uint64_t path_hash = 0;  // Galton-Watson offspring key
  std::vector<LazyNeighbor> adj;
};

class LazyTreeGraph final : public LazyGraph {
 public:
  explicit LazyTreeGraph(FamilySpec spec) : spec_(std::move(spec)) {
    if (spec_.kind == FamilySpec::Kind::GaltonWatson) validate_distribution();
    Node root;
    root.depth = 0;
    root.leftmost = true;
    root.path_hash = CounterRng::mix64(spec_.seed ^ 0x6A09E667F3BCC908ull);
    nodes_.push_back(std::move(root));
  }

  std::span<const LazyNeighbor> neighbors(LazyVertex v) override {
    expand(v);
    return nodes_[v].adj;
  }

  int distance(LazyVertex v) const override { return nodes_.at(v).depth; }

  double vertex_weight(LazyVertex v) override {
    double w = 0.0;
    for (const auto& nb : neighbors(v)) w += nb.weight;
    return w;
  }

  double island_volume(LazyVertex v) const override { return nodes_.at(v).unit_volume; }

  std::string label(LazyVertex v) const override {
    std::vector<std::string> parts;
    while (v != 0) {
      const Node& n = nodes_.at(v);
      switch (n.kind) {
        case NodeKind::Tree: parts.push_back("." + std::to_string(n.child_index)); break;
        case NodeKind::Pendant: parts.push_back(".t"); break;
        case NodeKind::Pipe: parts.push_back(".p" + std::to_string(n.child_index)); break;
      }
      v = n.parent;
    }
    std::string out = "o";
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) out += *it;
    return out;
  }

  double w0() const override {
    switch (spec_.kind) {
      case FamilySpec::Kind::BinaryTree: return 3.0;
      case FamilySpec::Kind::TrapTree: return 3.0 + 1.0 / (2.0 * std::log(2.0));
      case FamilySpec::Kind::GeometricPipeTree: return 3.5;  // tree vertex + first pipe edge
      case FamilySpec::Kind::PipeTree: return 4.0;           // junction of a pipe
      case FamilySpec::Kind::GaltonWatson:
        return static_cast<double>(spec_.offspring.size());  // max offspring + parent
    }
    return 3.0;
  }

  std::size_t materialized() const override { return nodes_.size(); }

 private:
  void validate_distribution() {
    const auto& p = spec_.offspring;
    if (p.empty()) fail(ErrorCode::BadDistribution, "empty offspring distribution");
    double sum = 0.0;
    for (double q : p) {
      if (q < 0.0 || !std::isfinite(q))
        fail(ErrorCode::BadDistribution, "negative offspring probability");
      sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      fail(ErrorCode::BadDistribution,
           "offspring probabilities sum to " + std::to_string(sum));
  }

  LazyVertex fresh(Node n) {
    if (nodes_.size() >= kArenaLimit)
      fail(ErrorCode::GeneratorExhausted, "lazy arena exceeded its size limit");
    nodes_.push_back(std::move(n));
    return static_cast<LazyVertex>(nodes_.size() - 1);
  }

  int tree_children(const Node& n) const {
    if (spec_.kind != FamilySpec::Kind::GaltonWatson) return 2;
    double u = (CounterRng::mix64(n.path_hash ^ 0x243F6A8885A308D3ull) >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (std::size_t k = 0; k < spec_.offspring.size(); ++k) {
      acc += spec_.offspring[k];
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(spec_.offspring.size()) - 1;
  }

  void expand(LazyVertex v) {
    Node& n = nodes_[v];
    if (n.expanded) return;
    n.expanded = true;
    if (n.kind != NodeKind::Tree) return;  // unit vertices are born expanded

    std::vector<LazyNeighbor> adj;
    if (v != 0) adj.push_back({n.parent, 1.0});

    const int children = tree_children(n);
    for (int c = 0; c < children; ++c) {
      Node child;
      child.parent = v;
      child.depth = n.depth + 1;
      child.kind = NodeKind::Tree;
      child.leftmost = n.leftmost && c == 0;
      child.child_index = c;
      child.path_hash =
          CounterRng::mix64(n.path_hash + CounterRng::kGolden * (static_cast<std::uint64_t>(c) + 1));
      adj.push_back({fresh(std::move(child)), 1.0});
    }

    const int d = n.depth;
    switch (spec_.kind) {
      case FamilySpec::Kind::TrapTree:
        if (d >= 2) {
          double eps = 1.0 / (d * std::log(static_cast<double>(d)));
          Node pendant;
          pendant.parent = v;
          pendant.depth = d + 1;
          pendant.kind = NodeKind::Pendant;
          pendant.expanded = true;
          pendant.unit_volume = 1.0;  // pendant vertex weight is 1 by construction
          LazyVertex pv = fresh(std::move(pendant));
          nodes_[pv].adj = {{v, eps}, {pv, 1.0 - eps}};
          adj.push_back({pv, eps});
        }
        break;
      case FamilySpec::Kind::GeometricPipeTree:
        if (d >= 2) {
          int k = static_cast<int>(std::ceil(std::log2(d * std::log(static_cast<double>(d)))));
          k = std::max(k, 1);
          attach_pipe(v, adj, 2 * k, [k](int j) {
            return std::ldexp(1.0, -std::min(j, 2 * k - j));
          });
        }
        break;
      case FamilySpec::Kind::PipeTree:
        if (n.leftmost && d >= 1 && is_pipe_depth(d)) {
          attach_pipe(v, adj, d, [](int) { return 1.0; });
        }
        break;
      default:
        break;
    }
    nodes_[v].adj = std::move(adj);  // n may dangle after fresh(); reindex
  }

  bool is_pipe_depth(int d) const {
    // d = base^n for some n >= 1
    for (std::uint64_t l = spec_.pipe_base; l <= static_cast<std::uint64_t>(d);
         l *= spec_.pipe_base) {
      if (l == static_cast<std::uint64_t>(d)) return true;
      if (l > static_cast<std::uint64_t>(d) / spec_.pipe_base) break;  // overflow guard
    }
    return false;
  }

  template <typename WeightFn>
  void attach_pipe(LazyVertex junction, std::vector<LazyNeighbor>& junction_adj, int length,
                   WeightFn weight_of_edge) {
    // pipe vertices 1..length; edge j joins vertex j-1 to j (0 = junction)
    double unit_volume = 0.0;
    std::vector<double> w(length + 1, 0.0);
    for (int j = 1; j <= length; ++j) w[j] = weight_of_edge(j);
    for (int p = 1; p <= length; ++p)
      unit_volume += w[p] + (p < length ? w[p + 1] : 0.0);

    const int base_depth = nodes_[junction].depth;
    std::vector<LazyVertex> ids(length + 1);
    ids[0] = junction;
    for (int p = 1; p <= length; ++p) {
      Node pn;
      pn.parent = junction;
      pn.depth = base_depth + p;
      pn.kind = NodeKind::Pipe;
      pn.expanded = true;
      pn.child_index = p;
      pn.unit_volume = unit_volume;
      ids[p] = fresh(std::move(pn));
    }
    for (int p = 1; p <= length; ++p) {
      auto& adj = nodes_[ids[p]].adj;
      adj.push_back({ids[p - 1], w[p]});
      if (p < length) adj.push_back({ids[p + 1], w[p + 1]});
    }
    junction_adj.push_back({ids[1], w[1]});
  }

  FamilySpec spec_;
  std::deque<Node> nodes_;
};

}  // namespace

std::unique_ptr<LazyGraph> FamilySpec::instantiate() const {
  return std::make_unique<LazyTreeGraph>(*this);
}

std::string FamilySpec::name() const {
  switch (kind) {
    case Kind::BinaryTree: return "binary_tree";
    case Kind::TrapTree: return "trap_tree";
    case Kind::GeometricPipeTree: return "geometric_pipe_tree";
    case Kind::PipeTree: return "pipe_tree";
    case Kind::GaltonWatson: return "galton_watson";
  }
  return "unknown";
}

FamilySpec binary_tree() { return {FamilySpec::Kind::BinaryTree, 0, {}, 4}; }
FamilySpec trap_tree() { return {FamilySpec::Kind::TrapTree, 0, {}, 4}; }
FamilySpec geometric_pipe_tree() { return {FamilySpec::Kind::GeometricPipeTree, 0, {}, 4}; }

FamilySpec pipe_tree(std::uint64_t base) {
  if (base < 2) fail(ErrorCode::BadParameter, "pipe lengths must increase strictly");
  return {FamilySpec::Kind::PipeTree, 0, {}, base};
}

FamilySpec galton_watson(std::vector<double> offspring, std::uint64_t seed) {
  FamilySpec s{FamilySpec::Kind::GaltonWatson, seed, std::move(offspring), 4};
  s.instantiate();  // validates the distribution
  return s;
}

WeightedGraph truncate(LazyGraph& lz, int radius) {
  if (radius < 1) fail(ErrorCode::BadParameter, "truncation radius must be >= 1");

  std::map<LazyVertex, std::string> included;  // handle -> label
  std::map<std::pair<LazyVertex, LazyVertex>, double> edges;
  std::vector<LazyVertex> frontier;
  std::deque<LazyVertex> queue{lz.root()};
  std::map<LazyVertex, char> seen{{lz.root(), 1}};

  while (!queue.empty()) {
    LazyVertex v = queue.front();
    queue.pop_front();
    included.emplace(v, lz.label(v));
    bool unit = lz.island_volume(v) > 0.0;
    bool expandable = unit || lz.distance(v) < radius;
    if (!unit && lz.distance(v) >= radius) frontier.push_back(v);
    if (!expandable) continue;
    for (const auto& nb : lz.neighbors(v)) {
      bool nb_unit = lz.island_volume(nb.to) > 0.0;
      if (!nb_unit && lz.distance(nb.to) > radius) continue;
      // units belong to the truncation iff their junction is strictly inside
      LazyVertex a = std::min(v, nb.to), b = std::max(v, nb.to);
      edges[{a, b}] = nb.weight;
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        queue.push_back(nb.to);
      }
    }
  }

  GraphBuilder gb;
  for (const auto& [v, lab] : included) gb.add_vertex(lab, false);
  for (LazyVertex v : frontier) gb.add_vertex(included.at(v), true);
  for (const auto& [key, w] : edges)
    gb.add_edge(included.at(key.first), included.at(key.second), w);
  return gb.build();
}

WeightedGraph percolation(const WeightedGraph& base, double p, std::uint64_t seed,
                          Vertex anchor) {
  if (!(p >= 0.0) || !(p <= 1.0)) fail(ErrorCode::BadParameter, "retention probability");
  base.id(anchor);
  if (base.is_frontier(anchor))
    fail(ErrorCode::FrontierViolation, "percolation anchor must be non-frontier");

  auto rng = CounterRng::stream(seed, 0x9e3779b9);
  std::vector<char> kept(base.edges().size(), 0);
  for (std::size_t k = 0; k < base.edges().size(); ++k) {
    const auto& e = base.edges()[k];
    bool frontier_only = base.is_frontier(e.u) && base.is_frontier(e.v);
    double u = rng.next_unit();  // one draw per edge keeps the stream aligned
    kept[k] = frontier_only || u < p;
  }

  // adjacency over kept edges
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(base.size());
  for (std::size_t k = 0; k < base.edges().size(); ++k) {
    if (!kept[k]) continue;
    const auto& e = base.edges()[k];
    adj[e.u].push_back({e.v, k});
    if (e.u != e.v) adj[e.v].push_back({e.u, k});
  }

  std::vector<char> in_cluster(base.size(), 0);
  std::deque<Vertex> queue{anchor};
  in_cluster[anchor] = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const auto& [to, k] : adj[v])
      if (!in_cluster[to]) {
        in_cluster[to] = 1;
        queue.push_back(to);
      }
  }

  GraphBuilder gb;
  for (Vertex v = 0; v < base.size(); ++v)
    if (in_cluster[v]) gb.add_vertex(base.id(v), base.is_frontier(v));
  for (std::size_t k = 0; k < base.edges().size(); ++k) {
    const auto& e = base.edges()[k];
    if (kept[k] && in_cluster[e.u] && in_cluster[e.v])
      gb.add_edge(base.id(e.u), base.id(e.v), e.weight);
  }
  return gb.build();
}

}  // namespace anchored
