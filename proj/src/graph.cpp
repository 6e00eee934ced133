#include "anchored/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <tuple>

namespace anchored {

Vertex WeightedGraph::vertex(std::string_view id) const {
  auto v = find(id);
  if (!v) fail(ErrorCode::UnknownVertex, "no vertex with id '" + std::string(id) + "'");
  return *v;
}

std::optional<Vertex> WeightedGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - ids_.begin());
}

VertexSet WeightedGraph::interior() const {
  VertexSet out;
  out.reserve(interior_count_);
  for (Vertex v = 0; v < size(); ++v)
    if (!frontier_[v]) out.push_back(v);
  return out;
}

VertexSet WeightedGraph::frontier_set() const {
  VertexSet out;
  for (Vertex v = 0; v < size(); ++v)
    if (frontier_[v]) out.push_back(v);
  return out;
}

VertexSet WeightedGraph::all_vertices() const {
  VertexSet out(size());
  for (Vertex v = 0; v < size(); ++v) out[v] = v;
  return out;
}

GraphBuilder& GraphBuilder::add_vertex(std::string_view id, bool frontier) {
  vertices_.emplace_back(std::string(id), frontier);
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight) {
  edges_.push_back(RawEdge{std::string(u), std::string(v), weight});
  return *this;
}

WeightedGraph GraphBuilder::build() const {
  std::map<std::string, bool> verts;  // id -> frontier flag
  for (const auto& [id, frontier] : vertices_) {
    auto [it, inserted] = verts.emplace(id, frontier);
    if (!inserted) it->second = it->second || frontier;
  }
  for (const auto& e : edges_) {
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      fail(ErrorCode::NonPositiveWeight,
           "edge (" + e.u + "," + e.v + ") has weight " + std::to_string(e.weight));
    verts.emplace(e.u, false);
    verts.emplace(e.v, false);
  }

  WeightedGraph g;
  g.ids_.reserve(verts.size());
  for (const auto& [id, frontier] : verts) {
    g.ids_.push_back(id);
    g.frontier_.push_back(frontier);
  }
  const int n = g.size();

  auto index_of = [&](const std::string& id) {
    return static_cast<Vertex>(
        std::lower_bound(g.ids_.begin(), g.ids_.end(), id) - g.ids_.begin());
  };

  std::map<std::pair<Vertex, Vertex>, double> canonical;
  for (const auto& e : edges_) {
    Vertex a = index_of(e.u), b = index_of(e.v);
    if (a > b) std::swap(a, b);
    auto [it, inserted] = canonical.emplace(std::make_pair(a, b), e.weight);
    if (!inserted)
      fail(ErrorCode::DuplicateEdge, "duplicate edge (" + e.u + "," + e.v + ")");
  }

  g.weight_.assign(n, 0.0);
  g.loop_.assign(n, 0.0);
  std::vector<int> deg(n, 0);
  for (const auto& [key, w] : canonical) {
    auto [a, b] = key;
    if (a == b) {
      g.loop_[a] = w;
      g.weight_[a] += w;  // self-loop counted once
      deg[a] += 1;
    } else {
      g.weight_[a] += w;
      g.weight_[b] += w;
      deg[a] += 1;
      deg[b] += 1;
    }
  }

  g.adj_start_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) g.adj_start_[v + 1] = g.adj_start_[v] + deg[v];
  g.adj_.resize(g.adj_start_[n]);
  std::vector<int> cursor(g.adj_start_.begin(), g.adj_start_.end() - 1);
  for (const auto& [key, w] : canonical) {
    auto [a, b] = key;
    g.adj_[cursor[a]++] = Neighbor{b, w};
    if (a != b) g.adj_[cursor[b]++] = Neighbor{a, w};
    g.edges_.push_back(EdgeRecord{a, b, w});
  }
  for (Vertex v = 0; v < n; ++v)
    std::sort(g.adj_.begin() + g.adj_start_[v], g.adj_.begin() + g.adj_start_[v + 1],
              [](const Neighbor& x, const Neighbor& y) { return x.to < y.to; });

  for (Vertex v = 0; v < n; ++v) {
    if (!g.frontier_[v]) ++g.interior_count_;
    g.total_volume_ += g.weight_[v];
  }
  return g;
}

WeightedGraph build_graph(const std::vector<EdgeSpec>& edge_list,
                          const std::vector<std::string>& frontier) {
  GraphBuilder b;
  for (const auto& id : frontier) b.add_vertex(id, true);
  for (const auto& e : edge_list) b.add_edge(e.u, e.v, e.weight);
  return b.build();
}

VertexSet make_set(const WeightedGraph& g, const std::vector<std::string>& ids) {
  VertexSet s;
  s.reserve(ids.size());
  for (const auto& id : ids) s.push_back(g.vertex(id));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool set_contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void validate_set(const WeightedGraph& g, const VertexSet& s) {
  Vertex prev = -1;
  for (Vertex v : s) {
    if (v < 0 || v >= g.size()) fail(ErrorCode::UnknownVertex, "set member out of range");
    if (v <= prev) fail(ErrorCode::BadParameter, "vertex set not sorted/unique");
    prev = v;
  }
}

double volume(const WeightedGraph& g, const VertexSet& s) {
  validate_set(g, s);
  double total = 0.0;
  for (Vertex v : s) total += g.vertex_weight(v);
  return total;
}

EdgeBoundary edge_boundary(const WeightedGraph& g, const VertexSet& s) {
  validate_set(g, s);
  std::vector<bool> in(g.size(), false);
  for (Vertex v : s) in[v] = true;
  EdgeBoundary out;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;
    if (in[e.u] != in[e.v]) {
      out.edges.push_back(e);
      out.weight += e.weight;
    }
  }
  return out;
}

double boundary_weight(const WeightedGraph& g, const VertexSet& s) {
  validate_set(g, s);
  std::vector<bool> in(g.size(), false);
  for (Vertex v : s) in[v] = true;
  double total = 0.0;
  for (Vertex v : s)
    for (const auto& nb : g.neighbors(v))
      if (nb.to != v && !in[nb.to]) total += nb.weight;
  return total;
}

std::vector<int> bfs_distances(const WeightedGraph& g, Vertex source) {
  g.id(source);  // range check
  std::vector<int> dist(g.size(), -1);
  std::deque<Vertex> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.to] < 0) {
        dist[nb.to] = dist[v] + 1;
        queue.push_back(nb.to);
      }
    }
  }
  return dist;
}

std::optional<int> graph_distance(const WeightedGraph& g, Vertex source, Vertex target) {
  g.id(source);
  g.id(target);
  if (source == target) return 0;
  std::vector<int> dist(g.size(), -1);
  std::deque<Vertex> queue;
  dist[source] = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.to] < 0) {
        dist[nb.to] = dist[v] + 1;
        if (nb.to == target) return dist[nb.to];
        queue.push_back(nb.to);
      }
    }
  }
  return std::nullopt;
}

VertexBoundaries vertex_boundaries(const WeightedGraph& g, const VertexSet& s) {
  validate_set(g, s);
  std::vector<bool> in(g.size(), false);
  for (Vertex v : s) in[v] = true;
  VertexBoundaries out;
  std::vector<bool> outer_seen(g.size(), false);
  for (Vertex v : s) {
    bool has_outside = false;
    for (const auto& nb : g.neighbors(v)) {
      if (nb.to == v) continue;
      if (!in[nb.to]) {
        has_outside = true;
        if (!outer_seen[nb.to]) {
          outer_seen[nb.to] = true;
          out.outer.push_back(nb.to);
        }
      }
    }
    if (has_outside) out.inner.push_back(v);
  }
  std::sort(out.outer.begin(), out.outer.end());
  return out;
}

GeometrySummary geometry_summary(const WeightedGraph& g) {
  if (g.empty()) fail(ErrorCode::EmptyGraph, "geometry summary of empty graph");
  GeometrySummary out;
  out.w0 = 0.0;
  for (Vertex v = 0; v < g.size(); ++v) out.w0 = std::max(out.w0, g.vertex_weight(v));
  out.min_edge_weight = g.edges().empty() ? 0.0 : g.edges().front().weight;
  for (const auto& e : g.edges()) out.min_edge_weight = std::min(out.min_edge_weight, e.weight);
  out.is_w0_bounded = !g.edges().empty() && out.min_edge_weight >= 1.0;
  return out;
}

std::vector<VertexSet> connected_components(const WeightedGraph& g, const VertexSet& s) {
  validate_set(g, s);
  std::vector<bool> in(g.size(), false);
  for (Vertex v : s) in[v] = true;
  std::vector<bool> seen(g.size(), false);
  std::vector<VertexSet> comps;
  for (Vertex start : s) {
    if (seen[start]) continue;
    VertexSet comp;
    std::deque<Vertex> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (const auto& nb : g.neighbors(v))
        if (in[nb.to] && !seen[nb.to]) {
          seen[nb.to] = true;
          queue.push_back(nb.to);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_connected_in(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) return false;
  return connected_components(g, s).size() == 1;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::FrontierViolation: return "FrontierViolation";
    case ErrorCode::TooLargeForEnumeration: return "TooLargeForEnumeration";
    case ErrorCode::NoInteriorVertex: return "NoInteriorVertex";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::MissingDecomposition: return "MissingDecomposition";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadDistribution: return "BadDistribution";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace anchored
