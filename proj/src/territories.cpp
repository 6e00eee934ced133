#include "anchored/territories.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <nlohmann/json.hpp>

namespace anchored {

int i_length(const IslandDecomposition& dec, const VertexSet& bridge) {
  validate_set(*dec.graph, bridge);
  int count = 0;
  for (Vertex v : bridge)
    if (!dec.in_a_i[v]) ++count;
  return count;
}

namespace {

// 0/1-cost multi-source search. dist[v] counts the ocean vertices on the
// cheapest path walking from S to v, exclusive of S and inclusive of v
// unless v is on land. Stepping back into S is never useful.
std::vector<int> zero_one_bfs_from(const WeightedGraph& g, const IslandDecomposition& dec,
                                   const VertexSet& sources) {
  std::vector<int> dist(g.size(), -1);
  std::deque<Vertex> dq;
  for (Vertex v : sources) {
    dist[v] = 0;
    dq.push_back(v);
  }
  while (!dq.empty()) {
    Vertex v = dq.front();
    dq.pop_front();
    for (const auto& nb : g.neighbors(v)) {
      Vertex u = nb.to;
      if (u == v) continue;
      int cost = dec.in_a_i[u] ? 0 : 1;
      int cand = dist[v] + cost;
      if (dist[u] < 0 || cand < dist[u]) {
        dist[u] = cand;
        if (cost == 0)
          dq.push_front(u);
        else
          dq.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<int> dist_i_field(const IslandDecomposition& dec, const VertexSet& s) {
  const WeightedGraph& g = *dec.graph;
  validate_set(g, s);
  auto raw = zero_one_bfs_from(g, dec, s);
  // raw counts the endpoint itself when it is ocean; dist_i counts only the
  // bridge interior, so subtract the endpoint's own cost and add the final +1
  std::vector<int> out(g.size(), -1);
  std::vector<char> in_s(g.size(), 0);
  for (Vertex v : s) in_s[v] = 1;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (in_s[v]) {
      out[v] = 0;
    } else if (raw[v] >= 0) {
      out[v] = 1 + raw[v] - (dec.in_a_i[v] ? 0 : 1);
    }
  }
  return out;
}

int dist_i(const IslandDecomposition& dec, Vertex v, const VertexSet& s) {
  dec.graph->id(v);
  auto field = dist_i_field(dec, s);
  if (field[v] < 0)
    fail(ErrorCode::Unreachable, "no bridge connects '" + dec.graph->id(v) + "' to the set");
  return field[v];
}

std::optional<VertexSet> shortest_bridge(const IslandDecomposition& dec, Vertex v,
                                         const VertexSet& s) {
  const WeightedGraph& g = *dec.graph;
  if (set_contains(s, v)) return VertexSet{};
  std::vector<char> in_s(g.size(), 0);
  for (Vertex x : s) in_s[x] = 1;
  // per-query 0/1 search from v tracking parents
  VertexSet bridge;
  std::vector<int> dist(g.size(), -1);
  std::vector<Vertex> parent(g.size(), -1);
  std::deque<Vertex> dq;
  dist[v] = 0;
  dq.push_back(v);
  while (!dq.empty()) {
    Vertex x = dq.front();
    dq.pop_front();
    if (in_s[x]) continue;  // terminal; never expand past the target set
    for (const auto& nb : g.neighbors(x)) {
      Vertex u = nb.to;
      if (u == x) continue;
      int cost = in_s[u] ? 0 : (dec.in_a_i[u] ? 0 : 1);
      int cand = dist[x] + cost;
      if (dist[u] < 0 || cand < dist[u]) {
        dist[u] = cand;
        parent[u] = x;
        if (cost == 0)
          dq.push_front(u);
        else
          dq.push_back(u);
      }
    }
  }
  Vertex hit = -1;
  for (Vertex u : s)
    if (dist[u] >= 0 && (hit < 0 || dist[u] < dist[hit])) hit = u;
  if (hit < 0) return std::nullopt;
  for (Vertex x = parent[hit]; x != v && x >= 0; x = parent[x]) bridge.push_back(x);
  std::sort(bridge.begin(), bridge.end());
  return bridge;
}

double r_of_level(int level, double i, double w0) {
  if (level < 1 || !(i > 0.0) || !(w0 > 0.0))
    fail(ErrorCode::BadParameter, "r(level) needs level >= 1, i > 0, w0 > 0");
  double a = 1.5 / (std::numbers::pi * std::numbers::pi) * i / w0;
  return a * std::ldexp(1.0, level) / (static_cast<double>(level) * level);
}

namespace {

struct Region {
  int level = 0;
  VertexSet land;
  std::string tree;
  bool matched_away = false;
};

int level_of_volume(double vol) {
  // unique l >= 1 with vol in [2^(l-1), 2^l); weights >= 1 keep vol >= 1
  int l = 1;
  while (std::ldexp(1.0, l) <= vol) ++l;
  return l;
}

}  // namespace

CountriesResult build_countries(const WeightedGraph& g, const IslandDecomposition& dec,
                                double w0) {
  if (!(w0 > 0.0)) fail(ErrorCode::BadParameter, "w0 must be positive");
  if (dec.graph != &g) fail(ErrorCode::BadParameter, "decomposition built from another graph");

  CountriesResult out;
  if (g.interior_count() > 0) {
    auto h = cheeger_constant(g, CheegerMethod::RatioSearch);
    if (dec.i > (2.0 / 3.0) * h.value + 1e-15)
      out.warnings.push_back(
          "i = " + std::to_string(dec.i) + " exceeds 2/3 of the surrogate expansion constant " +
          std::to_string(h.value) + "; the construction runs but its guarantees need not hold");
  }

  std::vector<Region> regions;
  for (size_t idx = 0; idx < dec.islands.size(); ++idx) {
    Region r;
    r.land = dec.islands[idx];
    r.level = level_of_volume(volume(g, r.land));
    r.tree = "I" + std::to_string(idx);
    regions.push_back(std::move(r));
  }

  std::vector<char> ocean_flag(g.size(), 0);
  for (Vertex v : dec.ocean) ocean_flag[v] = 1;
  auto waters_of = [&](const Region& r) {
    double radius = r_of_level(r.level, dec.i, w0);
    VertexSet w;
    if (radius < 1.0) return w;  // dist_i is integral and >= 1 off the land
    auto field = dist_i_field(dec, r.land);
    for (Vertex v = 0; v < g.size(); ++v)
      if (ocean_flag[v] && field[v] >= 1 && field[v] <= radius) w.push_back(v);
    return w;
  };

  int level = 1;
  while (true) {
    int max_level = 0;
    std::vector<int> at_level;
    for (size_t k = 0; k < regions.size(); ++k) {
      if (regions[k].matched_away) continue;
      max_level = std::max(max_level, regions[k].level);
      if (regions[k].level == level) at_level.push_back(static_cast<int>(k));
    }
    if (level > max_level) break;

    // greedy maximal matching, pairs ordered by smallest land vertex id
    std::sort(at_level.begin(), at_level.end(), [&](int a, int b) {
      return regions[a].land.front() < regions[b].land.front();
    });
    std::vector<VertexSet> waters;
    waters.reserve(at_level.size());
    for (int k : at_level) waters.push_back(waters_of(regions[k]));
    std::vector<char> used(at_level.size(), 0);
    for (size_t a = 0; a < at_level.size(); ++a) {
      if (used[a]) continue;
      for (size_t b = a + 1; b < at_level.size(); ++b) {
        if (used[b]) continue;
        if (set_intersection(waters[a], waters[b]).empty()) continue;
        used[a] = used[b] = 1;
        Region merged;
        merged.level = level + 1;
        merged.land = set_union(regions[at_level[a]].land, regions[at_level[b]].land);
        merged.tree = "(" + regions[at_level[a]].tree + " " + regions[at_level[b]].tree + ")";
        regions[at_level[a]].matched_away = true;
        regions[at_level[b]].matched_away = true;
        regions.push_back(std::move(merged));
        break;
      }
    }
    ++level;
  }

  for (const auto& r : regions) {
    if (r.matched_away) continue;
    Country c;
    c.level = r.level;
    c.land = r.land;
    c.waters = waters_of(r);
    c.radius = r_of_level(r.level, dec.i, w0);
    c.region_tree = r.tree;
    out.countries.push_back(std::move(c));
  }
  std::sort(out.countries.begin(), out.countries.end(),
            [](const Country& a, const Country& b) {
              return a.land.front() < b.land.front();
            });
  return out;
}

std::string countries_to_json(const WeightedGraph& g, const std::vector<Country>& countries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : countries) {
    nlohmann::json j;
    j["level"] = c.level;
    std::vector<std::string> land, waters;
    for (Vertex v : c.land) land.push_back(g.id(v));
    for (Vertex v : c.waters) waters.push_back(g.id(v));
    j["land"] = land;
    j["waters"] = waters;
    j["r"] = c.radius;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

bool connect_condition(double w0, int bridge_ocean_count, double region_volume,
                       double anchored_i, double i) {
  if (!(region_volume > 0.0)) fail(ErrorCode::BadParameter, "region volume must be positive");
  return w0 * bridge_ocean_count / region_volume <= anchored_i - i;
}

}  // namespace anchored
