#include "anchored/isolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <nlohmann/json.hpp>

#include "anchored/maxflow.hpp"

namespace anchored {

namespace {

void check_param_i(double i) {
  if (!(i > 0.0) || !(i < 1.0) || !std::isfinite(i))
    fail(ErrorCode::BadParameter, "isolation parameter must lie in (0,1)");
}

void check_frontier_avoiding(const WeightedGraph& g, const VertexSet& s) {
  for (Vertex v : s)
    if (g.is_frontier(v))
      fail(ErrorCode::FrontierViolation, "set contains frontier vertex '" + g.id(v) + "'");
}

}  // namespace

double isolation(const WeightedGraph& g, double i, const VertexSet& s) {
  check_param_i(i);
  validate_set(g, s);
  check_frontier_avoiding(g, s);
  return i * volume(g, s) - boundary_weight(g, s);
}

SubsetTables SubsetTables::build(const WeightedGraph& g, const VertexSet& verts, int cap) {
  validate_set(g, verts);
  if (static_cast<int>(verts.size()) > cap)
    fail(ErrorCode::TooLargeForEnumeration,
         std::to_string(verts.size()) + " vertices exceeds enumeration cap " +
             std::to_string(cap));
  SubsetTables t;
  t.verts = verts;
  const int k = static_cast<int>(verts.size());
  const std::uint32_t n = 1u << k;

  std::vector<int> bit_of(g.size(), -1);
  for (int j = 0; j < k; ++j) bit_of[verts[j]] = j;

  // cutdeg(v): total non-loop incident weight; nb_bits/nb_w: neighbors inside `verts`
  std::vector<double> cutdeg(k, 0.0);
  std::vector<std::vector<std::pair<int, double>>> inner(k);
  for (int j = 0; j < k; ++j) {
    for (const auto& nb : g.neighbors(verts[j])) {
      if (nb.to == verts[j]) continue;
      cutdeg[j] += nb.weight;
      if (bit_of[nb.to] >= 0) inner[j].push_back({bit_of[nb.to], nb.weight});
    }
  }

  t.vol.assign(n, 0.0);
  t.cut.assign(n, 0.0);
  for (std::uint32_t m = 1; m < n; ++m) {
    int j = std::countr_zero(m);
    std::uint32_t rest = m & (m - 1);
    double inside = 0.0;
    for (const auto& [b, w] : inner[j])
      if (rest & (1u << b)) inside += w;
    t.vol[m] = t.vol[rest] + g.vertex_weight(t.verts[j]);
    t.cut[m] = t.cut[rest] + cutdeg[j] - 2.0 * inside;
  }
  return t;
}

VertexSet SubsetTables::to_set(std::uint32_t mask) const {
  VertexSet s;
  for (std::uint32_t m = mask; m; m &= m - 1) s.push_back(verts[std::countr_zero(m)]);
  std::sort(s.begin(), s.end());
  return s;
}

bool is_isolated_core_bruteforce(const WeightedGraph& g, double i, const VertexSet& s,
                                 int enumeration_cap) {
  check_param_i(i);
  validate_set(g, s);
  check_frontier_avoiding(g, s);
  if (s.empty()) return false;
  auto t = SubsetTables::build(g, s, enumeration_cap);
  const std::uint32_t full = t.mask_count() - 1;
  double delta_s = i * t.vol[full] - t.cut[full];
  for (std::uint32_t m = 0; m < full; ++m)
    if (!(delta_s > i * t.vol[m] - t.cut[m])) return false;
  return true;
}

IslandDecomposition compute_A_i_unchecked(const WeightedGraph& g, double i) {
  if (!(i >= 0.0) || !(i <= 1.0) || !std::isfinite(i))
    fail(ErrorCode::BadParameter, "isolation parameter out of [0,1]");

  const VertexSet interior = g.interior();
  const int k = static_cast<int>(interior.size());
  std::vector<int> node_of(g.size(), -1);
  for (int j = 0; j < k; ++j) node_of[interior[j]] = j;
  const int source = k, sink = k + 1;

  MaxFlow flow(k + 2);
  for (int j = 0; j < k; ++j)
    flow.add_edge(source, j, i * g.vertex_weight(interior[j]));
  for (const auto& e : g.edges()) {
    if (e.u == e.v) continue;  // self-loops never cross a cut
    int a = node_of[e.u], b = node_of[e.v];
    if (a >= 0 && b >= 0) {
      flow.add_edge(a, b, e.weight, e.weight);
    } else if (a >= 0) {
      flow.add_edge(a, sink, e.weight);
    } else if (b >= 0) {
      flow.add_edge(b, sink, e.weight);
    }
  }
  flow.run(source, sink);
  auto reach = flow.min_cut_source_side(source);

  IslandDecomposition dec;
  dec.graph = &g;
  dec.i = i;
  for (int j = 0; j < k; ++j)
    if (reach[j]) dec.a_i.push_back(interior[j]);
  dec.in_a_i.assign(g.size(), 0);
  for (Vertex v : dec.a_i) dec.in_a_i[v] = 1;
  dec.islands = connected_components(g, dec.a_i);
  dec.island_of.assign(g.size(), -1);
  for (size_t idx = 0; idx < dec.islands.size(); ++idx)
    for (Vertex v : dec.islands[idx]) dec.island_of[v] = static_cast<int>(idx);
  dec.ocean = set_difference(interior, dec.a_i);
  dec.a_i_volume = volume(g, dec.a_i);
  dec.delta_i = i * dec.a_i_volume - boundary_weight(g, dec.a_i);
  return dec;
}

IslandDecomposition compute_A_i(const WeightedGraph& g, double i) {
  check_param_i(i);
  return compute_A_i_unchecked(g, i);
}

namespace {

double subset_ratio(const SubsetTables& t, std::uint32_t m) {
  return t.vol[m] > 0.0 ? t.cut[m] / t.vol[m] : 0.0;
}

CheegerReport cheeger_exact(const WeightedGraph& g, int cap) {
  auto t = SubsetTables::build(g, g.interior(), cap);
  CheegerReport rep;
  rep.method = CheegerMethod::ExactEnumeration;
  bool found = false;
  std::uint32_t best_mask = 0;
  for (std::uint32_t m = 1; m < t.mask_count(); ++m) {
    if (!(t.vol[m] > 0.0)) continue;
    double r = t.cut[m] / t.vol[m];
    if (!found || r < rep.value) {
      rep.value = r;
      best_mask = m;
      found = true;
    }
  }
  if (!found) {
    // only volume-0 (isolated) interior vertices exist
    rep.value = 0.0;
    rep.witness = t.verts;
    return rep;
  }
  rep.witness = t.to_set(best_mask);
  return rep;
}

CheegerReport cheeger_dinkelbach(const WeightedGraph& g) {
  const VertexSet interior = g.interior();
  CheegerReport rep;
  rep.method = CheegerMethod::RatioSearch;
  double vol_int = volume(g, interior);
  if (!(vol_int > 0.0)) {
    rep.value = 0.0;
    rep.witness = interior;
    return rep;
  }
  rep.witness = interior;
  double ratio = boundary_weight(g, interior) / vol_int;
  for (int iter = 0; iter < 100; ++iter) {
    if (ratio <= 0.0) {
      rep.value = 0.0;
      return rep;
    }
    auto dec = compute_A_i_unchecked(g, std::min(ratio, 1.0));
    if (dec.a_i.empty()) {
      rep.value = ratio;
      return rep;
    }
    double next = boundary_weight(g, dec.a_i) / dec.a_i_volume;
    rep.witness = dec.a_i;
    if (!(next < ratio)) {
      // no numeric progress; the attained ratio is the fixed point
      rep.value = next;
      return rep;
    }
    ratio = next;
  }
  fail(ErrorCode::NonConvergence, "Dinkelbach iteration did not stabilize in 100 rounds");
}

}  // namespace

CheegerReport cheeger_constant(const WeightedGraph& g, CheegerMethod method, int exact_cap) {
  if (g.interior_count() == 0)
    fail(ErrorCode::NoInteriorVertex, "graph has no non-frontier vertex");
  return method == CheegerMethod::ExactEnumeration ? cheeger_exact(g, exact_cap)
                                                   : cheeger_dinkelbach(g);
}

CheegerReport cheeger_constant(const WeightedGraph& g, int exact_cap) {
  if (g.interior_count() == 0)
    fail(ErrorCode::NoInteriorVertex, "graph has no non-frontier vertex");
  return g.interior_count() <= exact_cap ? cheeger_exact(g, exact_cap) : cheeger_dinkelbach(g);
}

CheegerReport anchored_ratio(const WeightedGraph& g, Vertex v, int enumeration_cap) {
  if (g.is_frontier(v))
    fail(ErrorCode::FrontierViolation, "anchor '" + g.id(v) + "' is a frontier vertex");
  const VertexSet interior = g.interior();
  auto t = SubsetTables::build(g, interior, enumeration_cap);
  const int k = static_cast<int>(interior.size());

  int anchor_bit = -1;
  std::vector<std::uint32_t> nbmask(k, 0);
  std::vector<int> bit_of(g.size(), -1);
  for (int j = 0; j < k; ++j) bit_of[interior[j]] = j;
  anchor_bit = bit_of[v];
  for (int j = 0; j < k; ++j)
    for (const auto& nb : g.neighbors(interior[j]))
      if (nb.to != interior[j] && bit_of[nb.to] >= 0) nbmask[j] |= 1u << bit_of[nb.to];

  auto connected = [&](std::uint32_t mask) {
    std::uint32_t visited = 1u << anchor_bit;
    while (true) {
      std::uint32_t grow = 0;
      for (std::uint32_t m = visited; m; m &= m - 1) grow |= nbmask[std::countr_zero(m)];
      grow &= mask & ~visited;
      if (!grow) break;
      visited |= grow;
    }
    return visited == mask;
  };

  CheegerReport rep;
  rep.method = CheegerMethod::ExactEnumeration;
  bool found = false;
  const std::uint32_t anchor = 1u << anchor_bit;
  const std::uint32_t others = (t.mask_count() - 1) & ~anchor;
  // iterate over all subsets of the remaining bits, anchor always included
  std::uint32_t sub = 0;
  while (true) {
    std::uint32_t mask = sub | anchor;
    if (connected(mask)) {
      double r = subset_ratio(t, mask);
      if (!found || r < rep.value) {
        rep.value = r;
        rep.witness = t.to_set(mask);
        found = true;
      }
    }
    if (sub == others) break;
    sub = (sub - others) & others;  // next subset of `others`
  }
  return rep;
}

bool verify_sink(const WeightedGraph& g, double i, double i_prime) {
  if (!(i_prime > 0.0) || !(i_prime <= i) || !(i < 1.0))
    fail(ErrorCode::BadParameter, "need 0 < i' <= i < 1");
  for (const auto& e : g.edges())
    if (e.weight < 1.0)
      fail(ErrorCode::BadParameter, "sink property requires edge weights >= 1");
  auto dec = compute_A_i(g, i);
  auto dec_prime = compute_A_i(g, i_prime);
  const double cap = 1.0 / i_prime;
  for (const auto& island : dec.islands) {
    double vol = volume(g, island);
    if (vol <= cap * (1.0 + 1e-12)) {
      if (!set_intersection(island, dec_prime.a_i).empty()) return false;
    }
  }
  return true;
}

VertexSet bruteforce_minimal_maximizer(const WeightedGraph& g, double i, double tie_tol,
                                       int cap) {
  auto t = SubsetTables::build(g, g.interior(), cap);
  double best = 0.0;  // Delta_i(empty) = 0
  for (std::uint32_t m = 1; m < t.mask_count(); ++m)
    best = std::max(best, i * t.vol[m] - t.cut[m]);
  if (best <= tie_tol) return {};  // empty set is among the maximizers
  std::uint32_t meet = t.mask_count() - 1;
  for (std::uint32_t m = 1; m < t.mask_count(); ++m)
    if (i * t.vol[m] - t.cut[m] >= best - tie_tol) meet &= m;
  return t.to_set(meet);
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const VertexSet& keep) {
  validate_set(g, keep);
  std::vector<bool> in(g.size(), false);
  for (Vertex v : keep) in[v] = true;
  GraphBuilder b;
  for (Vertex v : keep) b.add_vertex(g.id(v), g.is_frontier(v));
  for (const auto& e : g.edges())
    if (in[e.u] && in[e.v]) b.add_edge(g.id(e.u), g.id(e.v), e.weight);
  return b.build();
}

std::string decomposition_to_json(const IslandDecomposition& dec) {
  const WeightedGraph& g = *dec.graph;
  nlohmann::json j;
  j["i"] = dec.i;
  auto ids = [&](const VertexSet& s) {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (Vertex v : s) out.push_back(g.id(v));
    return out;
  };
  j["islands"] = nlohmann::json::array();
  for (const auto& island : dec.islands) j["islands"].push_back(ids(island));
  j["ocean"] = ids(dec.ocean);
  j["A_i_volume"] = dec.a_i_volume;
  j["delta_i"] = dec.delta_i;
  return j.dump(2);
}

}  // namespace anchored
