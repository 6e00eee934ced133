#include "anchored/induced.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

namespace anchored {

namespace {

constexpr int kDenseSolveLimit = 500;

// Solves (I - Q) X = R for the absorbing chain of one island. Dense LU for
// small islands, conjugate gradient on the symmetrized system above.
Eigen::MatrixXd solve_absorbing(const WeightedGraph& g, const VertexSet& island,
                                const Eigen::MatrixXd& rhs) {
  const int n = static_cast<int>(island.size());
  std::vector<int> row_of(g.size(), -1);
  for (int r = 0; r < n; ++r) row_of[island[r]] = r;

  if (n <= kDenseSolveLimit) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int r = 0; r < n; ++r) {
      double w = g.vertex_weight(island[r]);
      for (const auto& nb : g.neighbors(island[r]))
        if (row_of[nb.to] >= 0) m(r, row_of[nb.to]) -= nb.weight / w;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    Eigen::MatrixXd x = lu.solve(rhs);
    double resid = (m * x - rhs).cwiseAbs().maxCoeff();
    if (!std::isfinite(resid) || resid > 1e-8)
      fail(ErrorCode::SingularSystem,
           "island exit solve failed (residual " + std::to_string(resid) + ")");
    return x;
  }

  // similarity transform D^{1/2} (I - Q) D^{-1/2} is symmetric positive definite
  Eigen::VectorXd sqrtw(n);
  for (int r = 0; r < n; ++r) sqrtw(r) = std::sqrt(g.vertex_weight(island[r]));
  std::vector<Eigen::Triplet<double>> trip;
  for (int r = 0; r < n; ++r) {
    trip.emplace_back(r, r, 1.0);
    double w = g.vertex_weight(island[r]);
    for (const auto& nb : g.neighbors(island[r]))
      if (row_of[nb.to] >= 0) {
        int c = row_of[nb.to];
        trip.emplace_back(r, c, -(nb.weight / w) * sqrtw(r) / sqrtw(c));
      }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(20000);
  cg.compute(m);
  Eigen::MatrixXd scaled_rhs = sqrtw.asDiagonal() * rhs;
  Eigen::MatrixXd y = cg.solve(scaled_rhs);
  if (cg.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "island exit CG did not converge");
  return sqrtw.cwiseInverse().asDiagonal() * y;
}

}  // namespace

IslandExitMatrix island_exit_matrix(const WeightedGraph& g, const VertexSet& island) {
  validate_set(g, island);
  if (island.empty()) fail(ErrorCode::BadParameter, "empty island");
  if (!is_connected_in(g, island)) fail(ErrorCode::BadParameter, "island not connected");

  auto vb = vertex_boundaries(g, island);
  if (vb.outer.empty())
    fail(ErrorCode::SingularSystem, "island has no exit (empty outer boundary)");

  const int n = static_cast<int>(island.size());
  const int m = static_cast<int>(vb.outer.size());
  std::vector<int> col_of(g.size(), -1);
  for (int c = 0; c < m; ++c) col_of[vb.outer[c]] = c;

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, m);
  for (int r = 0; r < n; ++r) {
    double w = g.vertex_weight(island[r]);
    for (const auto& nb : g.neighbors(island[r]))
      if (col_of[nb.to] >= 0) rhs(r, col_of[nb.to]) += nb.weight / w;
  }
  Eigen::MatrixXd h = solve_absorbing(g, island, rhs);

  IslandExitMatrix out;
  out.island = island;
  out.outer = vb.outer;
  out.dist.assign(static_cast<size_t>(n) * m, 0.0);
  for (int r = 0; r < n; ++r) {
    double row_sum = 0.0;
    for (int c = 0; c < m; ++c) {
      out.dist[r * m + c] = h(r, c);
      row_sum += h(r, c);
    }
    if (std::abs(row_sum - 1.0) > 1e-10)
      fail(ErrorCode::SingularSystem,
           "exit distribution row sums to " + std::to_string(row_sum));
  }
  return out;
}

InducedGraph build_induced_graph(const WeightedGraph& g, const IslandDecomposition& dec) {
  if (dec.graph != &g) fail(ErrorCode::BadParameter, "decomposition built from another graph");

  InducedGraph out;
  out.base = &g;
  out.i = dec.i;

  VertexSet keep = set_difference(g.all_vertices(), dec.a_i);

  // directed island-mediated mass: acc[(u,v)] = sum_a w((u,a)) P_a(exit at v)
  std::map<std::pair<Vertex, Vertex>, double> acc;
  for (const auto& island : dec.islands) {
    auto exit = island_exit_matrix(g, island);
    std::vector<int> row_of(g.size(), -1);
    for (size_t r = 0; r < exit.island.size(); ++r)
      row_of[exit.island[r]] = static_cast<int>(r);
    for (Vertex u : exit.outer) {
      for (const auto& nb : g.neighbors(u)) {
        int r = row_of[nb.to];
        if (r < 0) continue;
        for (size_t c = 0; c < exit.outer.size(); ++c) {
          double mass = nb.weight * exit.at(r, static_cast<int>(c));
          if (mass > 0.0) acc[{u, exit.outer[c]}] += mass;
        }
      }
    }
  }

  // assemble w_i: original ocean-ocean weights plus symmetrized island mass
  std::map<std::pair<Vertex, Vertex>, double> weights;  // canonical u <= v
  for (const auto& e : g.edges())
    if (!dec.in_a_i[e.u] && !dec.in_a_i[e.v]) weights[{e.u, e.v}] = e.weight;
  double worst = 0.0;
  for (const auto& [key, forward] : acc) {
    auto [u, v] = key;
    if (u > v) continue;
    if (u == v) {
      weights[{u, u}] += forward;
      continue;
    }
    auto it = acc.find({v, u});
    double backward = (it == acc.end()) ? 0.0 : it->second;
    double scale = std::max({std::abs(forward), std::abs(backward), 1e-300});
    worst = std::max(worst, std::abs(forward - backward) / scale);
    weights[{u, v}] += 0.5 * (forward + backward);
  }
  out.max_symmetry_error = worst;
  if (worst > 1e-9)
    fail(ErrorCode::SingularSystem,
         "induced weights asymmetric beyond tolerance: " + std::to_string(worst));

  GraphBuilder b;
  for (Vertex v : keep) b.add_vertex(g.id(v), g.is_frontier(v));
  for (const auto& [key, w] : weights) b.add_edge(g.id(key.first), g.id(key.second), w);
  out.graph = b.build();
  return out;
}

bool induced_cheeger_check(const InducedGraph& ind, double i, int enumeration_cap) {
  const WeightedGraph& gi = ind.graph;
  if (gi.interior_count() == 0) return true;
  auto t = SubsetTables::build(gi, gi.interior(), enumeration_cap);
  for (std::uint32_t m = 1; m < t.mask_count(); ++m)
    if (t.cut[m] < i * t.vol[m] - 1e-9) return false;
  return true;
}

}  // namespace anchored
