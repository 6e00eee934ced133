#include "anchored/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace anchored {

KernelView::KernelView(const WeightedGraph& g) : g_(&g) {
  verts_ = g.interior();
  index_.assign(g.size(), -1);
  for (size_t j = 0; j < verts_.size(); ++j) index_[verts_[j]] = static_cast<int>(j);
  weight_.reserve(verts_.size());
  for (Vertex v : verts_) weight_.push_back(g.vertex_weight(v));
}

void KernelView::apply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(verts_.size(), 0.0);
  for (size_t j = 0; j < verts_.size(); ++j) {
    Vertex v = verts_[j];
    double acc = 0.0;
    for (const auto& nb : g_->neighbors(v)) {
      int k = index_[nb.to];
      if (k >= 0) acc += nb.weight * x[k];
    }
    y[j] = acc / weight_[j];
  }
}

double KernelView::step_distribution(const std::vector<double>& mu,
                                     std::vector<double>& out) const {
  out.assign(verts_.size(), 0.0);
  double killed = 0.0;
  for (size_t j = 0; j < verts_.size(); ++j) {
    if (mu[j] == 0.0) continue;
    Vertex v = verts_[j];
    double inv_w = 1.0 / weight_[j];
    for (const auto& nb : g_->neighbors(v)) {
      double mass = mu[j] * nb.weight * inv_w;
      int k = index_[nb.to];
      if (k >= 0)
        out[k] += mass;
      else
        killed += mass;
    }
  }
  return killed;
}

double KernelView::inner(const std::vector<double>& x, const std::vector<double>& y) const {
  double acc = 0.0;
  for (size_t j = 0; j < verts_.size(); ++j) acc += x[j] * y[j] * weight_[j];
  return acc;
}

double KernelView::norm(const std::vector<double>& x) const { return std::sqrt(inner(x, x)); }

double dirichlet_norm(const WeightedGraph& g) {
  if (g.interior_count() == 0)
    fail(ErrorCode::NoInteriorVertex, "kernel norm needs an interior vertex");
  KernelView k(g);
  const int n = k.dim();
  std::vector<double> x(n), px(n), ppx(n);
  for (int j = 0; j < n; ++j) x[j] = 1.0 + 1e-6 * ((j % 7) + 1);  // deterministic seed vector
  double nx = k.norm(x);
  if (nx == 0.0) return 0.0;
  for (double& v : x) v /= nx;

  double lambda_sq = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    k.apply(x, px);
    k.apply(px, ppx);  // P*P = P^2 for the self-adjoint kernel
    double next = k.inner(x, ppx);
    double nn = k.norm(ppx);
    if (nn <= 1e-300) return 0.0;  // nilpotent kernel
    for (int j = 0; j < n; ++j) x[j] = ppx[j] / nn;
    if (iter > 0 && std::abs(next - lambda_sq) <= 1e-10 * std::max(next, 1e-30)) {
      return std::sqrt(std::max(0.0, next));
    }
    lambda_sq = next;
  }
  fail(ErrorCode::NonConvergence, "power iteration did not converge in 1e5 rounds");
}

double HeatKernelRow::max_prob() const {
  double m = 0.0;
  for (double p : prob) m = std::max(m, p);
  return m;
}

HeatKernelRow heat_kernel_row(const WeightedGraph& g, Vertex x, int n) {
  if (g.is_frontier(x)) fail(ErrorCode::FrontierViolation, "source is a frontier vertex");
  if (n < 0) fail(ErrorCode::BadParameter, "negative step count");
  KernelView k(g);
  HeatKernelRow row;
  row.source = x;
  row.steps = n;
  row.vertices = k.vertices();
  row.prob.assign(k.dim(), 0.0);
  row.prob[k.index_of(x)] = 1.0;
  std::vector<double> next;
  for (int s = 0; s < n; ++s) {
    row.killed_mass += k.step_distribution(row.prob, next);
    row.prob.swap(next);
  }
  row.self_prob = row.prob[k.index_of(x)];
  return row;
}

HeatKernelSeries heat_kernel_series(const WeightedGraph& g, Vertex x, int n) {
  if (g.is_frontier(x)) fail(ErrorCode::FrontierViolation, "source is a frontier vertex");
  KernelView k(g);
  HeatKernelSeries out;
  std::vector<double> mu(k.dim(), 0.0), next;
  mu[k.index_of(x)] = 1.0;
  double killed = 0.0;
  for (int s = 0; s <= n; ++s) {
    out.self_prob.push_back(mu[k.index_of(x)]);
    out.sup_prob.push_back(*std::max_element(mu.begin(), mu.end()));
    out.killed_mass.push_back(killed);
    if (s == n) break;
    killed += k.step_distribution(mu, next);
    mu.swap(next);
  }
  return out;
}

HeatBoundParams heat_bound_params(double i_anchor, double w0) {
  if (!(i_anchor > 0.0) || !(w0 > 0.0))
    fail(ErrorCode::BadParameter, "alpha needs i > 0 and w0 > 0");
  HeatBoundParams p;
  p.i_anchor = i_anchor;
  p.w0 = w0;
  p.alpha = i_anchor * i_anchor * std::pow(w0 * w0 / 2.0, -1.0 / 3.0) / 9.0;
  return p;
}

TimeBounds lemma_time_bounds(double w_x, double i, double i_prime, int n,
                             double boundary_volume, double set_volume) {
  if (!(i_prime > 0.0) || !(i_prime <= i) || !(i < 1.0) || n < 0 || !(w_x > 0.0))
    fail(ErrorCode::BadParameter, "need 0 < i' <= i < 1, n >= 0, w_x > 0");
  if (boundary_volume < 0.0 || set_volume < 0.0)
    fail(ErrorCode::BadParameter, "volumes must be nonnegative");
  double decay = std::pow(1.0 - i * i, n / 2.0);
  double root_wx = std::sqrt(w_x);
  TimeBounds b;
  b.p_bound = 2.0 / root_wx * decay / (i * i) * std::sqrt(boundary_volume);
  b.e_bound = 2.0 / root_wx * decay / (i_prime * i_prime) * std::sqrt(set_volume);
  b.e2_bound = 8.0 / root_wx * decay / (i_prime * i_prime * i_prime * i_prime) *
               std::sqrt(set_volume);
  return b;
}

namespace {

// Component of x reachable through interior vertices.
VertexSet interior_component(const WeightedGraph& g, Vertex x) {
  VertexSet comp;
  std::vector<char> seen(g.size(), 0);
  std::deque<Vertex> dq{x};
  seen[x] = 1;
  while (!dq.empty()) {
    Vertex v = dq.front();
    dq.pop_front();
    comp.push_back(v);
    for (const auto& nb : g.neighbors(v))
      if (!seen[nb.to] && !g.is_frontier(nb.to)) {
        seen[nb.to] = 1;
        dq.push_back(nb.to);
      }
  }
  std::sort(comp.begin(), comp.end());
  return comp;
}

}  // namespace

HittingStats exact_hitting_stats(const WeightedGraph& g, Vertex x, const VertexSet& s) {
  if (g.is_frontier(x)) fail(ErrorCode::FrontierViolation, "start is a frontier vertex");
  validate_set(g, s);

  VertexSet comp = interior_component(g, x);
  const int n = static_cast<int>(comp.size());
  std::vector<int> idx(g.size(), -1);
  for (int j = 0; j < n; ++j) idx[comp[j]] = j;

  bool has_killing = false;
  for (Vertex v : comp)
    for (const auto& nb : g.neighbors(v))
      if (g.is_frontier(nb.to)) has_killing = true;
  bool touches_s = !set_intersection(comp, s).empty();
  if (!has_killing && touches_s)
    fail(ErrorCode::SingularSystem,
         "walk from '" + g.id(x) + "' cannot be killed but meets S: T is infinite");
  if (!touches_s) return {0.0, 0.0, 0.0};  // S out of reach (x in S implies touching)

  Eigen::SparseMatrix<double> m(n, n);  // I - P restricted to the component
  std::vector<Eigen::Triplet<double>> trip;
  for (int j = 0; j < n; ++j) {
    trip.emplace_back(j, j, 1.0);
    Vertex v = comp[j];
    double w = g.vertex_weight(v);
    for (const auto& nb : g.neighbors(v))
      if (idx[nb.to] >= 0) trip.emplace_back(j, idx[nb.to], -nb.weight / w);
  }
  m.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(m);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::SingularSystem, "hitting-time system is singular");

  std::vector<char> in_s(g.size(), 0);
  for (Vertex v : s) in_s[v] = 1;

  // h: hit probability. h = 1 on S; elsewhere h = P h (off-S rows only).
  // Solve via t-style system on the complement by moving S mass to the rhs.
  Eigen::VectorXd hit(n);
  {
    // (I - P_off) h_off = P 1_S restricted off S; assemble a reduced system
    std::vector<int> off;  // component vertices outside S
    for (int j = 0; j < n; ++j)
      if (!in_s[comp[j]]) off.push_back(j);
    const int k = static_cast<int>(off.size());
    std::vector<int> offidx(n, -1);
    for (int a = 0; a < k; ++a) offidx[off[a]] = a;
    Eigen::SparseMatrix<double> mo(k, k);
    std::vector<Eigen::Triplet<double>> t2;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (int a = 0; a < k; ++a) {
      t2.emplace_back(a, a, 1.0);
      Vertex v = comp[off[a]];
      double w = g.vertex_weight(v);
      for (const auto& nb : g.neighbors(v)) {
        if (in_s[nb.to]) {
          rhs(a) += nb.weight / w;
        } else if (idx[nb.to] >= 0 && offidx[idx[nb.to]] >= 0) {
          t2.emplace_back(a, offidx[idx[nb.to]], -nb.weight / w);
        }
      }
    }
    mo.setFromTriplets(t2.begin(), t2.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu2(mo);
    if (lu2.info() != Eigen::Success)
      fail(ErrorCode::SingularSystem, "hit-probability system is singular");
    Eigen::VectorXd ho = lu2.solve(rhs);
    for (int j = 0; j < n; ++j) hit(j) = in_s[comp[j]] ? 1.0 : 0.0;
    for (int a = 0; a < k; ++a) hit(off[a]) = ho(a);
  }

  // t = E[T]: t = 1_S + P t on the whole component.
  Eigen::VectorXd ind = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    if (in_s[comp[j]]) ind(j) = 1.0;
  Eigen::VectorXd t = lu.solve(ind);

  // u = E[sum_s 1_S(X_s) t(X_s)]: u = (1_S . t) + P u; then E[T^2] = 2u - t.
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    if (in_s[comp[j]]) phi(j) = t(j);
  Eigen::VectorXd u = lu.solve(phi);

  int jx = idx[x];
  return {hit(jx), t(jx), 2.0 * u(jx) - t(jx)};
}

GrowthEstimate growth_rate(const WeightedGraph& g, Vertex anchor) {
  auto dist = bfs_distances(g, anchor);
  int radius = 0;
  for (Vertex v = 0; v < g.size(); ++v) radius = std::max(radius, dist[v]);
  std::vector<double> ball(radius + 1, 0.0);
  for (Vertex v = 0; v < g.size(); ++v)
    if (dist[v] >= 0) ball[dist[v]] += g.vertex_weight(v);
  for (int r = 1; r <= radius; ++r) ball[r] += ball[r - 1];

  GrowthEstimate out;
  for (int r = 1; r <= radius; ++r) out.ratios.push_back(std::pow(ball[r], 1.0 / r));
  if (out.ratios.empty()) {
    out.g = 1.0;
    return out;
  }
  size_t tail_start = out.ratios.size() - (out.ratios.size() + 2) / 3;
  double m = 0.0;
  for (size_t r = tail_start; r < out.ratios.size(); ++r) m = std::max(m, out.ratios[r]);
  out.g = std::max(1.0, m);
  return out;
}

SpeedBounds speed_lower_bounds(double i, double w0) {
  if (!(i > 0.0) || !(i < 1.0) || !(w0 > 1.0))
    fail(ErrorCode::BadParameter, "need 0 < i < 1 and w0 > 1");
  SpeedBounds b;
  b.induced_bound = std::abs(std::log(1.0 - i * i)) / std::log(w0);
  b.main_bound_shape = std::pow(i, 7) / (w0 * w0 * w0);
  return b;
}

double growth_lemma_bound(double p_norm, double g) {
  if (!(p_norm > 0.0) || !(p_norm < 1.0) || !(g > 1.0))
    fail(ErrorCode::BadParameter, "need 0 < |P| < 1 and g > 1");
  return -2.0 * std::log(p_norm) / std::log(g);
}

}  // namespace anchored
