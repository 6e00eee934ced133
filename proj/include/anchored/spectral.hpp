#pragma once

#include <vector>

#include "anchored/graph.hpp"

namespace anchored {

// Killed transition kernel p(u,v) = w((u,v))/w(u) over the non-frontier
// vertices; mass stepping onto the frontier is absorbed. Reversible w.r.t.
// the vertex weights, so the operator is self-adjoint on L^2(interior, w).
class KernelView {
 public:
  explicit KernelView(const WeightedGraph& g);

  const WeightedGraph& graph() const { return *g_; }
  int dim() const { return static_cast<int>(verts_.size()); }
  const VertexSet& vertices() const { return verts_; }
  int index_of(Vertex v) const { return index_[v]; }

  // y = P x as functions on the interior: (Px)(v) = sum_u p(v,u) x(u).
  void apply(const std::vector<double>& x, std::vector<double>& y) const;

  // Distribution evolution mu -> mu P; returns the mass killed this step.
  double step_distribution(const std::vector<double>& mu, std::vector<double>& out) const;

  // L^2(w) inner product and norm on interior functions.
  double inner(const std::vector<double>& x, const std::vector<double>& y) const;
  double norm(const std::vector<double>& x) const;

 private:
  const WeightedGraph* g_;
  VertexSet verts_;            // interior vertices
  std::vector<int> index_;     // vertex -> dense index, -1 on frontier
  std::vector<double> weight_; // w(v) per dense index
};

// Operator norm of the killed kernel, by power iteration on P*P
// (relative tolerance 1e-10, at most 1e5 iterations).
double dirichlet_norm(const WeightedGraph& g);

struct HeatKernelRow {
  Vertex source = 0;
  int steps = 0;
  VertexSet vertices;               // interior vertices (dense order)
  std::vector<double> prob;         // p^n(x, .)
  double killed_mass = 0.0;

  double at(const KernelView& k, Vertex v) const { return prob[k.index_of(v)]; }
  double max_prob() const;
  double self_prob = 0.0;           // p^n(x, x)
};

// Exact n-step killed-walk distribution from x (n sparse kernel applications).
HeatKernelRow heat_kernel_row(const WeightedGraph& g, Vertex x, int n);

// Full diagonal trace: p^k(x,x), sup_y p^k(x,y) and killed mass for k = 0..n.
struct HeatKernelSeries {
  std::vector<double> self_prob;
  std::vector<double> sup_prob;
  std::vector<double> killed_mass;
};
HeatKernelSeries heat_kernel_series(const WeightedGraph& g, Vertex x, int n);

// alpha = i^2 (w0^2/2)^(-1/3) / 9, the heat-kernel decay exponent.
struct HeatBoundParams {
  double i_anchor = 0.0;
  double w0 = 0.0;
  double alpha = 0.0;
};
HeatBoundParams heat_bound_params(double i_anchor, double w0);

// The three closed-form bounds on the time T spent in a set S by a walk
// started at distance dist_i >= n+1: (P(T>0), E[T], E[T^2]) bounds.
struct TimeBounds {
  double p_bound = 0.0;
  double e_bound = 0.0;
  double e2_bound = 0.0;
};
TimeBounds lemma_time_bounds(double w_x, double i, double i_prime, int n,
                             double boundary_volume, double set_volume);

// Exact (P_x(T>0), E_x[T], E_x[T^2]) for T = #{n >= 0 : X_n in S} of the
// killed walk, by three linear solves on the component of x.
struct HittingStats {
  double p_positive = 0.0;
  double expected_time = 0.0;
  double expected_time_sq = 0.0;
};
HittingStats exact_hitting_stats(const WeightedGraph& g, Vertex x, const VertexSet& s);

// Ball-volume growth from an anchor: ratios |B_n|^{1/n} and their max over
// the last third of radii (clamped to >= 1).
struct GrowthEstimate {
  std::vector<double> ratios;
  double g = 1.0;
};
GrowthEstimate growth_rate(const WeightedGraph& g, Vertex anchor);

// Closed-form speed lower bounds.
struct SpeedBounds {
  double induced_bound = 0.0;     // |log(1-i^2)| / log w0
  double main_bound_shape = 0.0;  // i^7 w0^{-3}, constant factor unknown
};
SpeedBounds speed_lower_bounds(double i, double w0);

// -2 log|P| / log g, the growth-lemma form of the speed bound.
double growth_lemma_bound(double p_norm, double g);

}  // namespace anchored
