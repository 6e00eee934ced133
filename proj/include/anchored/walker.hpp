#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anchored/generators.hpp"
#include "anchored/graph.hpp"
#include "anchored/isolation.hpp"

namespace anchored {

struct WalkOptions {
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  std::uint32_t trajectory = 0;  // RNG stream index
};

// One seeded trajectory. |X_n| is the hop distance from the start; on lazy
// sources the start is the family root and distances come from the
// generator's labels. Induced statistics (ocean visit times N_m, running max
// land volume M_m) are tracked when a decomposition or island oracle is
// available.
struct WalkRecord {
  std::uint64_t seed = 0;
  std::uint32_t trajectory = 0;
  std::uint64_t steps = 0;
  std::vector<std::uint32_t> distances;  // |X_n| for n = 1..effective_end()
  std::optional<std::uint64_t> killed_at;
  bool induced_tracked = false;
  std::vector<std::uint32_t> ocean_times;                          // N_m
  std::vector<std::pair<std::uint32_t, double>> max_land_changes;  // (m, M_m)
  std::uint64_t invariant_violations = 0;  // step-size or H_m bracket breaches

  bool operator==(const WalkRecord&) const = default;

  std::uint64_t effective_end() const {
    return killed_at ? std::min(*killed_at, steps) : steps;
  }
  std::uint32_t dist(std::uint64_t n) const { return distances[n - 1]; }
  // M_m: running max land volume among islands visited by time N_m.
  double max_land_at(std::uint32_t m) const;
  // H_m = inf over (N_{m-1}, N_m] of |X_n|.
  std::uint32_t h_at(std::uint32_t m) const;
  std::uint64_t island_time_at(std::uint32_t m) const {  // K_m = N_m - m
    return ocean_times[m - 1] - m;
  }
};

WalkRecord simulate(const WeightedGraph& g, Vertex x0, const WalkOptions& opt,
                    const IslandDecomposition* dec = nullptr);
WalkRecord simulate(LazyGraph& lz, const WalkOptions& opt);

struct SpeedEstimate {
  std::vector<double> per_trajectory;  // tail-window min of |X_n|/n
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t n_used = 0;  // shared horizon
};

// liminf proxy: per trajectory the minimum of |X_n|/n over the trailing
// `tail_fraction` of the (surviving) horizon, aggregated with a normal 95%
// interval. The proxy is conservative and is never claimed to equal the
// true liminf.
SpeedEstimate speed_estimate(const std::vector<WalkRecord>& records,
                             double tail_fraction = 0.5);

// Same estimator over the induced index: m -> |X_{N_m}| / m.
SpeedEstimate induced_speed_estimate(const std::vector<WalkRecord>& records,
                                     double tail_fraction = 0.5);

struct ReturnProbability {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

ReturnProbability return_probability_mc(const WeightedGraph& g, Vertex x0, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed);
ReturnProbability return_probability_mc(const FamilySpec& family, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed);

// Trajectory batch with per-trajectory RNG streams (seed, 0..trials-1),
// run on up to `jobs` threads (0 = hardware parallelism). Results are
// independent of the thread count.
struct WalkSource {
  const WeightedGraph* graph = nullptr;  // with optional decomposition
  Vertex x0 = 0;
  const IslandDecomposition* dec = nullptr;
  const FamilySpec* family = nullptr;    // exclusive with graph
};
std::vector<WalkRecord> run_walks(const WalkSource& source, std::uint32_t trials,
                                  std::uint64_t steps, std::uint64_t seed, int jobs = 0);

// CSV "trajectory,n,dist,ratio" sampled at <= 1024 checkpoints per trajectory
// (always including the final surviving step). Deterministic formatting.
std::string walk_csv(const std::vector<WalkRecord>& records);

}  // namespace anchored
