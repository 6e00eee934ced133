#include "anchored/walker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "anchored/rng.hpp"
#include "anchored/wg_io.hpp"

namespace anchored {

namespace {

// Shared bookkeeping for both walk flavors.
struct Tracker {
  WalkRecord rec;
  // induced statistics
  double max_land = 0.0;
  std::uint32_t min_dist_since_ocean = 0;
  bool have_pending = false;
  std::uint32_t last_dist = 0;

  void init(const WalkOptions& opt, bool induced) {
    rec.seed = opt.seed;
    rec.trajectory = opt.trajectory;
    rec.steps = opt.steps;
    rec.induced_tracked = induced;
    rec.distances.reserve(static_cast<size_t>(opt.steps));
    last_dist = 0;
    min_dist_since_ocean = 0;
    have_pending = false;
  }

  void step(std::uint64_t n, std::uint32_t dist, bool on_land, double land_volume) {
    int jump = static_cast<int>(dist) - static_cast<int>(last_dist);
    if (jump < -1 || jump > 1) ++rec.invariant_violations;
    last_dist = dist;
    rec.distances.push_back(dist);
    if (!rec.induced_tracked) return;

    if (!have_pending) {
      min_dist_since_ocean = dist;
      have_pending = true;
    } else {
      min_dist_since_ocean = std::min(min_dist_since_ocean, dist);
    }
    if (on_land) {
      if (land_volume > max_land) {
        // change point recorded at the next ocean index (m of the coming N_m)
        max_land = land_volume;
        rec.max_land_changes.emplace_back(
            static_cast<std::uint32_t>(rec.ocean_times.size() + 1), max_land);
      }
      return;
    }
    rec.ocean_times.push_back(static_cast<std::uint32_t>(n));
    // H_m = min over (N_{m-1}, N_m]; both record invariants checked here
    std::uint32_t h = min_dist_since_ocean;
    if (h > dist) ++rec.invariant_violations;
    if (static_cast<double>(dist) - max_land - 1.0 > static_cast<double>(h))
      ++rec.invariant_violations;
    have_pending = false;
  }
};

}  // namespace

double WalkRecord::max_land_at(std::uint32_t m) const {
  double v = 0.0;
  for (const auto& [at, vol] : max_land_changes) {
    if (at > m) break;
    v = vol;
  }
  return v;
}

std::uint32_t WalkRecord::h_at(std::uint32_t m) const {
  std::uint64_t lo = (m >= 2) ? ocean_times[m - 2] : 0;
  std::uint64_t hi = ocean_times[m - 1];
  std::uint32_t h = dist(lo + 1);
  for (std::uint64_t n = lo + 1; n <= hi; ++n) h = std::min(h, dist(n));
  return h;
}

WalkRecord simulate(const WeightedGraph& g, Vertex x0, const WalkOptions& opt,
                    const IslandDecomposition* dec) {
  if (g.is_frontier(x0))
    fail(ErrorCode::FrontierViolation, "walk start '" + g.id(x0) + "' is frontier");
  if (opt.steps >= (1ull << 32)) fail(ErrorCode::BadParameter, "step count exceeds 2^32");

  auto dist_table = bfs_distances(g, x0);
  std::vector<double> island_volume;
  if (dec) {
    if (dec->graph != &g) fail(ErrorCode::BadParameter, "decomposition for another graph");
    for (const auto& island : dec->islands) island_volume.push_back(volume(g, island));
  }

  Tracker tr;
  tr.init(opt, dec != nullptr);
  auto rng = CounterRng::stream(opt.seed, opt.trajectory);

  Vertex v = x0;
  for (std::uint64_t n = 1; n <= opt.steps; ++n) {
    double u = rng.next_unit() * g.vertex_weight(v);
    Vertex next = v;
    for (const auto& nb : g.neighbors(v)) {
      u -= nb.weight;
      if (u < 0.0) {
        next = nb.to;
        break;
      }
    }
    v = next;  // isolated vertices (weight 0) hold the walker in place
    bool on_land = dec && dec->in_a_i[v];
    double vol = on_land ? island_volume[dec->island_of[v]] : 0.0;
    tr.step(n, static_cast<std::uint32_t>(dist_table[v]), on_land, vol);
    if (g.is_frontier(v)) {
      tr.rec.killed_at = n;
      break;
    }
  }
  return tr.rec;
}

WalkRecord simulate(LazyGraph& lz, const WalkOptions& opt) {
  if (opt.steps >= (1ull << 32)) fail(ErrorCode::BadParameter, "step count exceeds 2^32");
  Tracker tr;
  tr.init(opt, true);
  auto rng = CounterRng::stream(opt.seed, opt.trajectory);

  LazyVertex v = lz.root();
  for (std::uint64_t n = 1; n <= opt.steps; ++n) {
    auto nbs = lz.neighbors(v);
    double total = 0.0;
    for (const auto& nb : nbs) total += nb.weight;
    double u = rng.next_unit() * total;
    LazyVertex next = v;
    for (const auto& nb : nbs) {
      u -= nb.weight;
      if (u < 0.0) {
        next = nb.to;
        break;
      }
    }
    v = next;
    double vol = lz.island_volume(v);
    tr.step(n, static_cast<std::uint32_t>(lz.distance(v)), vol > 0.0, vol);
  }
  return tr.rec;
}

namespace {

SpeedEstimate aggregate(std::vector<double> proxies, std::uint64_t horizon) {
  if (proxies.empty()) fail(ErrorCode::EmptyInput, "no trajectories");
  SpeedEstimate est;
  est.per_trajectory = std::move(proxies);
  est.n_used = horizon;
  double sum = 0.0;
  for (double p : est.per_trajectory) sum += p;
  est.mean = sum / est.per_trajectory.size();
  double var = 0.0;
  for (double p : est.per_trajectory) var += (p - est.mean) * (p - est.mean);
  std::size_t k = est.per_trajectory.size();
  double sd = k > 1 ? std::sqrt(var / (k - 1)) : 0.0;
  double half = 1.96 * sd / std::sqrt(static_cast<double>(k));
  est.ci_lo = est.mean - half;
  est.ci_hi = est.mean + half;
  return est;
}

void check_shared_horizon(const std::vector<WalkRecord>& records) {
  if (records.empty()) fail(ErrorCode::EmptyInput, "no trajectories");
  for (const auto& r : records)
    if (r.steps != records.front().steps)
      fail(ErrorCode::BadParameter, "records do not share a horizon");
}

}  // namespace

SpeedEstimate speed_estimate(const std::vector<WalkRecord>& records, double tail_fraction) {
  check_shared_horizon(records);
  if (!(tail_fraction > 0.0) || !(tail_fraction < 1.0))
    fail(ErrorCode::BadParameter, "tail fraction must lie in (0,1)");
  std::vector<double> proxies;
  proxies.reserve(records.size());
  for (const auto& r : records) {
    std::uint64_t end = r.effective_end();
    std::uint64_t window = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                                          tail_fraction * end));
    std::uint64_t start = end - window + 1;
    double best = 1.0;
    for (std::uint64_t n = start; n <= end; ++n)
      best = std::min(best, static_cast<double>(r.dist(n)) / static_cast<double>(n));
    proxies.push_back(best);
  }
  return aggregate(std::move(proxies), records.front().steps);
}

SpeedEstimate induced_speed_estimate(const std::vector<WalkRecord>& records,
                                     double tail_fraction) {
  check_shared_horizon(records);
  if (!(tail_fraction > 0.0) || !(tail_fraction < 1.0))
    fail(ErrorCode::BadParameter, "tail fraction must lie in (0,1)");
  std::vector<double> proxies;
  proxies.reserve(records.size());
  for (const auto& r : records) {
    if (!r.induced_tracked)
      fail(ErrorCode::MissingDecomposition, "record lacks induced-chain statistics");
    std::uint64_t m_max = r.ocean_times.size();
    if (m_max == 0) {
      proxies.push_back(0.0);
      continue;
    }
    std::uint64_t window = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                                          tail_fraction * m_max));
    std::uint64_t start = m_max - window + 1;
    double best = 1.0;
    for (std::uint64_t m = start; m <= m_max; ++m) {
      double ratio = static_cast<double>(r.dist(r.ocean_times[m - 1])) / static_cast<double>(m);
      best = std::min(best, ratio);
    }
    proxies.push_back(best);
  }
  return aggregate(std::move(proxies), records.front().steps);
}

ReturnProbability return_probability_mc(const WeightedGraph& g, Vertex x0, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::BadParameter, "need at least one trial");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    WalkOptions opt{n, seed, static_cast<std::uint32_t>(t)};
    auto rec = simulate(g, x0, opt);
    if (!rec.killed_at && (n == 0 || rec.dist(n) == 0)) ++hits;
  }
  double p = static_cast<double>(hits) / trials;
  return {p, std::sqrt(p * (1.0 - p) / trials), trials};
}

ReturnProbability return_probability_mc(const FamilySpec& family, std::uint64_t n,
                                        std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::BadParameter, "need at least one trial");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto lz = family.instantiate();
    WalkOptions opt{n, seed, static_cast<std::uint32_t>(t)};
    auto rec = simulate(*lz, opt);
    if (n == 0 || rec.dist(n) == 0) ++hits;
  }
  double p = static_cast<double>(hits) / trials;
  return {p, std::sqrt(p * (1.0 - p) / trials), trials};
}

std::string walk_csv(const std::vector<WalkRecord>& records) {
  std::string out = "trajectory,n,dist,ratio\n";
  for (const auto& r : records) {
    std::uint64_t end = r.effective_end();
    if (end == 0) continue;
    std::uint64_t stride = std::max<std::uint64_t>(1, r.steps / 1024);
    for (std::uint64_t n = stride; n <= end; n += stride) {
      out += std::to_string(r.trajectory) + "," + std::to_string(n) + "," +
             std::to_string(r.dist(n)) + "," +
             format_double(static_cast<double>(r.dist(n)) / static_cast<double>(n)) + "\n";
    }
    if (end % stride != 0)
      out += std::to_string(r.trajectory) + "," + std::to_string(end) + "," +
             std::to_string(r.dist(end)) + "," +
             format_double(static_cast<double>(r.dist(end)) / static_cast<double>(end)) + "\n";
  }
  return out;
}

std::vector<WalkRecord> run_walks(const WalkSource& source, std::uint32_t trials,
                                  std::uint64_t steps, std::uint64_t seed, int jobs) {
  if (!source.graph && !source.family)
    fail(ErrorCode::BadParameter, "walk source needs a graph or a family");
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, trials == 0 ? 1 : trials));

  std::vector<WalkRecord> records(trials);
  auto work = [&](std::uint32_t t) {
    WalkOptions opt{steps, seed, t};
    if (source.graph) {
      records[t] = simulate(*source.graph, source.x0, opt, source.dec);
    } else {
      auto lz = source.family->instantiate();
      records[t] = simulate(*lz, opt);
    }
  };
  if (jobs == 1) {
    for (std::uint32_t t = 0; t < trials; ++t) work(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::uint32_t> next{0};
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        while (true) {
          std::uint32_t t = next.fetch_add(1);
          if (t >= trials) return;
          work(t);
        }
      });
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace anchored
