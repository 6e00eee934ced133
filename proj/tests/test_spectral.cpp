#include <doctest.h>

#include <cmath>

#include "anchored/isolation.hpp"
#include "anchored/spectral.hpp"
#include "anchored/territories.hpp"
#include "fixtures.hpp"
#include "random_graphs.hpp"

using namespace anchored;

TEST_CASE("dirichlet norm endpoints") {
  auto dead = build_graph({{"v", "f", 1}}, {"f"});
  CHECK(dirichlet_norm(dead) == 0.0);  // nilpotent: killed in one step

  auto loop = build_graph({{"v", "v", 1}});
  CHECK(dirichlet_norm(loop) == doctest::Approx(1.0).epsilon(1e-9));

  auto tree3 = fixtures::tree3();
  double nrm = dirichlet_norm(tree3);
  CHECK(nrm <= std::sqrt(1.0 - 0.4 * 0.4) + 1e-9);
  CHECK(nrm > 0.5);
}

TEST_CASE("dirichlet norm below sqrt(1-h^2) on random instances") {
  for (std::uint64_t seed = 6000; seed < 6040; ++seed) {
    auto g = testutil::random_graph(seed, 10, /*ensure_frontier=*/true);
    if (g.interior_count() == 0) continue;
    double h = cheeger_constant(g).value;
    double nrm = dirichlet_norm(g);
    CAPTURE(seed);
    CHECK(nrm <= std::sqrt(std::max(0.0, 1.0 - h * h)) + 1e-9);
  }
}

TEST_CASE("heat kernel rows") {
  auto c4 = fixtures::c4();
  auto r0 = heat_kernel_row(c4, c4.vertex("v0"), 0);
  CHECK(r0.self_prob == 1.0);
  CHECK(r0.killed_mass == 0.0);

  auto r2 = heat_kernel_row(c4, c4.vertex("v0"), 2);
  KernelView k(c4);
  CHECK(r2.self_prob == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2.at(k, c4.vertex("v2")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r2.at(k, c4.vertex("v1")) == 0.0);

  auto kite = fixtures::kite();
  auto r1 = heat_kernel_row(kite, kite.vertex("a"), 1);
  KernelView kk(kite);
  CHECK(r1.at(kk, kite.vertex("b")) == doctest::Approx(0.5));
  CHECK(r1.at(kk, kite.vertex("c")) == doctest::Approx(0.5));
}

TEST_CASE("heat kernel conservation and reversibility") {
  for (std::uint64_t seed = 6100; seed < 6120; ++seed) {
    auto g = testutil::random_graph(seed, 10, /*ensure_frontier=*/true);
    if (g.interior_count() < 2) continue;
    KernelView k(g);
    auto interior = g.interior();
    Vertex x = interior[seed % interior.size()];
    Vertex y = interior[(seed / 3) % interior.size()];
    for (int n : {1, 3, 6}) {
      auto rx = heat_kernel_row(g, x, n);
      double mass = rx.killed_mass;
      for (double p : rx.prob) mass += p;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
      auto ry = heat_kernel_row(g, y, n);
      double lhs = g.vertex_weight(x) * rx.at(k, y);
      double rhs = g.vertex_weight(y) * ry.at(k, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("green norm partial sums bounded by 2/h^2") {
  auto tree3 = fixtures::tree3();
  double h = cheeger_constant(tree3).value;
  KernelView k(tree3);
  std::vector<double> f(k.dim(), 0.0), next;
  f[k.index_of(tree3.vertex("n"))] = 1.0;
  double base = k.norm(f);
  double acc = 0.0;
  for (int m = 0; m <= 60; ++m) {
    acc += k.norm(f);
    CHECK(acc <= 2.0 / (h * h) * base * (1.0 + 1e-9));
    k.apply(f, next);
    f.swap(next);
  }
}

TEST_CASE("lemma time bounds arithmetic") {
  auto b = lemma_time_bounds(2.0, 0.25, 1.0 / 7.0, 0, 1.0, 7.0);
  CHECK(b.p_bound == doctest::Approx(2.0 / std::sqrt(2.0) * 16.0).epsilon(1e-12));

  auto b0 = lemma_time_bounds(2.0, 0.25, 1.0 / 7.0, 3, 5.0, 7.0);
  auto b2 = lemma_time_bounds(2.0, 0.25, 1.0 / 7.0, 5, 5.0, 7.0);
  double factor = 1.0 - 0.25 * 0.25;
  CHECK(b2.p_bound == doctest::Approx(b0.p_bound * factor).epsilon(1e-12));
  CHECK(b2.e_bound == doctest::Approx(b0.e_bound * factor).epsilon(1e-12));
  CHECK(b2.e2_bound == doctest::Approx(b0.e2_bound * factor).epsilon(1e-12));

  // fallback i' = 1/|S|
  auto bf = lemma_time_bounds(2.0, 0.25, 1.0 / 7.0, 0, 1.0, 7.0);
  CHECK(bf.e_bound == doctest::Approx(2.0 / std::sqrt(2.0) * 49.0 * std::sqrt(7.0)).epsilon(1e-12));

  CHECK_THROWS_AS(lemma_time_bounds(2.0, 0.25, 0.5, 0, 1.0, 7.0), Error);
}

TEST_CASE("exact hitting stats on the trap fixture") {
  auto trap = fixtures::trap();
  auto s = make_set(trap, {"a", "b", "c"});
  auto stats = exact_hitting_stats(trap, trap.vertex("r"), s);
  CHECK(stats.p_positive == doctest::Approx(3.0 / 17.0).epsilon(1e-12));
  CHECK(stats.expected_time == doctest::Approx(7.0 / 4.0).epsilon(1e-12));
  CHECK(stats.expected_time_sq >= stats.expected_time);  // T integer-valued

  auto inside = exact_hitting_stats(trap, trap.vertex("a"), s);
  CHECK(inside.p_positive == doctest::Approx(1.0).epsilon(1e-12));

  auto c4 = fixtures::c4();  // no killing anywhere
  CHECK_THROWS_AS(exact_hitting_stats(c4, c4.vertex("v0"), make_set(c4, {"v2"})), Error);
}

TEST_CASE("hitting stats below lemma bounds on qualifying instances") {
  int qualifying = 0;
  for (std::uint64_t seed = 6200; seed < 6320 && qualifying < 40; ++seed) {
    auto g = testutil::random_graph(seed, 11, /*ensure_frontier=*/true);
    double i = 0.5;
    auto dec = compute_A_i(g, i);
    if (dec.islands.empty()) continue;
    const auto& island = dec.islands[0];
    double vol = volume(g, island);
    double i_prime = 1.0 / vol;
    if (!(i_prime <= i)) continue;
    // S must avoid A_{i'}
    auto dec_prime = compute_A_i(g, i_prime);
    if (!set_intersection(island, dec_prime.a_i).empty()) continue;
    auto field = dist_i_field(dec, island);
    for (Vertex x : dec.ocean) {
      auto stats = exact_hitting_stats(g, x, island);
      int n = field[x];
      if (n < 1) continue;
      auto bounds = lemma_time_bounds(g.vertex_weight(x), i, i_prime, n - 1,
                                      boundary_weight(g, island), vol);
      CAPTURE(seed);
      CHECK(stats.p_positive <= bounds.p_bound + 1e-12);
      CHECK(stats.expected_time <= bounds.e_bound + 1e-12);
      CHECK(stats.expected_time_sq <= bounds.e2_bound + 1e-12);
      ++qualifying;
    }
  }
  CHECK(qualifying >= 40);
}

TEST_CASE("growth rate") {
  // path graph grows linearly
  GraphBuilder pb;
  for (int k = 0; k + 1 < 40; ++k)
    pb.add_edge("p" + std::to_string(k / 10) + std::to_string(k % 10),
                "p" + std::to_string((k + 1) / 10) + std::to_string((k + 1) % 10), 1);
  auto path = pb.build();
  auto ge = growth_rate(path, path.vertex("p00"));
  CHECK(ge.g <= 1.25);

  auto one = build_graph({{"v", "v", 1}});
  CHECK(growth_rate(one, 0).g == 1.0);
}

TEST_CASE("speed bounds") {
  auto b = speed_lower_bounds(1.0 / 3.0, 3.0);
  CHECK(b.induced_bound == doctest::Approx(0.10721).epsilon(1e-4));
  CHECK(b.main_bound_shape == doctest::Approx(std::pow(1.0 / 3.0, 7) / 27.0).epsilon(1e-12));

  auto tiny = speed_lower_bounds(1e-6, 3.0);
  CHECK(tiny.induced_bound < 1e-10);  // bound vanishes with i

  CHECK(growth_lemma_bound(std::sqrt(8.0 / 9.0), 2.0) == doctest::Approx(0.16993).epsilon(1e-4));
  CHECK_THROWS_AS(speed_lower_bounds(0.5, 1.0), Error);
}

TEST_CASE("heat bound params") {
  auto p = heat_bound_params(0.5, 3.0);
  CHECK(p.alpha == doctest::Approx(0.25 * std::pow(4.5, -1.0 / 3.0) / 9.0).epsilon(1e-12));
  CHECK(p.alpha > 0.0);
  CHECK_THROWS_AS(heat_bound_params(0.0, 3.0), Error);
}
