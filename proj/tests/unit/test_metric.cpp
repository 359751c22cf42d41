#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "../support/brute_force.hpp"
#include "pod/metric.hpp"
#include "pod/oracle.hpp"

using namespace pod;

namespace {

template <class I>
double brute_shp(const I& g) {
  const int n = static_cast<int>(g.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : brute::all_paths(n)) {
    double c = 0;
    for (std::size_t i = 0; i + 1 < o.size(); ++i) c += g.distance(static_cast<Vertex>(o[i]), static_cast<Vertex>(o[i + 1]));
    best = std::min(best, c);
  }
  return best;
}

template <class I>
double brute_tsp(const I& g) {
  const int n = static_cast<int>(g.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : brute::all_tours(n)) {
    double c = 0;
    for (std::size_t i = 0; i < o.size(); ++i)
      c += g.distance(static_cast<Vertex>(o[i]), static_cast<Vertex>(o[(i + 1) % o.size()]));
    best = std::min(best, c);
  }
  return best;
}

}  // namespace

TEST_CASE("exact_shp") {
  const auto line = make_uniform_line(9);
  const HamPath id = exact_shp(line, 0, 8);
  CHECK(path_cost(line, id) == 8.0);
  CHECK(id.order() == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(exact_shp(line, 8, 0).front() == 8);

  const auto w = make_shp_witness(10, 8.0);
  CHECK(path_cost(w, exact_shp(w, 0, 9)) == 16.0);
  const auto wm = to_metric(w);
  const HamPath dp = exact_shp(wm, 0, 9);
  CHECK(path_cost(wm, dp) == 16.0);

  const auto two = make_uniform_line(2);
  CHECK(exact_shp(two, 0, 1).order() == std::vector<Vertex>{0, 1});
  CHECK_THROWS_AS(exact_shp(two, 0, 0), PreconditionError);
}

TEST_CASE("exact_tsp") {
  const auto c7 = make_uniform_circle(7);
  CHECK(tour_cost(c7, exact_tsp(c7)) == 7.0);
  const auto w = make_tsp_witness(7, 2.5);
  CHECK(tour_cost(w, exact_tsp(w)) == 10.0);
  CHECK(tour_cost(w, exact_tsp(to_metric(w))) == 10.0);
  const auto c3 = make_uniform_circle(3);
  CHECK(exact_tsp(c3).order() == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("held-karp agrees with brute force on random metrics") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 6;
    const auto g = make_random_metric(n, seed);
    CHECK(tour_cost(g, exact_tsp(g)) == brute_tsp(g));
    CHECK(path_cost(g, exact_shp(g, 0, n - 1)) == brute_shp(g));
  }
  // A circle with one segment longer than half the circumference falls back to the DP.
  const CircleInstance lopsided({0.0, 1.0, 2.0, 3.0}, 20.0);
  CHECK(tour_cost(lopsided, exact_tsp(lopsided)) == brute_tsp(lopsided));
}

TEST_CASE("exact solver budget") {
  const auto g = make_random_metric(12, 3);
  ExactSolverBudget small;
  small.max_n = 10;
  CHECK_THROWS_AS(exact_tsp(g, small), ResourceError);
  CHECK_THROWS_AS(exact_shp(g, 0, 11, small), ResourceError);
  // Closed forms ignore the budget.
  CHECK_NOTHROW(exact_shp(make_uniform_line(40), 0, 39, small));
  CHECK_NOTHROW(exact_tsp(make_uniform_circle(40), small));
}

TEST_CASE("shp2_metric on the uniform line") {
  const auto r = shp2_metric(make_uniform_line(8), 0, 7);
  CHECK(r.pair.objective == 13.0);
  CHECK(r.baseline_cost == 7.0);
  CHECK(r.pair.objective <= 3.0 * r.baseline_cost);
  CHECK(*std::max_element(r.cover_a.begin(), r.cover_a.end()) <= 3);
  CHECK(*std::max_element(r.cover_b.begin(), r.cover_b.end()) <= 3);
  CHECK_THROWS_AS(shp2_metric(make_uniform_line(5), 0, 4), InfeasibleError);
}

TEST_CASE("shp2_metric on the heavy witness stays within 3 OPT and above the oracle") {
  const auto w = make_shp_witness(10, 152.0);
  const auto r = shp2_metric(w, 0, 9);
  const double opt = 160.0;
  CHECK(r.baseline_cost == opt);
  CHECK(r.pair.objective <= 3.0 * opt);
  OracleOptions o;
  o.bound = 3.0 * opt;
  const auto best = search_path_pairs(w, o);
  REQUIRE(best.feasible);
  CHECK(*best.min_max_cost >= (3.0 - 0.1) * opt - 1e-9);
  CHECK(r.pair.objective >= *best.min_max_cost);
}

TEST_CASE("shp2_metric when every baseline edge but one is free") {
  std::vector<std::vector<double>> d(7, std::vector<double>(7, 0.0));
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      if ((i <= 3) != (j <= 3)) d[i][j] = 5.0;
  const MetricInstance g(d);
  const auto r = shp2_metric(g, 0, 6);
  CHECK(r.baseline_cost == 5.0);
  CHECK(r.pair.objective <= 15.0);
}

TEST_CASE("shp2_metric with an injected baseline") {
  const auto g = make_random_metric(10, 11);
  const auto opt = path_cost(g, exact_shp(g, 0, 9));
  std::vector<Vertex> order(10);
  std::iota(order.begin(), order.end(), Vertex{0});
  const HamPath arbitrary(order);
  const auto r = shp2_metric(g, arbitrary);
  CHECK(r.baseline == arbitrary);
  CHECK(r.pair.objective <= 3.0 * path_cost(g, arbitrary) + 1e-9);
  CHECK(r.pair.objective <= 3.0 * (path_cost(g, arbitrary) / opt) * opt + 1e-9);
  CHECK(r.pair.a.front() == 0);
  CHECK(r.pair.b.back() == 9);
}

TEST_CASE("tsp2_naive on uniform circles") {
  const auto r7 = tsp2_naive(make_uniform_circle(7));
  CHECK(r7.pair.cost_a == 7.0);
  CHECK(r7.pair.cost_b == 14.0);
  CHECK(r7.ratio() == 2.0);
  CHECK_FALSE(r7.tripled);

  const auto r8 = tsp2_naive(make_uniform_circle(8));
  CHECK(std::min(r8.pair.cost_a, r8.pair.cost_b) == 10.0);
  CHECK(r8.pair.objective == 14.0);
  CHECK(r8.tripled);

  CHECK_THROWS_AS(tsp2_naive(make_uniform_circle(4)), InfeasibleError);

  for (int n = 5; n <= 40; ++n) {
    const auto r = tsp2_naive(make_uniform_circle(static_cast<std::size_t>(n)));
    const brute::Order a(r.pair.a.order().begin(), r.pair.a.order().end());
    const brute::Order b(r.pair.b.order().begin(), r.pair.b.order().end());
    REQUIRE(brute::disjoint(brute::edges(a, true), brute::edges(b, true)));
    const int obj = std::max(brute::tour_cost(n, a), brute::tour_cost(n, b));
    if (n % 2 == 1)
      REQUIRE(obj == 2 * n);
    else
      REQUIRE(obj < 2 * n);
  }
}

TEST_CASE("tsp2_naive on the tsp witness") {
  const auto w = make_tsp_witness(7, 2.5);
  const auto r = tsp2_naive(w);
  CHECK(r.baseline_cost == 10.0);
  CHECK(r.ratio() == 2.0);
}

TEST_CASE("tsp2_naive on random metrics") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 5 + seed % 8;
    const auto g = make_random_metric(n, 100 + seed);
    const auto r = tsp2_naive(g);
    REQUIRE(edges_disjoint(r.pair.a, r.pair.b));
    REQUIRE(r.pair.objective <= 2.0 * r.baseline_cost + 1e-9);
    if (n % 2 == 0) REQUIRE(r.pair.objective < 2.0 * r.baseline_cost);

    // A deliberately poor starting tour: the guarantee scales with its cost.
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const Tour start(order);
    const auto poor = tsp2_naive(g, start);
    const double rho = tour_cost(g, start) / r.baseline_cost;
    REQUIRE(edges_disjoint(poor.pair.a, poor.pair.b));
    REQUIRE(poor.pair.objective <= 2.0 * rho * r.baseline_cost + 1e-9);
  }
}

TEST_CASE("tsp2_naive rotates the cheapest edge into the tripled position") {
  const CircleInstance g({0.0, 3.0, 4.0, 8.0, 11.0, 15.0}, 20.0);
  const auto r = tsp2_naive(g);
  REQUIRE(r.tripled);
  CHECK(*r.tripled == Edge(1, 2));
}
