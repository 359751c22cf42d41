#include <catch2/catch_amalgamated.hpp>

#include "pod/analysis.hpp"

using namespace pod;

TEST_CASE("sweep_paths") {
  const auto r = sweep_paths(6, 100);
  CHECK(r.max_ratio == Ratio(13, 7));
  CHECK(r.argmax_n == 8);
  CHECK(sweep_paths(101, 101).points.front().ratio == Ratio(8, 5));
  CHECK(sweep_paths(14, 14).points.front().ratio == Ratio(23, 13));
  for (std::size_t i = 1; i < r.running_max.size(); ++i) CHECK(r.running_max[i - 1] <= r.running_max[i]);
  for (const auto& p : r.tail) CHECK(p.ratio == Ratio(8, 5));
  REQUIRE(r.tail_average);
  CHECK(*r.tail_average == Catch::Approx(1.6));
  CHECK_THROWS_AS(sweep_paths(5, 10), InfeasibleError);
  CHECK_THROWS_AS(sweep_paths(10, 9), RangeError);
}

TEST_CASE("sweep_paths envelope up to 10^4") {
  const auto r = sweep_paths(6, 10000);
  for (const auto& p : r.points) {
    const auto m = static_cast<std::int64_t>(p.n - 1);
    REQUIRE(7 * p.objective <= 13 * m);
    if (p.n != 8) REQUIRE(7 * p.objective < 13 * m);
    // ratio >= 8/5 (1 - 1/(n-1)), i.e. 5 * objective * (n-1) >= 8 * (n-1) * (n-2).
    REQUIRE(5 * p.objective >= 8 * (m - 1));
    // ratio <= 8/5 + 16/(n-1), i.e. 5 * objective <= 8 (n-1) + 80.
    REQUIRE(5 * p.objective <= 8 * m + 80);
    if (p.n % 10 == 1) REQUIRE(p.ratio == Ratio(8, 5));
  }
}

TEST_CASE("sweep_tours") {
  CHECK(sweep_tours(7, 7).points.front().ratio == Ratio(13, 7));
  CHECK(sweep_tours(100, 100).points.front().ratio == Ratio(8, 5));
  CHECK(sweep_tours(5, 5).points.front().ratio == Ratio(9, 5));
  const auto r = sweep_tours(5, 500);
  CHECK(r.max_ratio == Ratio(13, 7));
  CHECK(r.argmax_n == 7);
  for (const auto& p : r.tail) CHECK(p.n % 10 == 0);
  CHECK_THROWS_AS(sweep_tours(4, 10), InfeasibleError);
}

TEST_CASE("sweep_tours_measured") {
  const auto r = sweep_tours_measured(5, 500);
  CHECK(r.points[0].ratio == Ratio(8, 5));
  CHECK(r.points[2].ratio == Ratio(12, 7));
  CHECK(r.max_ratio == Ratio(23, 13));
  CHECK(r.argmax_n == 13);
}

TEST_CASE("witness_sweep") {
  const auto shp = witness_sweep(PairProblem::shp2, 8, {0.5});
  REQUIRE(shp.size() == 1);
  CHECK(shp[0].weight == Catch::Approx(18.0));
  CHECK(shp[0].report.ratio == Catch::Approx(2.5));
  CHECK(shp[0].meets_target);

  const auto tsp = witness_sweep(PairProblem::tsp2, 7, {0.5});
  CHECK(tsp[0].weight == Catch::Approx(2.5));
  CHECK(tsp[0].report.ratio == Catch::Approx(1.5));
  CHECK(tsp[0].meets_target);

  const auto degenerate = witness_sweep(PairProblem::shp2, 8, {2.0});
  CHECK(degenerate[0].weight == 1.0);
  CHECK(degenerate[0].target == 1.0);
  CHECK(degenerate[0].meets_target);
}

TEST_CASE("witness ratios grow with the heavy weight") {
  const auto shp = witness_sweep(PairProblem::shp2, 8, {1.0, 0.75, 0.5, 0.25});
  for (std::size_t i = 1; i < shp.size(); ++i) {
    CHECK(shp[i - 1].weight < shp[i].weight);
    CHECK(shp[i - 1].report.ratio <= shp[i].report.ratio);
  }
  const auto tsp = witness_sweep(PairProblem::tsp2, 7, {0.5, 0.4, 0.25});
  for (std::size_t i = 1; i < tsp.size(); ++i) CHECK(tsp[i - 1].report.ratio <= tsp[i].report.ratio);
}
