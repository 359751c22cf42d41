#pragma once

// Ratio sweeps over instance sizes and witness families.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "oracle.hpp"
#include "ratio.hpp"

namespace pod {

struct SweepPoint {
  std::size_t n = 0;
  std::int64_t objective = 0;
  std::int64_t opt = 0;
  Ratio ratio;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  // running_max[i] is the largest ratio among points[0..i].
  std::vector<Ratio> running_max;
  Ratio max_ratio;
  std::size_t argmax_n = 0;  // smallest n attaining max_ratio
  // Points whose underlying path has 10k + 1 vertices, where the construction is H11 repeated.
  std::vector<SweepPoint> tail;
  std::optional<double> tail_average;
};

namespace detail {

inline SweepResult summarize(std::vector<SweepPoint> points, std::size_t path_offset) {
  SweepResult r;
  r.points = std::move(points);
  double tail_sum = 0.0;
  for (const SweepPoint& p : r.points) {
    if (r.running_max.empty() || p.ratio > r.max_ratio) {
      r.max_ratio = p.ratio;
      r.argmax_n = p.n;
    }
    r.running_max.push_back(r.max_ratio);
    if ((p.n + path_offset) % 10 == 1) {
      r.tail.push_back(p);
      tail_sum += p.ratio.value();
    }
  }
  if (!r.tail.empty()) r.tail_average = tail_sum / static_cast<double>(r.tail.size());
  return r;
}

inline void require_range(std::size_t n_min, std::size_t n_max) {
  if (n_min > n_max) throw RangeError("empty sweep range");
}

}  // namespace detail

// predicted_paths_cost(n) / (n - 1) for every n in [n_min, n_max].
inline SweepResult sweep_paths(std::size_t n_min, std::size_t n_max) {
  if (n_min < 6) throw InfeasibleError("no pair exists for n ≤ 5; sweeps start at n = 6");
  detail::require_range(n_min, n_max);
  std::vector<SweepPoint> pts;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::int64_t obj = predicted_paths_cost(n);
    const auto opt = static_cast<std::int64_t>(n - 1);
    pts.push_back(SweepPoint{n, obj, opt, Ratio(obj, opt)});
  }
  return detail::summarize(std::move(pts), 0);
}

// predicted_paths_cost(n + 1) / n for every n in [n_min, n_max].
inline SweepResult sweep_tours(std::size_t n_min, std::size_t n_max) {
  if (n_min < 5) throw InfeasibleError("no pair exists for n ≤ 4; sweeps start at n = 5");
  detail::require_range(n_min, n_max);
  std::vector<SweepPoint> pts;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::int64_t obj = predicted_paths_cost(n + 1);
    const auto opt = static_cast<std::int64_t>(n);
    pts.push_back(SweepPoint{n, obj, opt, Ratio(obj, opt)});
  }
  return detail::summarize(std::move(pts), 1);
}

// Objective of algorithm_tours(n) measured on the uniform circle, divided by n.
inline SweepResult sweep_tours_measured(std::size_t n_min, std::size_t n_max) {
  if (n_min < 5) throw InfeasibleError("no pair exists for n ≤ 4; sweeps start at n = 5");
  detail::require_range(n_min, n_max);
  std::vector<SweepPoint> pts;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const std::int64_t obj = exact_integer(algorithm_tours(n).objective);
    const auto opt = static_cast<std::int64_t>(n);
    pts.push_back(SweepPoint{n, obj, opt, Ratio(obj, opt)});
  }
  return detail::summarize(std::move(pts), 1);
}

struct WitnessPoint {
  double epsilon = 0.0;
  double weight = 0.0;
  double target = 0.0;
  RatioReport report;
  bool meets_target = false;
};

inline constexpr double kWitnessTolerance = 1e-9;

// Heavy-segment weight for a witness; the closed form is clamped to at least 1.
inline double witness_weight(PairProblem problem, double eps, std::size_t n) {
  const double w = problem == PairProblem::shp2 ? shp_witness_weight(eps, n) : tsp_witness_weight(eps, n);
  return std::max(1.0, w);
}

// For each epsilon, builds the witness instance and compares the oracle ratio with 3 - eps (SHP2)
// or 2 - eps (TSP2).
inline std::vector<WitnessPoint> witness_sweep(PairProblem problem, std::size_t n,
                                               const std::vector<double>& epsilons,
                                               const OracleOptions& options = {},
                                               const ExactSolverBudget& budget = {}) {
  std::vector<WitnessPoint> out;
  for (double eps : epsilons) {
    const double w = witness_weight(problem, eps, n);
    WitnessPoint p;
    p.epsilon = eps;
    p.weight = w;
    if (problem == PairProblem::shp2) {
      p.target = 3.0 - eps;
      p.report = witness_ratio(make_shp_witness(n, w), problem, options, budget);
    } else {
      p.target = 2.0 - eps;
      p.report = witness_ratio(make_tsp_witness(n, w), problem, options, budget);
    }
    p.meets_target = p.report.ratio >= p.target - kWitnessTolerance;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pod
