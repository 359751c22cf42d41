#pragma once

// Exact single-solution baselines and the two pair algorithms for general metrics.

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "depth.hpp"
#include "errors.hpp"
#include "instances.hpp"

namespace pod {

struct ExactSolverBudget {
  std::size_t max_n = 18;
  std::optional<double> time_limit_seconds;
};

namespace detail {

class Deadline {
 public:
  explicit Deadline(std::optional<double> seconds)
      : start_(std::chrono::steady_clock::now()), seconds_(seconds) {}

  bool expired() const {
    return seconds_ && elapsed() > *seconds_;
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::optional<double> seconds_;
};

// Held-Karp over every vertex except `start`. With `end` set the result is a
// Hamiltonian path from start to end, otherwise a tour through start.
template <DistanceInstance I>
std::vector<Vertex> held_karp(const I& g, Vertex start, std::optional<Vertex> end,
                              const ExactSolverBudget& budget) {
  const std::size_t n = g.size();
  if (n > budget.max_n)
    throw ResourceError("exact solver budget exceeded: n=" + std::to_string(n) +
                            " > max_n=" + std::to_string(budget.max_n),
                        0);
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v)
    if (v != start) others.push_back(v);
  const std::size_t m = others.size();
  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> dp((full + 1) * m, inf);
  std::vector<std::uint8_t> parent((full + 1) * m, 0);
  for (std::size_t j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = g.distance(start, others[j]);

  const Deadline deadline(budget.time_limit_seconds);
  std::uint64_t explored = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if ((mask & 0xFFF) == 0 && deadline.expired())
      throw ResourceError("exact solver time limit exceeded", explored);
    for (std::size_t j = 0; j < m; ++j) {
      const double base = dp[mask * m + j];
      if (!(mask >> j & 1) || base == inf) continue;
      ++explored;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double c = base + g.distance(others[j], others[k]);
        if (c < dp[next * m + k]) {
          dp[next * m + k] = c;
          parent[next * m + k] = static_cast<std::uint8_t>(j);
        }
      }
    }
  }

  std::size_t last = 0;
  if (end) {
    last = static_cast<std::size_t>(std::find(others.begin(), others.end(), *end) - others.begin());
  } else {
    double best = inf;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = dp[full * m + j] + g.distance(others[j], start);
      if (c < best) best = c, last = j;
    }
  }

  std::vector<Vertex> reversed;
  std::size_t mask = full;
  std::size_t j = last;
  while (mask != 0) {
    reversed.push_back(others[j]);
    const std::size_t prev = parent[mask * m + j];
    mask &= ~(std::size_t{1} << j);
    j = prev;
  }
  reversed.push_back(start);
  return {reversed.rbegin(), reversed.rend()};
}

}  // namespace detail

// Minimum-cost Hamiltonian (s, t)-path.
template <DistanceInstance I>
HamPath exact_shp(const I& g, Vertex s, Vertex t, const ExactSolverBudget& budget = {}) {
  const std::size_t n = g.size();
  if (s >= n || t >= n || s == t) throw PreconditionError("s and t must be distinct vertices");
  if constexpr (std::same_as<I, LineInstance>) {
    if ((s == 0 && t == n - 1) || (s == n - 1 && t == 0)) {
      std::vector<Vertex> order(n);
      for (Vertex v = 0; v < n; ++v) order[v] = s == 0 ? v : n - 1 - v;
      return HamPath(std::move(order));
    }
  }
  return HamPath(detail::held_karp(g, s, t, budget));
}

// Minimum-cost tour.
template <DistanceInstance I>
Tour exact_tsp(const I& g, const ExactSolverBudget& budget = {}) {
  const std::size_t n = g.size();
  if (n < 3) throw InvalidSizeError("a tour needs at least 3 vertices");
  if constexpr (std::same_as<I, CircleInstance>) {
    // A tour misses at most one segment and then covers every other segment at least twice.
    // With no segment longer than half the circle the rim is therefore optimal.
    bool short_segments = true;
    for (std::size_t i = 0; i < n; ++i)
      short_segments &= 2.0 * g.segment_length(i) <= g.circumference() + kTolerance;
    if (short_segments) {
      std::vector<Vertex> order(n);
      for (Vertex v = 0; v < n; ++v) order[v] = v;
      return Tour(std::move(order));
    }
  }
  return Tour(detail::held_karp(g, 0, std::nullopt, budget));
}

struct Shp2Result {
  DisjointPair<HamPath> pair;
  HamPath baseline;
  double baseline_cost = 0.0;
  // cover_a[i]: number of edges of pair.a passing over baseline edge i (likewise cover_b).
  std::vector<int> cover_a;
  std::vector<int> cover_b;

  double ratio() const {
    return baseline_cost > 0 ? pair.objective / baseline_cost
                             : (pair.objective > 0 ? std::numeric_limits<double>::infinity() : 1.0);
  }
};

// Applies the uniform-line pattern of algorithm_paths to the vertices in baseline order.
template <DistanceInstance I>
Shp2Result shp2_metric(const I& g, const HamPath& baseline) {
  const std::size_t n = g.size();
  require_paths_feasible(n);
  if (baseline.size() != n) throw DimensionError("baseline path size does not match instance size");
  const DisjointPair<HamPath> pattern = algorithm_paths(n);
  auto relabel = [&](const HamPath& p) {
    std::vector<Vertex> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = baseline.order()[p.order()[i]];
    return HamPath(std::move(order));
  };
  return Shp2Result{make_disjoint_pair(g, relabel(pattern.a), relabel(pattern.b)), baseline,
                    path_cost(g, baseline), path_depth_profile(pattern.a, n).depths,
                    path_depth_profile(pattern.b, n).depths};
}

template <DistanceInstance I>
Shp2Result shp2_metric(const I& g, Vertex s, Vertex t, const ExactSolverBudget& budget = {}) {
  require_paths_feasible(g.size());
  return shp2_metric(g, exact_shp(g, s, t, budget));
}

struct Tsp2Result {
  DisjointPair<Tour> pair;
  Tour baseline;
  double baseline_cost = 0.0;
  // Even n only: the baseline edge (vn, v1) that the pair covers three times.
  std::optional<Edge> tripled;

  double ratio() const {
    return baseline_cost > 0 ? pair.objective / baseline_cost
                             : (pair.objective > 0 ? std::numeric_limits<double>::infinity() : 1.0);
  }
};

template <DistanceInstance I>
Tsp2Result tsp2_naive(const I& g, const Tour& baseline) {
  const std::size_t n = g.size();
  require_tours_feasible(n);
  if (baseline.size() != n) throw DimensionError("baseline tour size does not match instance size");
  const std::vector<Vertex>& o = baseline.order();

  // v(i), 1-indexed, is o[(k + i) mod n]; k picks which baseline edge becomes (vn, v1).
  std::size_t k = n - 1;
  if (n % 2 == 0) {
    k = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const double ci = g.distance(o[i], o[(i + 1) % n]);
      const double ck = g.distance(o[k], o[(k + 1) % n]);
      if (ci < ck - kTolerance ||
          (ci <= ck + kTolerance && Edge(o[i], o[(i + 1) % n]) < Edge(o[k], o[(k + 1) % n])))
        k = i;
    }
  }
  auto v = [&](std::size_t i) { return o[(k + i) % n]; };

  std::vector<Vertex> t1;
  std::vector<Vertex> t2;
  std::optional<Edge> tripled;
  if (n % 2 == 1) {
    for (std::size_t i = 1; i <= n; ++i) t1.push_back(v(i));
    for (std::size_t i = 1; i <= n; i += 2) t2.push_back(v(i));
    for (std::size_t i = 2; i < n; i += 2) t2.push_back(v(i));
  } else {
    t1.push_back(v(1));
    t1.push_back(v(n));
    for (std::size_t i = 2; i < n; ++i) t1.push_back(v(i));
    for (std::size_t i = 1; i < n; i += 2) t2.push_back(v(i));
    t2.push_back(v(n));
    for (std::size_t i = n - 2; i >= 2; i -= 2) t2.push_back(v(i));
    tripled = Edge(v(n), v(1));
  }
  return Tsp2Result{make_disjoint_pair(g, Tour(std::move(t1)), Tour(std::move(t2))), baseline,
                    tour_cost(g, baseline), tripled};
}

template <DistanceInstance I>
Tsp2Result tsp2_naive(const I& g, const ExactSolverBudget& budget = {}) {
  require_tours_feasible(g.size());
  return tsp2_naive(g, exact_tsp(g, budget));
}

}  // namespace pod
