#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pod {

using Vertex = std::size_t;

// Absolute tolerance for every real-valued cost comparison.
inline constexpr double kTolerance = 1e-9;

// Undirected edge; endpoints are stored sorted so that (a, b) and (b, a) compare equal.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Anything with a vertex count and a symmetric distance.
template <class I>
concept DistanceInstance = requires(const I& g, Vertex a, Vertex b) {
  { g.size() } -> std::convertible_to<std::size_t>;
  { g.distance(a, b) } -> std::convertible_to<double>;
};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

// Points on the real line, sorted left to right. Vertex i is the i-th point;
// segment i joins vertices i and i + 1.
class LineInstance {
 public:
  explicit LineInstance(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw InvalidSizeError("line instance needs at least 2 points");
    for (std::size_t i = 1; i < coords_.size(); ++i) {
      if (!(coords_[i] > coords_[i - 1]))
        throw InvalidInstanceError("line coordinates must be strictly increasing");
    }
  }

  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<double>& coords() const noexcept { return coords_; }

  double distance(Vertex a, Vertex b) const noexcept { return std::abs(coords_[b] - coords_[a]); }

  std::size_t segment_count() const noexcept { return coords_.size() - 1; }
  double segment_length(std::size_t i) const {
    if (i >= segment_count()) throw RangeError("segment index out of range");
    return coords_[i + 1] - coords_[i];
  }

  Vertex source() const noexcept { return 0; }
  Vertex target() const noexcept { return coords_.size() - 1; }

  // True when every coordinate is an integer, so all costs are exact integers.
  bool is_integral() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](double c) { return c == std::floor(c) && std::abs(c) < 1e15; });
  }

 private:
  std::vector<double> coords_;
};

// Points on a circle of circumference L at increasing arc positions in [0, L).
// Segment i joins vertex i and vertex (i + 1) mod n; segment n - 1 wraps.
class CircleInstance {
 public:
  CircleInstance(std::vector<double> positions, double circumference)
      : positions_(std::move(positions)), circumference_(circumference) {
    if (positions_.size() < 3) throw InvalidSizeError("circle instance needs at least 3 points");
    if (!(circumference_ > 0)) throw InvalidInstanceError("circumference must be positive");
    if (positions_.front() < 0 || !(positions_.back() < circumference_))
      throw InvalidInstanceError("circle positions must lie in [0, circumference)");
    for (std::size_t i = 1; i < positions_.size(); ++i) {
      if (!(positions_[i] > positions_[i - 1]))
        throw InvalidInstanceError("circle positions must be strictly increasing");
    }
  }

  std::size_t size() const noexcept { return positions_.size(); }
  const std::vector<double>& positions() const noexcept { return positions_; }
  double circumference() const noexcept { return circumference_; }

  double distance(Vertex a, Vertex b) const noexcept {
    const double d = std::abs(positions_[b] - positions_[a]);
    return std::min(d, circumference_ - d);
  }

  std::size_t segment_count() const noexcept { return positions_.size(); }
  double segment_length(std::size_t i) const {
    const std::size_t n = positions_.size();
    if (i >= n) throw RangeError("segment index out of range");
    if (i + 1 < n) return positions_[i + 1] - positions_[i];
    return circumference_ - positions_[n - 1] + positions_[0];
  }

  bool is_integral() const noexcept {
    auto integral = [](double c) { return c == std::floor(c) && std::abs(c) < 1e15; };
    return integral(circumference_) && std::all_of(positions_.begin(), positions_.end(), integral);
  }

 private:
  std::vector<double> positions_;
  double circumference_;
};

// Full symmetric distance matrix satisfying the triangle inequality.
class MetricInstance {
 public:
  explicit MetricInstance(const std::vector<std::vector<double>>& rows, bool check_triangle = true)
      : n_(rows.size()), d_(rows.size() * rows.size()) {
    if (n_ < 2) throw InvalidSizeError("metric instance needs at least 2 vertices");
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) throw DimensionError("distance matrix must be square");
      for (std::size_t j = 0; j < n_; ++j) d_[i * n_ + j] = rows[i][j];
    }
    validate(check_triangle);
  }

  std::size_t size() const noexcept { return n_; }
  double distance(Vertex a, Vertex b) const noexcept { return d_[a * n_ + b]; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = d_[i * n_ + j];
    return out;
  }

  bool is_integral() const noexcept {
    return std::all_of(d_.begin(), d_.end(), [](double c) { return c == std::floor(c); });
  }

 private:
  void validate(bool check_triangle) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (distance(i, i) != 0.0) throw InvalidInstanceError("distance matrix diagonal must be zero");
      for (std::size_t j = 0; j < n_; ++j) {
        const double dij = distance(i, j);
        if (!std::isfinite(dij) || dij < 0)
          throw InvalidInstanceError("distances must be finite and non-negative");
        if (std::abs(dij - distance(j, i)) > kTolerance)
          throw InvalidInstanceError("distance matrix must be symmetric");
      }
    }
    if (!check_triangle) return;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          if (distance(i, k) > distance(i, j) + distance(j, k) + kTolerance) {
            std::ostringstream os;
            os << "triangle inequality violated: d(" << i + 1 << "," << k + 1 << ") > d(" << i + 1
               << "," << j + 1 << ") + d(" << j + 1 << "," << k + 1 << ")";
            throw InvalidInstanceError(os.str());
          }
  }

  std::size_t n_;
  std::vector<double> d_;
};

template <DistanceInstance I>
MetricInstance to_metric(const I& g) {
  std::vector<std::vector<double>> rows(g.size(), std::vector<double>(g.size()));
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j = 0; j < g.size(); ++j) rows[i][j] = i == j ? 0.0 : g.distance(i, j);
  return MetricInstance(rows, false);
}

inline std::string describe(const LineInstance& g) { return "line(n=" + std::to_string(g.size()) + ")"; }
inline std::string describe(const CircleInstance& g) {
  return "circle(n=" + std::to_string(g.size()) + ")";
}
inline std::string describe(const MetricInstance& g) {
  return "metric(n=" + std::to_string(g.size()) + ")";
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

namespace detail {

inline void require_permutation(const std::vector<Vertex>& order, const char* what) {
  std::vector<bool> seen(order.size(), false);
  for (Vertex v : order) {
    if (v >= order.size() || seen[v])
      throw PreconditionError(std::string(what) + " order is not a permutation of 0..n-1");
    seen[v] = true;
  }
}

}  // namespace detail

// A Hamiltonian path given by its visiting order. Endpoints are order.front() and order.back().
class HamPath {
 public:
  explicit HamPath(std::vector<Vertex> order) : order_(std::move(order)) {
    if (order_.empty()) throw InvalidSizeError("empty path");
    detail::require_permutation(order_, "path");
  }

  const std::vector<Vertex>& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  Vertex front() const noexcept { return order_.front(); }
  Vertex back() const noexcept { return order_.back(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(order_.size() - 1);
    for (std::size_t i = 0; i + 1 < order_.size(); ++i) out.emplace_back(order_[i], order_[i + 1]);
    return out;
  }

  friend bool operator==(const HamPath&, const HamPath&) = default;

 private:
  std::vector<Vertex> order_;
};

// A Hamiltonian cycle, stored canonically: starts at vertex 0 and order[1] < order[n-1].
class Tour {
 public:
  explicit Tour(std::vector<Vertex> order) : order_(std::move(order)) {
    if (order_.size() < 3) throw InvalidSizeError("a tour needs at least 3 vertices");
    detail::require_permutation(order_, "tour");
    canonicalize();
  }

  const std::vector<Vertex>& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i)
      out.emplace_back(order_[i], order_[(i + 1) % order_.size()]);
    return out;
  }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  void canonicalize() {
    auto zero = std::find(order_.begin(), order_.end(), Vertex{0});
    std::rotate(order_.begin(), zero, order_.end());
    if (order_[1] > order_.back()) std::reverse(order_.begin() + 1, order_.end());
  }

  std::vector<Vertex> order_;
};

template <class S>
concept Solution = std::same_as<S, HamPath> || std::same_as<S, Tour>;

inline bool edges_disjoint(std::vector<Edge> a, std::vector<Edge> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return false;
    if (*ia < *ib)
      ++ia;
    else
      ++ib;
  }
  return true;
}

template <Solution S>
bool edges_disjoint(const S& a, const S& b) {
  return edges_disjoint(a.edges(), b.edges());
}

template <DistanceInstance I>
double path_cost(const I& g, const HamPath& path) {
  if (path.size() != g.size()) throw DimensionError("path size does not match instance size");
  double c = 0.0;
  const auto& o = path.order();
  for (std::size_t i = 0; i + 1 < o.size(); ++i) c += g.distance(o[i], o[i + 1]);
  return c;
}

template <DistanceInstance I>
double tour_cost(const I& g, const Tour& tour) {
  if (tour.size() != g.size()) throw DimensionError("tour size does not match instance size");
  double c = 0.0;
  const auto& o = tour.order();
  for (std::size_t i = 0; i < o.size(); ++i) c += g.distance(o[i], o[(i + 1) % o.size()]);
  return c;
}

template <DistanceInstance I>
double cost(const I& g, const HamPath& p) {
  return path_cost(g, p);
}
template <DistanceInstance I>
double cost(const I& g, const Tour& t) {
  return tour_cost(g, t);
}

// Two edge-disjoint solutions; the objective is the cost of the more expensive one.
template <Solution S>
struct DisjointPair {
  S a;
  S b;
  double cost_a = 0.0;
  double cost_b = 0.0;
  double objective = 0.0;

  double total() const noexcept { return cost_a + cost_b; }
};

template <DistanceInstance I, Solution S>
DisjointPair<S> make_disjoint_pair(const I& g, S a, S b) {
  if (!edges_disjoint(a, b)) throw PreconditionError("solutions share an edge");
  const double ca = cost(g, a);
  const double cb = cost(g, b);
  return DisjointPair<S>{std::move(a), std::move(b), ca, cb, std::max(ca, cb)};
}

// Converts a cost known to be integral (uniform instances) into an exact integer.
inline std::int64_t exact_integer(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) > kTolerance) throw PreconditionError("cost is not integral");
  return static_cast<std::int64_t>(r);
}

// ---------------------------------------------------------------------------
// Instance families
// ---------------------------------------------------------------------------

inline LineInstance make_uniform_line(std::size_t n) {
  if (n < 2) throw InvalidSizeError("uniform line needs n >= 2");
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i + 1);
  return LineInstance(std::move(c));
}

inline CircleInstance make_uniform_circle(std::size_t n) {
  if (n < 3) throw InvalidSizeError("uniform circle needs n >= 3");
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(i);
  return CircleInstance(std::move(p), static_cast<double>(n));
}

// Line whose second segment (v2, v3) has length W and all others length 1.
inline LineInstance make_shp_witness(std::size_t n, double W) {
  if (n <= 5) throw InvalidSizeError("SHP witness needs n > 5");
  if (!(W >= 1.0)) throw InvalidInstanceError("SHP witness needs W >= 1");
  std::vector<double> c{1.0};
  for (std::size_t i = 1; i < n; ++i) c.push_back(c.back() + (i == 2 ? W : 1.0));
  return LineInstance(std::move(c));
}

// Circle with three consecutive segments (W, 1, W) followed by n - 3 unit segments.
inline CircleInstance make_tsp_witness(std::size_t n, double W) {
  if (n <= 6) throw InvalidSizeError("TSP witness needs n > 6");
  if (!(W >= 1.0)) throw InvalidInstanceError("TSP witness needs W >= 1");
  std::vector<double> p{0.0, W, W + 1.0};
  for (std::size_t i = 3; i < n; ++i) p.push_back(p.back() + (i == 3 ? W : 1.0));
  const double circumference = 2.0 * W + static_cast<double>(n - 2);
  return CircleInstance(std::move(p), circumference);
}

// Heavy-segment weight making the SHP witness ratio equal 3 - eps.
inline double shp_witness_weight(double eps, std::size_t n) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  return (2.0 - eps) * static_cast<double>(n - 2) / eps;
}

// Heavy-segment weight making the TSP witness ratio equal 2 - eps.
inline double tsp_witness_weight(double eps, std::size_t n) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  return (1.0 - eps) * static_cast<double>(n - 2) / (2.0 * eps);
}

// Random integer weights in [1, max_weight] closed under shortest paths; always metric.
inline MetricInstance make_random_metric(std::size_t n, std::uint64_t seed, int max_weight = 100) {
  if (n < 2) throw InvalidSizeError("random metric needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = weight(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return MetricInstance(d);
}

}  // namespace pod
