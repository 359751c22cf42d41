#pragma once

// Explicit base pairs of edge-disjoint Hamiltonian paths on uniform lines,
// path concatenation, and the two constructive algorithms built from them.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "instances.hpp"

namespace pod {

enum class CatalogTag { optimal, constructed };

struct CatalogEntry {
  std::size_t n = 0;
  std::vector<Vertex> first;  // 0-indexed visiting order
  std::vector<Vertex> second;
  std::int64_t cost_first = 0;
  std::int64_t cost_second = 0;
  CatalogTag tag = CatalogTag::optimal;

  std::int64_t objective() const noexcept { return std::max(cost_first, cost_second); }
};

inline constexpr std::size_t kCatalogMin = 6;
inline constexpr std::size_t kCatalogMax = 15;

namespace detail {

inline CatalogEntry catalog_entry(std::size_t n, std::vector<Vertex> a, std::vector<Vertex> b,
                                  std::int64_t ca, std::int64_t cb) {
  for (Vertex& v : a) --v;
  for (Vertex& v : b) --v;
  return CatalogEntry{n, std::move(a), std::move(b), ca, cb,
                      n <= 11 ? CatalogTag::optimal : CatalogTag::constructed};
}

inline std::vector<CatalogEntry> build_catalog() {
  // Orders are written 1-indexed.
  std::vector<CatalogEntry> c;
  c.push_back(catalog_entry(6, {1, 3, 2, 4, 5, 6}, {1, 2, 5, 3, 4, 6}, 7, 9));
  c.push_back(catalog_entry(7, {1, 3, 4, 2, 5, 6, 7}, {1, 2, 3, 6, 4, 5, 7}, 10, 10));
  c.push_back(catalog_entry(8, {1, 3, 4, 2, 5, 6, 7, 8}, {1, 2, 3, 7, 5, 4, 6, 8}, 11, 13));
  c.push_back(catalog_entry(9, {1, 3, 5, 4, 2, 6, 7, 8, 9}, {1, 2, 3, 4, 6, 8, 5, 7, 9}, 14, 14));
  c.push_back(catalog_entry(10, {1, 3, 5, 2, 4, 6, 7, 8, 9, 10}, {1, 2, 3, 4, 5, 7, 9, 6, 8, 10},
                            15, 15));
  c.push_back(catalog_entry(11, {1, 3, 4, 2, 5, 6, 7, 9, 8, 10, 11},
                            {1, 2, 3, 5, 4, 6, 8, 7, 10, 9, 11}, 16, 16));
  c.push_back(catalog_entry(12, {1, 3, 4, 2, 5, 6, 7, 9, 8, 11, 10, 12},
                            {1, 2, 3, 5, 4, 6, 8, 7, 10, 9, 11, 12}, 19, 17));
  c.push_back(catalog_entry(13, {1, 3, 4, 2, 5, 6, 7, 9, 8, 11, 10, 12, 13},
                            {1, 2, 3, 5, 4, 6, 8, 7, 10, 9, 12, 11, 13}, 20, 20));
  c.push_back(catalog_entry(14, {1, 3, 4, 2, 5, 6, 7, 9, 8, 11, 10, 13, 12, 14},
                            {1, 2, 3, 5, 4, 6, 8, 7, 10, 9, 12, 11, 13, 14}, 23, 21));
  c.push_back(catalog_entry(15, {1, 3, 4, 2, 5, 6, 7, 9, 8, 11, 10, 13, 12, 14, 15},
                            {1, 2, 3, 5, 4, 6, 8, 7, 10, 9, 12, 11, 14, 13, 15}, 24, 24));

  for (const CatalogEntry& e : c) {
    const HamPath a(e.first);
    const HamPath b(e.second);
    const LineInstance g = make_uniform_line(e.n);
    const bool anchored = a.size() == e.n && b.size() == e.n && a.front() == 0 &&
                          b.front() == 0 && a.back() == e.n - 1 && b.back() == e.n - 1;
    if (!anchored || !edges_disjoint(a, b) || exact_integer(path_cost(g, a)) != e.cost_first ||
        exact_integer(path_cost(g, b)) != e.cost_second)
      throw std::logic_error("base pair catalog entry for n=" + std::to_string(e.n) +
                             " failed its self-check");
  }
  return c;
}

}  // namespace detail

// The base pairs for n = 6..15, verified once on first use.
inline const std::vector<CatalogEntry>& base_catalog() {
  static const std::vector<CatalogEntry> catalog = detail::build_catalog();
  return catalog;
}

inline const CatalogEntry& catalog_entry(std::size_t n) {
  if (n < kCatalogMin || n > kCatalogMax) throw RangeError("no base pair for n=" + std::to_string(n));
  return base_catalog()[n - kCatalogMin];
}

inline DisjointPair<HamPath> base_pair(std::size_t n) {
  const CatalogEntry& e = catalog_entry(n);
  return make_disjoint_pair(make_uniform_line(n), HamPath(e.first), HamPath(e.second));
}

// f(l) for l = 1..9.
inline constexpr std::array<std::int64_t, 9> kFTable{3, 4, 7, 8, 9, 10, 13, 14, 15};

inline std::int64_t f_value(std::size_t l) {
  if (l < 1 || l > kFTable.size()) throw RangeError("f is defined for l in 1..9");
  return kFTable[l - 1];
}

// x || y: y's vertex 0 is glued onto x's last vertex and y's labels are shifted past x's.
inline HamPath concat(const HamPath& x, const HamPath& y) {
  if (x.back() != x.size() - 1 || y.front() != 0)
    throw PreconditionError("concatenation needs x to end at its last vertex and y to start at 0");
  std::vector<Vertex> order = x.order();
  const Vertex shift = x.back();
  for (std::size_t i = 1; i < y.size(); ++i) order.push_back(y.order()[i] + shift);
  return HamPath(std::move(order));
}

inline std::pair<HamPath, HamPath> concat_pairs(const std::pair<HamPath, HamPath>& x,
                                                const std::pair<HamPath, HamPath>& y) {
  return {concat(x.first, y.first), concat(x.second, y.second)};
}

inline void require_paths_feasible(std::size_t n) {
  if (n <= 5) throw InfeasibleError("no pair exists for n ≤ 5: uniform lines this small admit no two edge-disjoint Hamiltonian paths");
}

inline void require_tours_feasible(std::size_t n) {
  if (n <= 4) throw InfeasibleError("no pair exists for n ≤ 4: circles this small admit no two edge-disjoint tours");
}

// Closed-form objective of algorithm_paths(n): 16k + f(l) with n - 1 = 10k + l.
inline std::int64_t predicted_paths_cost(std::size_t n) {
  require_paths_feasible(n);
  const std::int64_t k = static_cast<std::int64_t>((n - 1) / 10);
  const std::size_t l = (n - 1) % 10;
  return l == 0 ? 16 * k : 16 * k + f_value(l);
}

// Edge-disjoint pair of Hamiltonian (v1, vn)-paths on the uniform line of n points.
inline DisjointPair<HamPath> algorithm_paths(std::size_t n) {
  require_paths_feasible(n);
  if (n <= 11) return base_pair(n);

  const std::size_t k = (n - 1) / 10;
  const std::size_t l = (n - 1) % 10;
  const CatalogEntry& h11 = catalog_entry(11);
  const std::pair<HamPath, HamPath> block{HamPath(h11.first), HamPath(h11.second)};

  std::size_t repeats = k;
  std::size_t tail = 0;
  if (l >= 5) {
    tail = l + 1;
  } else if (l >= 1) {
    repeats = k - 1;
    tail = l + 11;
  }

  std::pair<HamPath, HamPath> acc{HamPath(std::vector<Vertex>{0}), HamPath(std::vector<Vertex>{0})};
  for (std::size_t i = 0; i < repeats; ++i) acc = concat_pairs(acc, block);
  if (tail != 0) {
    const CatalogEntry& e = catalog_entry(tail);
    acc = concat_pairs(acc, {HamPath(e.first), HamPath(e.second)});
  }
  return make_disjoint_pair(make_uniform_line(n), std::move(acc.first), std::move(acc.second));
}

// Contracts t into s in algorithm_paths(n + 1); costs are measured on the uniform circle of n points.
inline DisjointPair<Tour> algorithm_tours(std::size_t n) {
  require_tours_feasible(n);
  const DisjointPair<HamPath> paths = algorithm_paths(n + 1);
  auto contract = [](const HamPath& p) {
    std::vector<Vertex> order(p.order().begin(), p.order().end() - 1);
    return Tour(std::move(order));
  };
  return make_disjoint_pair(make_uniform_circle(n), contract(paths.a), contract(paths.b));
}

}  // namespace pod
