#pragma once

// Segment-depth machinery for solutions on line and circle instances.
//
// A segment is the edge between two consecutive points. An edge of a
// solution covers every segment lying between its endpoints; on a circle it
// covers the segments of its shorter arc. The depth of a segment is the
// number of solution edges covering it, and the cost of a solution equals
// the sum over segments of depth times segment length.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "instances.hpp"

namespace pod {

enum class ProfileKind { line, circle };

struct DepthProfile {
  ProfileKind kind = ProfileKind::line;
  std::vector<int> depths;

  std::size_t size() const noexcept { return depths.size(); }
  int operator[](std::size_t i) const { return depths[i]; }
  int total() const { return std::accumulate(depths.begin(), depths.end(), 0); }

  friend bool operator==(const DepthProfile&, const DepthProfile&) = default;
};

enum class Parity { odd, even, mixed };

// `length` consecutive segments starting at `start` (wrapping on circles).
struct Piece {
  std::size_t start = 0;
  std::size_t length = 1;
};

// Maximal run of segments with depth exactly 1 in both tours of a pair.
struct OneSection {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const OneSection&, const OneSection&) = default;
};

struct OneSectionReport {
  std::vector<OneSection> sections;
  // gaps[i]: segments strictly between sections[i] and sections[i+1] (cyclically).
  std::vector<std::size_t> gaps;
};

// Segments covered by a circle edge: `length` segments starting at `first`.
struct Arc {
  std::size_t first = 0;
  std::size_t length = 0;
};

// Shorter arc between a and b. On a tie the arc containing segment 0 wins.
inline Arc circle_arc(const CircleInstance& g, Vertex a, Vertex b) {
  const std::size_t n = g.size();
  const Vertex lo = std::min(a, b);
  const Vertex hi = std::max(a, b);
  const double inner = g.positions()[hi] - g.positions()[lo];
  const double outer = g.circumference() - inner;
  const Arc inner_arc{lo, hi - lo};
  const Arc outer_arc{hi, n - (hi - lo)};
  if (inner < outer - kTolerance) return inner_arc;
  if (outer < inner - kTolerance) return outer_arc;
  return lo == 0 ? inner_arc : outer_arc;
}

// True when some edge of the tour joins two points at exactly half the circumference.
inline bool has_antipodal_edge(const CircleInstance& g, const Tour& tour) {
  for (const Edge& e : tour.edges()) {
    const double inner = g.positions()[e.v] - g.positions()[e.u];
    if (std::abs(2.0 * inner - g.circumference()) <= kTolerance) return true;
  }
  return false;
}

inline DepthProfile path_depth_profile(const HamPath& path, std::size_t n) {
  if (path.size() != n) throw DimensionError("path size does not match n");
  DepthProfile p{ProfileKind::line, std::vector<int>(n - 1, 0)};
  for (const Edge& e : path.edges())
    for (std::size_t s = e.u; s < e.v; ++s) ++p.depths[s];
  return p;
}

inline DepthProfile path_depth_profile(const LineInstance& g, const HamPath& path) {
  return path_depth_profile(path, g.size());
}

inline DepthProfile tour_depth_profile(const CircleInstance& g, const Tour& tour) {
  const std::size_t n = g.size();
  if (tour.size() != n) throw DimensionError("tour size does not match instance size");
  DepthProfile p{ProfileKind::circle, std::vector<int>(n, 0)};
  for (const Edge& e : tour.edges()) {
    const Arc arc = circle_arc(g, e.u, e.v);
    for (std::size_t k = 0; k < arc.length; ++k) ++p.depths[(arc.first + k) % n];
  }
  return p;
}

inline DepthProfile tour_depth_profile(const Tour& tour, std::size_t n) {
  return tour_depth_profile(make_uniform_circle(n), tour);
}

inline Parity parity_class(const DepthProfile& profile) {
  bool any_odd = false;
  bool any_even = false;
  for (int d : profile.depths) (d % 2 ? any_odd : any_even) = true;
  if (any_odd && any_even) return Parity::mixed;
  return any_odd ? Parity::odd : Parity::even;
}

// Sum over segments of depth times segment length.
template <class I>
double weighted_depth(const I& g, const DepthProfile& profile) {
  if (profile.size() != g.segment_count()) throw DimensionError("profile does not match instance");
  double c = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) c += profile[i] * g.segment_length(i);
  return c;
}

// Whether segment i is itself an edge of the solution.
template <Solution S>
bool uses_segment(const S& solution, std::size_t segment) {
  const std::size_t n = solution.size();
  const Edge seg(segment, (segment + 1) % n);
  for (const Edge& e : solution.edges())
    if (e == seg) return true;
  return false;
}

namespace detail {

inline void mark_covered_interior(std::vector<bool>& covered, const HamPath& path) {
  for (const Edge& e : path.edges())
    for (Vertex v = e.u + 1; v < e.v; ++v) covered[v] = true;
}

inline void mark_covered_interior(std::vector<bool>& covered, const CircleInstance& g,
                                  const Tour& tour) {
  const std::size_t n = g.size();
  for (const Edge& e : tour.edges()) {
    const Arc arc = circle_arc(g, e.u, e.v);
    for (std::size_t k = 1; k < arc.length; ++k) covered[(arc.first + k) % n] = true;
  }
}

}  // namespace detail

// Interior vertices covered by neither path. s and t are never cut-points.
inline std::vector<Vertex> cut_points(const DisjointPair<HamPath>& pair) {
  const std::size_t n = pair.a.size();
  if (pair.b.size() != n) throw DimensionError("paths of different sizes");
  std::vector<bool> covered(n, false);
  detail::mark_covered_interior(covered, pair.a);
  detail::mark_covered_interior(covered, pair.b);
  std::vector<Vertex> out;
  for (Vertex v = 1; v + 1 < n; ++v)
    if (!covered[v]) out.push_back(v);
  return out;
}

inline std::vector<Vertex> cut_points(const CircleInstance& g, const DisjointPair<Tour>& pair) {
  const std::size_t n = g.size();
  if (pair.a.size() != n || pair.b.size() != n) throw DimensionError("tour size mismatch");
  std::vector<bool> covered(n, false);
  detail::mark_covered_interior(covered, g, pair.a);
  detail::mark_covered_interior(covered, g, pair.b);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (!covered[v]) out.push_back(v);
  return out;
}

inline int piece_total_depth(const DepthProfile& a, const DepthProfile& b, const Piece& piece) {
  if (a.kind != b.kind || a.size() != b.size()) throw DimensionError("profiles do not match");
  const std::size_t m = a.size();
  if (piece.length == 0 || piece.start >= m) throw RangeError("piece out of range");
  if (a.kind == ProfileKind::line ? piece.start + piece.length > m : piece.length > m)
    throw RangeError("piece out of range");
  int total = 0;
  for (std::size_t k = 0; k < piece.length; ++k) {
    const std::size_t s = (piece.start + k) % m;
    total += a[s] + b[s];
  }
  return total;
}

// Smallest total depth over every 3-piece of the pair (cyclic pieces for circles).
inline int min_three_piece_depth(const DepthProfile& a, const DepthProfile& b) {
  const std::size_t m = a.size();
  const std::size_t count = a.kind == ProfileKind::line ? (m >= 3 ? m - 2 : 0) : m;
  if (count == 0) throw RangeError("profile too short for a 3-piece");
  int best = piece_total_depth(a, b, Piece{0, 3});
  for (std::size_t s = 1; s < count; ++s) best = std::min(best, piece_total_depth(a, b, Piece{s, 3}));
  return best;
}

inline OneSectionReport one_sections(const CircleInstance& g, const DisjointPair<Tour>& pair) {
  if (!edges_disjoint(pair.a, pair.b)) throw PreconditionError("tours are not edge-disjoint");
  const DepthProfile pa = tour_depth_profile(g, pair.a);
  const DepthProfile pb = tour_depth_profile(g, pair.b);
  if (parity_class(pa) != Parity::odd || parity_class(pb) != Parity::odd)
    throw PreconditionError("1-sections are defined for odd-depth tours only");

  const std::size_t n = g.size();
  std::vector<bool> one(n);
  for (std::size_t i = 0; i < n; ++i) one[i] = pa[i] == 1 && pb[i] == 1;

  OneSectionReport report;
  const auto breaker = std::find(one.begin(), one.end(), false);
  if (breaker == one.end()) {
    report.sections.push_back(OneSection{0, n});
    return report;
  }
  // Scan once around the circle starting just after a segment outside every section.
  const std::size_t origin = static_cast<std::size_t>(breaker - one.begin());
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t s = (origin + k) % n;
    if (!one[s]) continue;
    const bool continues = !report.sections.empty() && [&] {
      const OneSection& last = report.sections.back();
      return (last.start + last.length) % n == s;
    }();
    if (continues)
      ++report.sections.back().length;
    else
      report.sections.push_back(OneSection{s, 1});
  }
  const std::size_t k = report.sections.size();
  if (k >= 2) {
    for (std::size_t i = 0; i < k; ++i) {
      const OneSection& cur = report.sections[i];
      const OneSection& next = report.sections[(i + 1) % k];
      const std::size_t end = cur.start + cur.length;
      report.gaps.push_back((next.start + n - end % n) % n);
    }
  }
  return report;
}

}  // namespace pod
