#pragma once

// Exhaustive search over edge-disjoint solution pairs.
//
// Single solutions are enumerated depth-first with a cost cap and an
// admissible completion bound, the enumeration forest split by first move
// across worker threads. Pairs are then found on the cost-sorted list: the
// min-max optimum is the first solution with a disjoint predecessor, and the
// min-total optimum is a double scan with early exits.

#include <algorithm>
#include <array>
#include <atomic>
#include <bitset>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "constructions.hpp"
#include "depth.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "metric.hpp"
#include "ratio.hpp"

namespace pod {

enum class Objective { min_max, min_total };

inline constexpr std::size_t kMaxOracleN = 22;
inline constexpr std::size_t kUnboundedPathsMaxN = 11;
inline constexpr std::size_t kUnboundedToursMaxN = 8;

struct OracleOptions {
  Objective objective = Objective::min_max;
  // Only pairs whose objective is at most this value are considered.
  std::optional<double> bound;
  std::size_t jobs = 1;
  std::optional<double> time_limit_seconds;
  std::size_t max_solutions = 20'000'000;
  // Optional predicate on a solution's visiting order; rejected solutions never enter a pair.
  std::function<bool(const std::vector<Vertex>&)> filter;
};

template <Solution S>
struct OracleReport {
  std::string instance;
  Objective objective = Objective::min_max;
  std::optional<double> bound;
  bool feasible = false;
  std::optional<double> min_max_cost;
  std::optional<double> min_total_cost;
  std::optional<DisjointPair<S>> witness;
  std::uint64_t explored = 0;
  std::size_t solutions = 0;
  double elapsed_seconds = 0.0;
};

namespace detail {

using EdgeSet = std::bitset<kMaxOracleN*(kMaxOracleN - 1) / 2>;

inline std::size_t edge_slot(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

struct Candidate {
  double cost = 0.0;
  EdgeSet edges;
  std::array<std::uint8_t, kMaxOracleN> order{};
};

// Enumerates every Hamiltonian path from s to t, or every canonical tour through 0,
// whose cost is at most `cap`.
class Enumerator {
 public:
  Enumerator(std::vector<double> dist, std::size_t n, bool closed, Vertex s, Vertex t, double cap,
             const OracleOptions& options)
      : d_(std::move(dist)), n_(n), closed_(closed), s_(s), t_(t), cap_(cap), options_(options),
        deadline_(options.time_limit_seconds) {}

  std::vector<Vertex> first_moves() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n_; ++v) {
      if (v == s_) continue;
      if (!closed_ && v == t_ && n_ > 2) continue;
      out.push_back(v);
    }
    return out;
  }

  std::vector<Candidate> run(std::size_t jobs) {
    const std::vector<Vertex> branches = first_moves();
    std::vector<std::vector<Candidate>> results(branches.size());
    std::vector<std::exception_ptr> errors(branches.size());
    auto worker = [&](std::size_t w, std::size_t stride) {
      for (std::size_t b = w; b < branches.size(); b += stride) {
        try {
          run_branch(branches[b], results[b]);
        } catch (...) {
          errors[b] = std::current_exception();
          abort_ = true;
        }
      }
    };
    jobs = std::max<std::size_t>(1, std::min(jobs, branches.size()));
    if (jobs == 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker, w, jobs);
      for (std::thread& th : pool) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);

    std::vector<Candidate> all;
    for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
    return all;
  }

  std::uint64_t explored() const { return explored_; }
  double elapsed() const { return deadline_.elapsed(); }

  // Admissible completion bound: every unvisited vertex (and the return to s for tours) is
  // entered exactly once, from a vertex that is still unvisited or is the current one.
  double completion_bound(Vertex current, std::uint32_t visited) const {
    double lb = 0.0;
    const std::uint32_t all = n_ == 32 ? ~0u : (1u << n_) - 1;
    const std::uint32_t rest = all & ~visited;
    for (Vertex v = 0; v < n_; ++v) {
      if (!(rest >> v & 1)) continue;
      double best = d(current, v);
      for (Vertex u = 0; u < n_; ++u)
        if ((rest >> u & 1) && u != v && (closed_ || u != t_)) best = std::min(best, d(u, v));
      lb += best;
    }
    if (closed_) {
      double back = rest ? std::numeric_limits<double>::infinity() : d(current, s_);
      for (Vertex u = 0; u < n_; ++u)
        if (rest >> u & 1) back = std::min(back, d(u, s_));
      lb += back;
    }
    return lb;
  }

 private:
  double d(Vertex a, Vertex b) const { return d_[a * n_ + b]; }

  struct State {
    std::array<std::uint8_t, kMaxOracleN> order{};
    std::size_t depth = 0;
    std::uint32_t visited = 0;
    double cost = 0.0;
    std::uint64_t local_explored = 0;
  };

  void run_branch(Vertex first, std::vector<Candidate>& out) {
    State st;
    st.order[0] = static_cast<std::uint8_t>(s_);
    st.order[1] = static_cast<std::uint8_t>(first);
    st.depth = 2;
    st.visited = (1u << s_) | (1u << first);
    st.cost = d(s_, first);
    if (st.cost <= cap_ + kTolerance) extend(st, out);
    explored_ += st.local_explored % kFlush;
  }

  static constexpr std::uint64_t kFlush = 1u << 14;

  void extend(State& st, std::vector<Candidate>& out) {
    if (++st.local_explored % kFlush == 0) {
      explored_ += kFlush;
      if (abort_) throw ResourceError("oracle search aborted", explored_);
      if (deadline_.expired()) {
        abort_ = true;
        throw ResourceError("oracle time limit exceeded", explored_);
      }
    }
    const Vertex current = st.order[st.depth - 1];
    if (st.depth == n_) {
      emit(st, out);
      return;
    }
    if (std::isfinite(cap_) && st.cost + completion_bound(current, st.visited) > cap_ + kTolerance)
      return;
    const std::size_t remaining = n_ - st.depth;
    if (closed_) {
      // Canonical tours have order[1] < order[n-1], so some unvisited vertex must exceed order[1].
      bool larger = false;
      for (Vertex v = st.order[1] + 1u; v < n_ && !larger; ++v) larger = !(st.visited >> v & 1);
      if (!larger) return;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (st.visited >> v & 1) continue;
      if (!closed_ && v == t_ && remaining > 1) continue;
      const double c = st.cost + d(current, v);
      if (c > cap_ + kTolerance) continue;
      st.order[st.depth++] = static_cast<std::uint8_t>(v);
      st.visited |= 1u << v;
      const double saved = st.cost;
      st.cost = c;
      extend(st, out);
      st.cost = saved;
      st.visited &= ~(1u << v);
      --st.depth;
    }
  }

  void emit(const State& st, std::vector<Candidate>& out) {
    double total = st.cost;
    if (closed_) {
      if (st.order[1] > st.order[n_ - 1]) return;
      total += d(st.order[n_ - 1], s_);
      if (total > cap_ + kTolerance) return;
    }
    if (options_.filter) {
      std::vector<Vertex> order(st.order.begin(), st.order.begin() + static_cast<std::ptrdiff_t>(n_));
      if (!options_.filter(order)) return;
    }
    Candidate c;
    c.cost = total;
    c.order = st.order;
    for (std::size_t i = 0; i + 1 < n_; ++i) c.edges.set(edge_slot(st.order[i], st.order[i + 1]));
    if (closed_) c.edges.set(edge_slot(st.order[n_ - 1], st.order[0]));
    out.push_back(c);
    if (++solutions_ > options_.max_solutions) {
      abort_ = true;
      throw ResourceError("oracle solution budget exceeded", explored_);
    }
  }

  std::vector<double> d_;
  std::size_t n_;
  bool closed_;
  Vertex s_;
  Vertex t_;
  double cap_;
  const OracleOptions& options_;
  Deadline deadline_;
  std::atomic<bool> abort_{false};
  std::atomic<std::uint64_t> explored_{0};
  std::atomic<std::size_t> solutions_{0};
};

template <DistanceInstance I>
std::vector<double> distance_table(const I& g) {
  const std::size_t n = g.size();
  std::vector<double> d(n * n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) d[a * n + b] = a == b ? 0.0 : g.distance(a, b);
  return d;
}

struct PairIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  double objective = 0.0;
};

inline std::optional<PairIndex> best_pair(const std::vector<Candidate>& c, Objective objective,
                                          std::optional<double> bound) {
  const double limit = bound ? *bound + kTolerance : std::numeric_limits<double>::infinity();
  if (objective == Objective::min_max) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].cost > limit) break;
      for (std::size_t i = 0; i < j; ++i)
        if ((c[i].edges & c[j].edges).none()) return PairIndex{i, j, c[j].cost};
    }
    return std::nullopt;
  }
  std::optional<PairIndex> best;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double cutoff = best ? best->objective - kTolerance : limit;
    if (2.0 * c[i].cost > cutoff + kTolerance) break;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double total = c[i].cost + c[j].cost;
      if (best ? total >= best->objective - kTolerance : total > limit) break;
      if ((c[i].edges & c[j].edges).none()) {
        best = PairIndex{i, j, total};
        break;
      }
    }
  }
  return best;
}

inline std::vector<Vertex> order_of(const Candidate& c, std::size_t n) {
  return std::vector<Vertex>(c.order.begin(), c.order.begin() + static_cast<std::ptrdiff_t>(n));
}

template <Solution S, DistanceInstance I>
OracleReport<S> search_pairs(const I& g, bool closed, Vertex s, Vertex t, std::size_t unbounded_max,
                             const OracleOptions& options) {
  const std::size_t n = g.size();
  OracleReport<S> report;
  report.instance = describe(g);
  report.objective = options.objective;
  report.bound = options.bound;
  if (n > kMaxOracleN)
    throw ResourceError("oracle supports at most " + std::to_string(kMaxOracleN) + " vertices", 0);
  if (!options.bound && n > unbounded_max)
    throw ResourceError("unbounded search is limited to n <= " + std::to_string(unbounded_max) +
                            "; pass a bound",
                        0);

  double cap = options.bound ? *options.bound : std::numeric_limits<double>::infinity();
  Enumerator probe(distance_table(g), n, closed, s, t, cap, options);
  if (options.bound && options.objective == Objective::min_total)
    cap = *options.bound - probe.completion_bound(s, 1u << s);

  Enumerator e(distance_table(g), n, closed, s, t, cap, options);
  const std::vector<Candidate> candidates = e.run(options.jobs);
  report.explored = e.explored();
  report.solutions = candidates.size();

  if (const auto best = best_pair(candidates, options.objective, options.bound)) {
    report.feasible = true;
    (options.objective == Objective::min_max ? report.min_max_cost : report.min_total_cost) =
        best->objective;
    report.witness = make_disjoint_pair(g, S(order_of(candidates[best->i], n)),
                                        S(order_of(candidates[best->j], n)));
    if (!edges_disjoint(report.witness->a, report.witness->b))
      throw std::logic_error("oracle witness shares an edge");
  }
  report.elapsed_seconds = e.elapsed();
  return report;
}

}  // namespace detail

// Best pair of edge-disjoint Hamiltonian (s, t)-paths. Without a bound, n <= 11.
template <DistanceInstance I>
OracleReport<HamPath> search_path_pairs(const I& g, Vertex s, Vertex t, const OracleOptions& options) {
  if (s >= g.size() || t >= g.size() || s == t) throw PreconditionError("s and t must be distinct vertices");
  return detail::search_pairs<HamPath>(g, false, s, t, kUnboundedPathsMaxN, options);
}

template <DistanceInstance I>
OracleReport<HamPath> search_path_pairs(const I& g, const OracleOptions& options) {
  return search_path_pairs(g, 0, g.size() - 1, options);
}

// Best pair of edge-disjoint tours. Without a bound, n <= 8.
template <DistanceInstance I>
OracleReport<Tour> search_tour_pairs(const I& g, const OracleOptions& options) {
  if (g.size() < 3) throw InvalidSizeError("a tour needs at least 3 vertices");
  return detail::search_pairs<Tour>(g, true, 0, 0, kUnboundedToursMaxN, options);
}

// All edge-disjoint tour pairs whose total cost is strictly below `total_limit`.
template <DistanceInstance I>
std::vector<DisjointPair<Tour>> tour_pairs_below(const I& g, double total_limit,
                                                 const OracleOptions& options = {}) {
  const std::size_t n = g.size();
  if (n > kMaxOracleN) throw ResourceError("instance too large for the oracle", 0);
  detail::Enumerator probe(detail::distance_table(g), n, true, 0, 0, total_limit, options);
  const double cap = total_limit - probe.completion_bound(0, 1u);
  detail::Enumerator e(detail::distance_table(g), n, true, 0, 0, cap, options);
  const auto c = e.run(options.jobs);
  std::vector<DisjointPair<Tour>> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i].cost + c[j].cost >= total_limit - kTolerance) break;
      if ((c[i].edges & c[j].edges).none())
        out.push_back(make_disjoint_pair(g, Tour(detail::order_of(c[i], n)),
                                         Tour(detail::order_of(c[j], n))));
    }
  return out;
}

// Keeps only tours whose depth profile on `g` is all-odd.
inline std::function<bool(const std::vector<Vertex>&)> odd_depth_filter(const CircleInstance& g) {
  return [g](const std::vector<Vertex>& order) {
    return parity_class(tour_depth_profile(g, Tour(order))) == Parity::odd;
  };
}

// ---------------------------------------------------------------------------
// Ratio reports and the small-instance claim suite
// ---------------------------------------------------------------------------

enum class PairProblem { shp2, tsp2 };

inline std::string to_string(PairProblem p) { return p == PairProblem::shp2 ? "shp2" : "tsp2"; }

struct RatioReport {
  std::string instance;
  std::string algorithm;
  double objective = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  std::optional<double> oracle_min_max;
  // Set when objective and opt are both integers.
  std::optional<Ratio> exact;
};

inline RatioReport make_ratio_report(std::string instance, std::string algorithm, double objective,
                                     double opt, std::optional<double> oracle_min_max = {}) {
  if (!(opt > 0)) throw PreconditionError("single-solution optimum must be positive");
  RatioReport r{std::move(instance), std::move(algorithm), objective, opt, objective / opt,
                oracle_min_max, std::nullopt};
  const double ro = std::round(objective);
  const double rp = std::round(opt);
  if (std::abs(objective - ro) <= kTolerance && std::abs(opt - rp) <= kTolerance)
    r.exact = Ratio(static_cast<std::int64_t>(ro), static_cast<std::int64_t>(rp));
  return r;
}

// Oracle min-max over all disjoint pairs divided by the single-solution optimum.
// The search is bounded by the guarantee of the matching pair algorithm (3 OPT or 2 OPT).
template <DistanceInstance I>
RatioReport witness_ratio(const I& g, PairProblem problem, OracleOptions options = {},
                          const ExactSolverBudget& budget = {}) {
  const std::size_t n = g.size();
  options.objective = Objective::min_max;
  double opt = 0.0;
  std::optional<double> min_max;
  if (problem == PairProblem::shp2) {
    require_paths_feasible(n);
    opt = path_cost(g, exact_shp(g, 0, n - 1, budget));
    options.bound = 3.0 * opt;
    const auto report = search_path_pairs(g, 0, n - 1, options);
    if (report.feasible) min_max = report.min_max_cost;
  } else {
    require_tours_feasible(n);
    opt = tour_cost(g, exact_tsp(g, budget));
    options.bound = 2.0 * opt;
    const auto report = search_tour_pairs(g, options);
    if (report.feasible) min_max = report.min_max_cost;
  }
  if (!min_max) throw ResourceError("no disjoint pair found within the algorithmic bound", 0);
  return make_ratio_report(describe(g), "oracle-" + to_string(problem), *min_max, opt, min_max);
}

struct ClaimCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ClaimsReport {
  std::vector<ClaimCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.passed; });
  }
};

namespace detail {

inline std::string integer_text(double x) { return std::to_string(exact_integer(x)); }

// Edge-length composition of a tour pair on a uniform circle: type 1 is n unit and n length-2
// edges, type 2 is n-1 unit and n+1 length-2 edges, type 3 is n unit, n-1 length-2 and one
// length-3 edge. Returns 0 for anything else.
inline int edge_type(const CircleInstance& g, const DisjointPair<Tour>& p) {
  const std::size_t n = g.size();
  std::array<std::size_t, 4> count{};
  for (const Tour* t : {&p.a, &p.b})
    for (const Edge& e : t->edges()) {
      const std::int64_t len = exact_integer(g.distance(e.u, e.v));
      if (len > 3) return 0;
      ++count[static_cast<std::size_t>(len)];
    }
  if (count[1] == n && count[2] == n && count[3] == 0) return 1;
  if (count[1] == n - 1 && count[2] == n + 1 && count[3] == 0) return 2;
  if (count[1] == n && count[2] == n - 1 && count[3] == 1) return 3;
  return 0;
}

}  // namespace detail

// Re-runs the small-n computer checks on uniform lines and circles.
inline ClaimsReport verify_small_claims(std::size_t jobs = 1) {
  ClaimsReport out;
  OracleOptions opt;
  opt.jobs = jobs;
  auto add = [&](std::string name, bool passed, std::string detail) {
    out.checks.push_back(ClaimCheck{std::move(name), passed, std::move(detail)});
  };

  for (std::size_t n = 2; n <= 5; ++n) {
    const auto r = search_path_pairs(make_uniform_line(n), opt);
    add("paths n=" + std::to_string(n) + ": no edge-disjoint pair", !r.feasible,
        r.feasible ? "found a pair" : "exhaustive search found none");
  }
  opt.objective = Objective::min_total;
  for (std::size_t n = 6; n <= 8; ++n) {
    const auto r = search_path_pairs(make_uniform_line(n), opt);
    const std::int64_t total = exact_integer(*r.min_total_cost);
    add("paths n=" + std::to_string(n) + ": min total >= 16(n-1)/5",
        5 * total >= 16 * static_cast<std::int64_t>(n - 1),
        "min total " + std::to_string(total) + ", bound " + Ratio(16 * (n - 1), 5).str());
  }

  opt.objective = Objective::min_max;
  for (std::size_t n = 3; n <= 4; ++n) {
    const auto r = search_tour_pairs(make_uniform_circle(n), opt);
    add("tours n=" + std::to_string(n) + ": no edge-disjoint pair", !r.feasible,
        r.feasible ? "found a pair" : "exhaustive search found none");
  }
  opt.objective = Objective::min_total;
  for (std::size_t n = 5; n <= 8; ++n) {
    const CircleInstance g = make_uniform_circle(n);
    const auto r = search_tour_pairs(g, opt);
    const std::int64_t total = exact_integer(*r.min_total_cost);
    add("tours n=" + std::to_string(n) + ": min total >= 16n/5",
        5 * total >= 16 * static_cast<std::int64_t>(n),
        "min total " + std::to_string(total) + ", bound " + Ratio(16 * n, 5).str());
  }
  for (std::size_t n = 5; n <= 8; ++n) {
    const CircleInstance g = make_uniform_circle(n);
    OracleOptions odd = opt;
    odd.filter = odd_depth_filter(g);
    const auto r = search_tour_pairs(g, odd);
    const bool ok = !r.feasible || 5 * exact_integer(*r.min_total_cost) >= 16 * static_cast<std::int64_t>(n);
    add("tours n=" + std::to_string(n) + ", odd-depth pairs: min total >= 16n/5", ok,
        r.feasible ? "min total " + detail::integer_text(*r.min_total_cost) + ", bound " + Ratio(16 * n, 5).str()
                   : "no odd-depth pair");
  }
  for (std::size_t n = 5; n <= 8; ++n) {
    const CircleInstance g = make_uniform_circle(n);
    const auto pairs = tour_pairs_below(g, 16.0 * static_cast<double>(n) / 5.0, opt);
    std::array<std::size_t, 4> types{};
    for (const auto& p : pairs) ++types[static_cast<std::size_t>(detail::edge_type(g, p))];
    add("tours n=" + std::to_string(n) + ": every pair below 16n/5 has one of the three edge compositions",
        types[0] == 0,
        std::to_string(pairs.size()) + " pairs; type 1: " + std::to_string(types[1]) +
            ", type 2: " + std::to_string(types[2]) + ", type 3: " + std::to_string(types[3]) +
            ", other: " + std::to_string(types[0]));
  }

  opt.objective = Objective::min_max;
  for (std::size_t n = 6; n <= 9; ++n) {
    const auto r = search_path_pairs(make_uniform_line(n), opt);
    const std::int64_t best = exact_integer(*r.min_max_cost);
    add("paths n=" + std::to_string(n) + ": min max equals the base pair cost",
        best == catalog_entry(n).objective(),
        "oracle " + std::to_string(best) + ", base pair " + std::to_string(catalog_entry(n).objective()));
  }
  for (std::size_t n = 10; n <= 11; ++n) {
    const std::int64_t target = catalog_entry(n).objective();
    OracleOptions bounded = opt;
    bounded.bound = static_cast<double>(target - 1);
    const auto below = search_path_pairs(make_uniform_line(n), bounded);
    bounded.bound = static_cast<double>(target);
    const auto at = search_path_pairs(make_uniform_line(n), bounded);
    const bool ok = !below.feasible && at.feasible && exact_integer(*at.min_max_cost) == target;
    add("paths n=" + std::to_string(n) + ": no pair beats " + std::to_string(target), ok,
        std::string(below.feasible ? "found a pair below the target" : "none below the target") +
            (at.feasible ? ", target attained" : ", target not attained"));
  }
  return out;
}

}  // namespace pod
