#pragma once

// Command-line front end.
//
// Exit codes: 0 success, 1 a verification failed, 2 usage, parse or
// infeasibility error, 3 a search or solver budget was exhausted.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "analysis.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "metric.hpp"
#include "oracle.hpp"

namespace pod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct CommandConfig {
  bool json = false;
  std::string out_file;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::size_t budget_n = ExactSolverBudget{}.max_n;
  std::optional<double> time_limit;

  // Instance source: either a JSON file or a generated family.
  std::string input;
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::optional<double> weight;

  std::string problem;
  std::string format = "text";
  std::string objective = "minmax";
  std::optional<double> bound;
  std::string baseline;
  std::size_t from = 0;
  std::size_t to = 0;
  std::string csv_file;
  bool measured = false;
  std::vector<double> eps;

  ExactSolverBudget budget() const { return ExactSolverBudget{budget_n, time_limit}; }
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AnyInstance resolve_instance(const CommandConfig& c) {
  if (!c.input.empty() && !c.family.empty())
    throw PreconditionError("give either --input or --family, not both");
  if (!c.input.empty()) return load_instance(read_file(c.input));
  if (c.family.empty()) throw PreconditionError("an instance source is required: --input FILE or --family NAME --n N");
  if (c.n == 0) throw PreconditionError("--family needs --n");
  if (c.family == "line") return make_uniform_line(c.n);
  if (c.family == "circle") return make_uniform_circle(c.n);
  if (c.family == "random") return make_random_metric(c.n, c.seed);
  if (c.family == "shp-witness") return make_shp_witness(c.n, c.weight.value_or(shp_witness_weight(0.5, c.n)));
  if (c.family == "tsp-witness")
    return make_tsp_witness(c.n, c.weight.value_or(std::max(1.0, tsp_witness_weight(0.5, c.n))));
  throw PreconditionError("unknown family " + c.family);
}

inline std::string order_text(const std::vector<Vertex>& order) {
  std::string s;
  for (Vertex v : order) s += (s.empty() ? "" : " ") + std::to_string(v + 1);
  return s;
}

inline std::string number_text(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

template <Solution S>
void print_pair(std::ostream& os, const DisjointPair<S>& p) {
  const char* label = std::same_as<S, HamPath> ? "H" : "T";
  os << label << "1: " << order_text(p.a.order()) << "  cost " << number_text(p.cost_a) << "\n";
  os << label << "2: " << order_text(p.b.order()) << "  cost " << number_text(p.cost_b) << "\n";
  os << "objective " << number_text(p.objective) << ", total " << number_text(p.total()) << "\n";
}

inline void print_ratio(std::ostream& os, const RatioReport& r) {
  os << r.algorithm << " on " << r.instance << ": objective " << number_text(r.objective) << ", OPT "
     << number_text(r.opt) << ", ratio " << (r.exact ? r.exact->str() + " = " : "")
     << number_text(r.ratio) << "\n";
}

template <Solution S, class I>
void emit_pair(std::ostream& os, const CommandConfig& c, const I& g, const DisjointPair<S>& p,
               const std::string& problem, const std::optional<RatioReport>& ratio) {
  if (c.format == "dot") {
    os << to_dot(g, p);
  } else if (c.json) {
    Json j = to_json(g, p, problem);
    if (ratio) j["ratio"] = to_json(*ratio);
    os << j.dump(2) << "\n";
  } else {
    os << problem << " on " << describe(g) << "\n";
    print_pair(os, p);
    if (ratio) print_ratio(os, *ratio);
  }
}

inline int construct(const CommandConfig& c, std::ostream& os) {
  if (c.problem == "paths") {
    const auto p = algorithm_paths(c.n);
    const auto g = make_uniform_line(c.n);
    emit_pair(os, c, g, p, "paths",
              make_ratio_report(describe(g), "paths", p.objective, static_cast<double>(c.n - 1)));
  } else {
    const auto p = algorithm_tours(c.n);
    const auto g = make_uniform_circle(c.n);
    emit_pair(os, c, g, p, "tours",
              make_ratio_report(describe(g), "tours", p.objective, static_cast<double>(c.n)));
  }
  return kExitOk;
}

inline int solve(const CommandConfig& c, std::ostream& os) {
  const AnyInstance inst = resolve_instance(c);
  std::optional<LoadedSolution> baseline;
  if (!c.baseline.empty()) baseline = load_solution(read_file(c.baseline));
  return std::visit(
      [&](const auto& g) {
        const std::size_t n = g.size();
        if (c.problem == "shp2") {
          require_paths_feasible(n);
          Shp2Result r = [&] {
            if (!baseline) return shp2_metric(g, 0, n - 1, c.budget());
            verify_solution(g, *baseline);
            const auto* path = std::get_if<HamPath>(&baseline->solution);
            if (!path) throw PreconditionError("shp2 needs a path baseline");
            return shp2_metric(g, *path);
          }();
          emit_pair(os, c, g, r.pair, "shp2",
                    make_ratio_report(describe(g), "shp2", r.pair.objective, r.baseline_cost));
        } else {
          require_tours_feasible(n);
          Tsp2Result r = [&] {
            if (!baseline) return tsp2_naive(g, c.budget());
            verify_solution(g, *baseline);
            const auto* tour = std::get_if<Tour>(&baseline->solution);
            if (!tour) throw PreconditionError("tsp2 needs a tour baseline");
            return tsp2_naive(g, *tour);
          }();
          emit_pair(os, c, g, r.pair, "tsp2",
                    make_ratio_report(describe(g), "tsp2", r.pair.objective, r.baseline_cost));
        }
        return kExitOk;
      },
      inst);
}

template <Solution S>
void print_oracle(std::ostream& os, const CommandConfig& c, const OracleReport<S>& r) {
  if (c.json) {
    Json j{{"instance", r.instance},
           {"objective", r.objective == Objective::min_max ? "minmax" : "mintotal"},
           {"feasible", r.feasible},
           {"explored", r.explored},
           {"solutions", r.solutions},
           {"elapsed_seconds", r.elapsed_seconds}};
    if (r.bound) j["bound"] = *r.bound;
    if (r.min_max_cost) j["min_max_cost"] = *r.min_max_cost;
    if (r.min_total_cost) j["min_total_cost"] = *r.min_total_cost;
    if (r.witness) {
      j["witness"] = Json::array({Json{{"order", one_indexed(r.witness->a.order())}, {"cost", r.witness->cost_a}},
                                  Json{{"order", one_indexed(r.witness->b.order())}, {"cost", r.witness->cost_b}}});
    }
    os << j.dump(2) << "\n";
    return;
  }
  os << "oracle on " << r.instance << (r.bound ? " with bound " + number_text(*r.bound) : "") << "\n";
  if (!r.feasible) {
    os << (r.bound ? "no edge-disjoint pair within the bound\n" : "no edge-disjoint pair exists\n");
  } else {
    if (r.min_max_cost) os << "min max cost " << number_text(*r.min_max_cost) << "\n";
    if (r.min_total_cost) os << "min total cost " << number_text(*r.min_total_cost) << "\n";
    print_pair(os, *r.witness);
  }
  os << "explored " << r.explored << " nodes, " << r.solutions << " solutions, "
     << number_text(r.elapsed_seconds) << " s\n";
}

inline int oracle(const CommandConfig& c, std::ostream& os) {
  OracleOptions o;
  o.objective = c.objective == "mintotal" ? Objective::min_total : Objective::min_max;
  o.bound = c.bound;
  o.jobs = c.jobs;
  o.time_limit_seconds = c.time_limit;
  CommandConfig src = c;
  if (src.input.empty() && src.family.empty()) src.family = c.problem == "paths" ? "line" : "circle";
  const AnyInstance inst = resolve_instance(src);
  std::visit(
      [&](const auto& g) {
        if (c.problem == "paths")
          print_oracle(os, c, search_path_pairs(g, o));
        else
          print_oracle(os, c, search_tour_pairs(g, o));
      },
      inst);
  return kExitOk;
}

inline int verify_claims(const CommandConfig& c, std::ostream& os) {
  const ClaimsReport r = verify_small_claims(c.jobs);
  if (c.json) {
    Json checks = Json::array();
    for (const ClaimCheck& k : r.checks)
      checks.push_back({{"name", k.name}, {"passed", k.passed}, {"detail", k.detail}});
    os << Json{{"all_passed", r.all_passed()}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const ClaimCheck& k : r.checks)
      os << (k.passed ? "PASS " : "FAIL ") << k.name << " (" << k.detail << ")\n";
    os << (r.all_passed() ? "all checks passed\n" : "some checks failed\n");
  }
  return r.all_passed() ? kExitOk : kExitVerificationFailed;
}

inline int sweep(const CommandConfig& c, std::ostream& os) {
  const bool paths = c.problem == "paths";
  const std::size_t from = c.from != 0 ? c.from : (paths ? 6 : 5);
  const SweepResult r = paths ? sweep_paths(from, c.to)
                              : (c.measured ? sweep_tours_measured(from, c.to) : sweep_tours(from, c.to));
  if (!c.csv_file.empty()) {
    std::ofstream f(c.csv_file);
    if (!f) throw ParseError("cannot write " + c.csv_file);
    f << to_csv(r);
  }
  if (c.json) {
    os << to_json(r).dump(2) << "\n";
  } else if (c.format == "text") {
    os << "max ratio " << r.max_ratio << " at n=" << r.argmax_n << "\n";
    if (r.tail_average) os << "mean ratio on the 10k+1 subsequence " << number_text(*r.tail_average) << "\n";
    os << to_csv(r);
  } else {
    os << to_csv(r);
  }
  return kExitOk;
}

inline int witness(const CommandConfig& c, std::ostream& os) {
  OracleOptions o;
  o.jobs = c.jobs;
  o.time_limit_seconds = c.time_limit;
  const PairProblem problem = c.problem == "shp2" ? PairProblem::shp2 : PairProblem::tsp2;
  const auto pts = witness_sweep(problem, c.n, c.eps, o, c.budget());
  bool ok = true;
  Json arr = Json::array();
  for (const WitnessPoint& p : pts) {
    ok &= p.meets_target;
    if (c.json) {
      arr.push_back({{"epsilon", p.epsilon}, {"weight", p.weight}, {"target", p.target},
                     {"meets_target", p.meets_target}, {"report", to_json(p.report)}});
    } else {
      os << "eps " << number_text(p.epsilon) << ", W " << number_text(p.weight) << ": ";
      print_ratio(os, p.report);
      os << "  target " << number_text(p.target) << (p.meets_target ? " met\n" : " NOT met\n");
    }
  }
  if (c.json) os << arr.dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int export_instance(const CommandConfig& c, std::ostream& os) {
  const AnyInstance inst = resolve_instance(c);
  os << to_json(inst).dump(2) << "\n";
  return kExitOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig c;
  CLI::App app{"Pairs of edge-disjoint Hamiltonian paths and tours: constructions, exact search and ratio analysis",
               "pod"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", c.json, "Emit JSON");
  app.add_option("--out", c.out_file, "Write the report to FILE instead of stdout");
  app.add_option("--jobs", c.jobs, "Worker threads for exhaustive search")->check(CLI::PositiveNumber);
  app.add_option("--budget-n", c.budget_n, "Largest n handled by the exact solvers")->check(CLI::Range(2, 24));
  app.add_option("--time-limit", c.time_limit, "Seconds before a search gives up")->check(CLI::PositiveNumber);

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "Instance JSON file");
    sub->add_option("--family", c.family, "Generated instance family")
        ->check(CLI::IsMember({"line", "circle", "random", "shp-witness", "tsp-witness"}));
    sub->add_option("--seed", c.seed, "Seed for --family random");
    sub->add_option("--weight", c.weight, "Heavy-segment weight for witness families");
  };

  auto* construct = app.add_subcommand("construct", "Build the constructive pair on a uniform instance");
  construct->add_option("--problem", c.problem)->required()->check(CLI::IsMember({"paths", "tours"}));
  construct->add_option("--n", c.n)->required();
  construct->add_option("--format", c.format)->check(CLI::IsMember({"text", "json", "dot"}));
  construct->add_flag_callback("--dot", [&] { c.format = "dot"; }, "Same as --format dot");

  auto* solve = app.add_subcommand("solve", "Run the pair algorithm for a general metric instance");
  solve->add_option("--problem", c.problem)->required()->check(CLI::IsMember({"shp2", "tsp2"}));
  add_source(solve);
  solve->add_option("--n", c.n, "Size for --family");
  solve->add_option("--baseline", c.baseline, "Solution JSON used instead of the exact optimum");
  solve->add_option("--format", c.format)->check(CLI::IsMember({"text", "json", "dot"}));

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search for the best edge-disjoint pair");
  oracle->add_option("--problem", c.problem)->required()->check(CLI::IsMember({"paths", "tours"}));
  oracle->add_option("--n", c.n, "Size of the uniform line or circle");
  add_source(oracle);
  oracle->add_option("--objective", c.objective)->check(CLI::IsMember({"minmax", "mintotal"}));
  oracle->add_option("--bound", c.bound, "Only consider pairs with objective at most B");

  auto* verify = app.add_subcommand("verify-claims", "Re-run the small-n exhaustive checks");

  auto* sweep = app.add_subcommand("sweep", "Ratio of the constructive pair over a range of n");
  sweep->add_option("--problem", c.problem)->required()->check(CLI::IsMember({"paths", "tours"}));
  sweep->add_option("--from", c.from, "First n (default 6 for paths, 5 for tours)");
  sweep->add_option("--to", c.to)->required();
  sweep->add_option("--csv", c.csv_file, "Also write the CSV table to FILE");
  sweep->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv"}));
  sweep->add_flag("--measured", c.measured, "Tours: evaluate the built tours instead of the closed form");

  auto* witness = app.add_subcommand("witness", "Oracle ratio on the weighted witness instances");
  witness->add_option("--problem", c.problem)->required()->check(CLI::IsMember({"shp2", "tsp2"}));
  witness->add_option("--n", c.n)->required();
  witness->add_option("--eps", c.eps)->required()->delimiter(',')->check(CLI::PositiveNumber);

  auto* exp = app.add_subcommand("export", "Write a generated instance as JSON");
  add_source(exp);
  exp->add_option("--n", c.n, "Size for --family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::ofstream file;
  if (!c.out_file.empty()) {
    file.open(c.out_file);
    if (!file) {
      err << "error: cannot write " << c.out_file << "\n";
      return kExitUsage;
    }
  }
  std::ostream& os = c.out_file.empty() ? out : file;

  try {
    if (*construct) return detail::construct(c, os);
    if (*solve) return detail::solve(c, os);
    if (*oracle) return detail::oracle(c, os);
    if (*verify) return detail::verify_claims(c, os);
    if (*sweep) return detail::sweep(c, os);
    if (*witness) return detail::witness(c, os);
    if (*exp) return detail::export_instance(c, os);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (explored " << e.explored() << ")\n";
    return kExitResource;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pod::cli
