#pragma once

// JSON, DOT and CSV encodings. Vertex labels are 1-indexed in every external format.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "analysis.hpp"
#include "errors.hpp"
#include "instances.hpp"

namespace pod {

using Json = nlohmann::json;
using AnyInstance = std::variant<LineInstance, CircleInstance, MetricInstance>;
using AnySolution = std::variant<HamPath, Tour>;

// Parses JSON text; syntax errors carry the 1-based line and column of the offending byte.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::vector<double> number_array(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const Json& x : a) {
    if (!x.is_number()) throw ParseError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

inline std::string kind_of(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) throw ParseError("field \"kind\" must be a string");
  return k.get<std::string>();
}

}  // namespace detail

inline Json to_json(const LineInstance& g) { return Json{{"kind", "line"}, {"coords", g.coords()}}; }

inline Json to_json(const CircleInstance& g) {
  return Json{{"kind", "circle"}, {"positions", g.positions()}, {"circumference", g.circumference()}};
}

inline Json to_json(const MetricInstance& g) { return Json{{"kind", "metric"}, {"matrix", g.rows()}}; }

inline Json to_json(const AnyInstance& g) {
  return std::visit([](const auto& x) { return to_json(x); }, g);
}

inline AnyInstance instance_from_json(const Json& j) {
  const std::string kind = detail::kind_of(j);
  if (kind == "line") return LineInstance(detail::number_array(j, "coords"));
  if (kind == "circle") {
    const Json& c = detail::field(j, "circumference");
    if (!c.is_number()) throw ParseError("field \"circumference\" must be a number");
    return CircleInstance(detail::number_array(j, "positions"), c.get<double>());
  }
  if (kind == "metric") {
    const Json& m = detail::field(j, "matrix");
    if (!m.is_array()) throw ParseError("field \"matrix\" must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const Json& row : m) {
      if (!row.is_array()) throw ParseError("field \"matrix\" must be an array of rows");
      std::vector<double> r;
      for (const Json& x : row) {
        if (!x.is_number()) throw ParseError("matrix entries must be numbers");
        r.push_back(x.get<double>());
      }
      rows.push_back(std::move(r));
    }
    return MetricInstance(rows);
  }
  throw ParseError("unknown instance kind \"" + kind + "\"");
}

inline AnyInstance load_instance(const std::string& text) { return instance_from_json(parse_json(text)); }

inline std::vector<std::size_t> one_indexed(const std::vector<Vertex>& order) {
  std::vector<std::size_t> out;
  for (Vertex v : order) out.push_back(v + 1);
  return out;
}

template <DistanceInstance I>
Json to_json(const I& g, const HamPath& p) {
  return Json{{"kind", "path"}, {"order", one_indexed(p.order())}, {"cost", path_cost(g, p)}};
}

template <DistanceInstance I>
Json to_json(const I& g, const Tour& t) {
  return Json{{"kind", "tour"}, {"order", one_indexed(t.order())}, {"cost", tour_cost(g, t)}};
}

struct LoadedSolution {
  AnySolution solution;
  std::optional<double> cost;
};

inline LoadedSolution solution_from_json(const Json& j) {
  const std::string kind = detail::kind_of(j);
  const Json& o = detail::field(j, "order");
  if (!o.is_array()) throw ParseError("field \"order\" must be an array");
  std::vector<Vertex> order;
  for (const Json& x : o) {
    if (!x.is_number_integer() || x.get<long long>() < 1)
      throw ParseError("order entries must be positive integers (1-indexed)");
    order.push_back(static_cast<Vertex>(x.get<long long>() - 1));
  }
  std::optional<double> cost;
  if (j.contains("cost")) {
    if (!j.at("cost").is_number()) throw ParseError("field \"cost\" must be a number");
    cost = j.at("cost").get<double>();
  }
  if (kind == "path") return LoadedSolution{HamPath(std::move(order)), cost};
  if (kind == "tour") return LoadedSolution{Tour(std::move(order)), cost};
  throw ParseError("unknown solution kind \"" + kind + "\"");
}

inline LoadedSolution load_solution(const std::string& text) { return solution_from_json(parse_json(text)); }

// Recomputes the cost of a loaded solution; a stored cost that disagrees is an error.
template <DistanceInstance I>
double verify_solution(const I& g, const LoadedSolution& s) {
  const double c = std::visit([&](const auto& x) { return cost(g, x); }, s.solution);
  if (s.cost && std::abs(*s.cost - c) > kTolerance)
    throw InvalidInstanceError("stored cost " + std::to_string(*s.cost) + " does not match recomputed cost " +
                               std::to_string(c));
  return c;
}

template <DistanceInstance I, Solution S>
Json to_json(const I& g, const DisjointPair<S>& p, const std::string& problem) {
  return Json{{"problem", problem},
              {"instance", to_json(g)},
              {"solutions", Json::array({to_json(g, p.a), to_json(g, p.b)})},
              {"objective", p.objective},
              {"total", p.total()}};
}

inline Json to_json(const DepthProfile& p) { return Json(p.depths); }

inline Json to_json(const RatioReport& r) {
  Json j{{"instance", r.instance}, {"algorithm", r.algorithm}, {"objective", r.objective},
         {"opt", r.opt},           {"ratio", r.ratio}};
  if (r.oracle_min_max) j["oracle_min_max"] = *r.oracle_min_max;
  if (r.exact) j["ratio_exact"] = r.exact->str();
  return j;
}

inline Json to_json(const SweepResult& s) {
  Json pts = Json::array();
  for (const SweepPoint& p : s.points)
    pts.push_back({{"n", p.n}, {"objective", p.objective}, {"opt", p.opt}, {"ratio", p.ratio.str()}});
  Json j{{"points", pts}, {"max_ratio", s.max_ratio.str()}, {"argmax_n", s.argmax_n}};
  if (s.tail_average) j["tail_average"] = *s.tail_average;
  return j;
}

inline std::string to_csv(const SweepResult& s) {
  std::ostringstream os;
  os << "n,objective,opt,ratio,ratio_value\n";
  for (const SweepPoint& p : s.points)
    os << p.n << ',' << p.objective << ',' << p.opt << ',' << p.ratio.str() << ',' << p.ratio.value()
       << '\n';
  return os.str();
}

namespace detail {

inline void dot_positions(std::ostream& os, const LineInstance& g) {
  for (Vertex v = 0; v < g.size(); ++v)
    os << "  " << v + 1 << " [pos=\"" << g.coords()[v] << ",0!\"];\n";
}

inline void dot_positions(std::ostream& os, const CircleInstance& g) {
  const double radius = g.circumference() / (2.0 * std::numbers::pi);
  for (Vertex v = 0; v < g.size(); ++v) {
    const double a = 2.0 * std::numbers::pi * g.positions()[v] / g.circumference();
    os << "  " << v + 1 << " [pos=\"" << radius * std::cos(a) << ',' << radius * std::sin(a)
       << "!\"];\n";
  }
}

inline void dot_positions(std::ostream& os, const MetricInstance& g) {
  for (Vertex v = 0; v < g.size(); ++v) os << "  " << v + 1 << ";\n";
}

}  // namespace detail

// Undirected DOT graph: the first solution solid blue, the second dashed red.
template <class I, Solution S>
std::string to_dot(const I& g, const DisjointPair<S>& p) {
  std::ostringstream os;
  os << "graph pair {\n  layout=neato;\n  node [shape=circle];\n";
  detail::dot_positions(os, g);
  for (const Edge& e : p.a.edges())
    os << "  " << e.u + 1 << " -- " << e.v + 1 << " [color=blue, style=solid, class=first];\n";
  for (const Edge& e : p.b.edges())
    os << "  " << e.u + 1 << " -- " << e.v + 1 << " [color=red, style=dashed, class=second];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pod
