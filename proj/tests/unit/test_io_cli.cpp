#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "pod/cli.hpp"
#include "pod/io.hpp"

using namespace pod;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("pod_test_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("JSON syntax errors report line and column") {
  const std::string text = "{\n  \"kind\": \"line\",\n  \"coords\": [1, 2,, 3]\n}\n";
  try {
    load_instance(text);
    FAIL("malformed JSON accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 19);  // the second comma
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("JSON schema errors") {
  CHECK_THROWS_AS(load_instance(R"({"kind": "line"})"), ParseError);
  CHECK_THROWS_AS(load_instance(R"({"kind": "sphere", "coords": [1]})"), ParseError);
  CHECK_THROWS_AS(load_instance(R"({"kind": "line", "coords": [1, "x"]})"), ParseError);
  CHECK_THROWS_AS(load_instance(R"({"kind": "circle", "positions": [0, 1, 2]})"), ParseError);
  CHECK_THROWS_AS(load_instance(R"({"kind": "metric", "matrix": [[0, 1], [2, 0]]})"), InvalidInstanceError);
  CHECK_THROWS_AS(load_solution(R"({"kind": "path", "order": [0, 1]})"), ParseError);
  CHECK_THROWS_AS(load_solution(R"({"kind": "path", "order": [1, 1, 2]})"), PreconditionError);
}

TEST_CASE("instances round-trip through JSON") {
  const AnyInstance line = make_shp_witness(7, 3.5);
  const AnyInstance circle = make_tsp_witness(8, 2.0);
  const AnyInstance metric = make_random_metric(6, 9);
  for (const AnyInstance& g : {line, circle, metric}) {
    const AnyInstance back = load_instance(to_json(g).dump());
    CHECK(to_json(back) == to_json(g));
  }
}

TEST_CASE("solutions round-trip and costs are re-verified") {
  const auto g = make_uniform_circle(9);
  const auto pair = algorithm_tours(9);
  for (const Tour* t : {&pair.a, &pair.b}) {
    const Json j = to_json(g, *t);
    CHECK(j["order"][0] == 1);
    const LoadedSolution s = solution_from_json(j);
    CHECK(std::get<Tour>(s.solution) == *t);
    CHECK(verify_solution(g, s) == tour_cost(g, *t));
  }
  Json bad = to_json(g, pair.a);
  bad["cost"] = 1.0;
  CHECK_THROWS_AS(verify_solution(g, solution_from_json(bad)), InvalidInstanceError);
}

TEST_CASE("construct rejects sizes without a pair") {
  const auto r = run_cli({"construct", "--problem", "paths", "--n", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("no pair exists for n ≤ 5") != std::string::npos);
  CHECK(run_cli({"construct", "--problem", "tours", "--n", "4"}).code == 2);
}

TEST_CASE("construct emits JSON that reloads with matching costs") {
  for (const std::string problem : {"paths", "tours"}) {
    const auto r = run_cli({"construct", "--problem", problem, "--n", "8", "--json"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    const AnyInstance g = instance_from_json(j["instance"]);
    double worst = 0;
    for (const Json& s : j["solutions"]) {
      const double c = std::visit([&](const auto& inst) { return verify_solution(inst, solution_from_json(s)); }, g);
      CHECK(c == s["cost"].get<double>());
      worst = std::max(worst, c);
    }
    CHECK(worst == j["objective"].get<double>());
    CHECK(j["objective"] == (problem == "paths" ? 13.0 : 14.0));
  }
}

TEST_CASE("construct emits DOT with both solutions in distinct styles") {
  const auto r = run_cli({"construct", "--problem", "tours", "--n", "10", "--dot"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("graph pair {", 0) == 0);
  CHECK(r.out.find("}\n") != std::string::npos);

  const std::regex edge(R"((\d+) -- (\d+) \[color=(\w+), style=(\w+), class=(\w+)\];)");
  std::set<std::pair<int, int>> blue;
  std::set<std::pair<int, int>> red;
  for (auto it = std::sregex_iterator(r.out.begin(), r.out.end(), edge); it != std::sregex_iterator(); ++it) {
    const auto e = std::make_pair(std::stoi((*it)[1]), std::stoi((*it)[2]));
    if ((*it)[3] == "blue") {
      CHECK((*it)[4] == "solid");
      blue.insert(e);
    } else {
      CHECK((*it)[3] == "red");
      CHECK((*it)[4] == "dashed");
      red.insert(e);
    }
  }
  const auto pair = algorithm_tours(10);
  std::set<std::pair<int, int>> a;
  std::set<std::pair<int, int>> b;
  for (const Edge& e : pair.a.edges()) a.insert({static_cast<int>(e.u + 1), static_cast<int>(e.v + 1)});
  for (const Edge& e : pair.b.edges()) b.insert({static_cast<int>(e.u + 1), static_cast<int>(e.v + 1)});
  CHECK(blue == a);
  CHECK(red == b);

  const std::string dot = to_dot(make_uniform_line(6), base_pair(6));
  CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
  CHECK(dot.find("1 [pos=\"1,0!\"]") != std::string::npos);
}

TEST_CASE("sweep emits CSV whose maximum row is n = 8") {
  const auto r = run_cli({"sweep", "--problem", "paths", "--to", "50", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,objective,opt,ratio,ratio_value");
  double best = 0;
  std::string best_row;
  while (std::getline(in, line)) {
    const double v = std::stod(line.substr(line.rfind(',') + 1));
    if (v > best) best = v, best_row = line;
  }
  CHECK(best_row.rfind("8,13,7,13/7,", 0) == 0);

  const auto text = run_cli({"sweep", "--problem", "tours", "--to", "40"});
  CHECK(text.out.find("max ratio 13/7 at n=7") != std::string::npos);
  const auto measured = run_cli({"sweep", "--problem", "tours", "--to", "40", "--measured"});
  CHECK(measured.out.find("max ratio 23/13 at n=13") != std::string::npos);
  CHECK(run_cli({"sweep", "--problem", "paths", "--from", "3", "--to", "9"}).code == 2);
}

TEST_CASE("sweep writes a CSV file") {
  const auto p = std::filesystem::temp_directory_path() / "pod_test_sweep.csv";
  const auto r = run_cli({"sweep", "--problem", "paths", "--to", "20", "--csv", p.string(), "--json"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["max_ratio"] == "13/7");
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,objective,opt,ratio,ratio_value");
}

TEST_CASE("verify-claims reports each check and fails on the circle bound") {
  const auto r = run_cli({"verify-claims", "--jobs", "2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("PASS paths n=5: no edge-disjoint pair") != std::string::npos);
  CHECK(r.out.find("FAIL tours n=5: min total >= 16n/5") != std::string::npos);
  CHECK(r.out.find("PASS paths n=11: no pair beats 16") != std::string::npos);
  const auto j = run_cli({"verify-claims", "--json"});
  CHECK(Json::parse(j.out)["all_passed"] == false);
}

TEST_CASE("oracle subcommand") {
  const auto r = run_cli({"oracle", "--problem", "paths", "--n", "8"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("min max cost 13") != std::string::npos);

  const auto none = run_cli({"oracle", "--problem", "tours", "--n", "4", "--json"});
  REQUIRE(none.code == 0);
  CHECK(Json::parse(none.out)["feasible"] == false);

  const auto bounded = run_cli({"oracle", "--problem", "paths", "--n", "10", "--bound", "14"});
  CHECK(bounded.out.find("no edge-disjoint pair within the bound") != std::string::npos);

  const auto total = run_cli({"oracle", "--problem", "tours", "--n", "6", "--objective", "mintotal", "--json"});
  CHECK(Json::parse(total.out)["min_total_cost"] == 18.0);

  const auto big = run_cli({"oracle", "--problem", "paths", "--n", "12"});
  CHECK(big.code == 3);
}

TEST_CASE("solve subcommand") {
  const auto r = run_cli({"solve", "--problem", "shp2", "--family", "random", "--n", "9", "--seed", "4", "--json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["ratio"]["ratio"].get<double>() <= 3.0);
  CHECK(j["solutions"][0]["order"][0] == 1);
  CHECK(j["solutions"][0]["order"][8] == 9);

  const auto inst = temp_file("inst.json", to_json(AnyInstance(make_random_metric(8, 2))).dump());
  const auto t = run_cli({"solve", "--problem", "tsp2", "--input", inst.string()});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("tsp2 on metric(n=8)") != std::string::npos);

  const auto g = make_random_metric(8, 2);
  const Tour start({0, 1, 2, 3, 4, 5, 6, 7});
  const auto base = temp_file("base.json", to_json(g, start).dump());
  const auto b = run_cli({"solve", "--problem", "tsp2", "--input", inst.string(), "--baseline", base.string(), "--json"});
  REQUIRE(b.code == 0);
  CHECK(Json::parse(b.out)["ratio"]["opt"] == tour_cost(g, start));

  const auto wrong = run_cli({"solve", "--problem", "shp2", "--input", inst.string(), "--baseline", base.string()});
  CHECK(wrong.code == 2);

  const auto broken = temp_file("broken.json", "{\n  \"kind\": \"metric\",\n  \"matrix\": [[0, 1]\n");
  const auto e = run_cli({"solve", "--problem", "tsp2", "--input", broken.string()});
  CHECK(e.code == 2);
  CHECK(e.err.find("line") != std::string::npos);

  CHECK(run_cli({"solve", "--problem", "tsp2"}).code == 2);
  CHECK(run_cli({"solve", "--problem", "tsp2", "--family", "circle", "--n", "4"}).code == 2);
}

TEST_CASE("witness subcommand") {
  const auto r = run_cli({"witness", "--problem", "tsp2", "--n", "7", "--eps", "0.5,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("target 1.5 met") != std::string::npos);
  const auto j = run_cli({"witness", "--problem", "shp2", "--n", "8", "--eps", "0.5", "--json"});
  REQUIRE(j.code == 0);
  CHECK(Json::parse(j.out)[0]["report"]["ratio"].get<double>() == Catch::Approx(2.5));
}

TEST_CASE("export writes an instance that loads back") {
  const auto r = run_cli({"export", "--family", "tsp-witness", "--n", "7", "--weight", "2.5"});
  REQUIRE(r.code == 0);
  const AnyInstance g = load_instance(r.out);
  CHECK(std::get<CircleInstance>(g).circumference() == 10.0);

  const auto out = std::filesystem::temp_directory_path() / "pod_test_export.json";
  REQUIRE(run_cli({"export", "--family", "line", "--n", "5", "--out", out.string()}).code == 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(std::get<LineInstance>(load_instance(ss.str())).size() == 5);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"construct", "--problem", "cycles", "--n", "8"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
