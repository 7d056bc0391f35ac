#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nsr/cli.hpp"

using nsr::run_cli;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) { return slurp(std::string(NSR_SOURCE_DIR) + "/tests/golden/" + name); }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("golden outputs") {
  CHECK(run({"catalog", "show", "particle"}).out == golden("catalog_show_particle.json"));
  CHECK(run({"catalog", "list"}).out == golden("catalog_list.txt"));
  CHECK(run({"tensors", "catalog:particle", "--at", "0,0,0", "--json"}).out == golden("tensors_particle_origin.json"));
}

TEST_CASE("exit codes") {
  CHECK(run({"suite", "catalog:flat3", "--samples", "5"}).code == 0);
  CHECK(run({"verify", "catalog:heisenberg", "--theorem", "thm31"}).code == 0);
  CHECK(run({"check", "catalog:hyperbolic3", "--samples", "10"}).code == 0);
  CHECK(run({"verify", "catalog:particle", "--theorem", "thm33", "--tol", "0", "--pi", "1+x1, x2",
             "--samples", "5"}).code == 1);
  CHECK(run({"verify", "catalog:flat3", "--theorem", "nope"}).code == 2);
  CHECK(run({"tensors", "catalog:flat3", "--at", "0,0"}).code == 2);
  CHECK(run({"tensors", "catalog:flat3"}).code == 2);
  CHECK(run({"suite", "catalog:sphere"}).code == 2);
  CHECK(run({"suite", "catalog:flat3", "--pi", "0,0,0", "--q", "0,0,0"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run missing = run({"suite", "/nonexistent.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("nsr: ", 0) == 0);
}

TEST_CASE("JSON envelope") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"suite", "catalog:particle", "--samples", "4", "--json"},
        {"verify", "catalog:particle", "--theorem", "sym26", "--samples", "4", "--json"},
        {"check", "catalog:particle", "--samples", "4", "--json"},
        {"tensors", "catalog:particle", "--at", "0.1,0.2,0.3", "--json"}}) {
    const Run r = run(args);
    CAPTURE(args[0]);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["manifold"] == "catalog:particle");
    CHECK(j["command"] == args[0]);
    CHECK(j.contains("results"));
    CHECK(j.contains("verdicts"));
  }
  const json v = json::parse(run({"verify", "catalog:particle", "--theorem", "thm33", "--samples", "4", "--json"}).out);
  CHECK(v["verdicts"].size() == 1);
  CHECK(v["verdicts"][0]["theorem_id"] == "thm33");
  CHECK(v["verdicts"][0]["samples"] == 4);
}

TEST_CASE("tensors respects planes and forms") {
  const json j = json::parse(run({"tensors", "catalog:hyperbolic3", "--at", "0,0,1,0", "--plane", "1,1,0:0,1,1",
                                  "--json"}).out);
  REQUIRE(j["results"]["sectional"].size() == 1);
  CHECK(j["results"]["sectional"][0]["lambda"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(j["results"].contains("conformal"));

  const json s = json::parse(run({"tensors", "catalog:hyperbolic3", "--at", "0.2,0.1,1.3,0", "--pi", "0,0,1/x3",
                                  "--json"}).out);
  CHECK(s["results"]["connection"] == "sns");
  for (const auto& x : s["results"]["r_mixed"].flatten()) CHECK(std::abs(x.get<double>()) < 1e-10);
  CHECK(run({"tensors", "catalog:flat3", "--at", "0,0,0,0,0", "--plane", "1,0,0:2,0,0"}).code == 2);
}

TEST_CASE("manifold files") {
  const std::string path = write_temp("nsr_cli_heis.json", R"({
  "n": 3, "l": 2,
  "g": [["1", "0"], ["0", "1"]],
  "A": [["-x2/2"], ["x1/2"]],
  "domain": [[-1, 1], [-1, 1], [-1, 1]],
  "pi": "x2, -x1"
})");
  const Run r = run({"verify", path, "--theorem", "twopath_sns", "--samples", "5", "--json"});
  CHECK(r.code == 0);

  const std::string bad = write_temp("nsr_cli_bad.json", "{\n  \"n\": 3,\n  \"l\": 2\n  \"g\": []\n}");
  const Run b = run({"suite", bad});
  CHECK(b.code == 2);
  CHECK(b.err.find("line 4") != std::string::npos);

  const std::string field = write_temp("nsr_cli_field.json", R"({"n": 3, "l": 2, "g": [["1", "0"], ["0", "log("]],
    "A": [["0"], ["0"]], "domain": [[-1, 1], [-1, 1], [-1, 1]]})");
  CHECK(run({"suite", field}).err.find("g[1][1]") != std::string::npos);
}

TEST_CASE("suite output is reproducible") {
  const std::vector<std::string> args{"suite", "catalog:random:4", "--samples", "10", "--seed", "9", "--json"};
  const Run a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out != run({"suite", "catalog:random:4", "--samples", "10", "--seed", "10", "--json"}).out);
}
