#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/cli.hpp"
#include "kzero/error.hpp"
#include "kzero/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace kzero;
using kzero::io::Json;

namespace {

namespace fs = std::filesystem;

cli::Outcome run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  return cli::run(args, in);
}

Json run_json(std::vector<std::string> args, int expected_status = 0) {
  const auto out = run(std::move(args));
  REQUIRE(out.status == expected_status);
  return Json::parse(out.output);
}

// Associativity fails: (a a) a = b a = a but a (a a) = a b = 0.
const std::string broken_algebra = R"({
  "objects": ["o"],
  "basis": [{"label": "1", "source": "o", "target": "o", "degree": 0},
            {"label": "a", "source": "o", "target": "o", "degree": 0},
            {"label": "b", "source": "o", "target": "o", "degree": 0}],
  "units": [0],
  "mu": {"2": {"0,0": [["1", 0]], "0,1": [["1", 1]], "1,0": [["1", 1]], "0,2": [["1", 2]], "2,0": [["1", 2]],
               "1,1": [["1", 2]], "2,1": [["1", 1]]}}
})";

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int status;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"snf-example", {"snf", "--preset", "snf-example"}, 0},
      {"snf-inline", {"snf", "--json", R"([[0, 6, 0], [4, 0, 10], ["-12", 0, 0]])"}, 0},
      {"snf-empty", {"snf", "--json", "[]"}, 0},
      {"group", {"group", "--json", R"({"generators": 3, "relations": [[2, 4, 0], [0, 6, 0]]})"}, 0},
      {"homology-periodic", {"homology", "--preset", "two-periodic"}, 0},
      {"homology-bounded-text", {"homology", "--preset", "bounded-example", "--format", "text"}, 0},
      {"euler", {"euler", "--preset", "bounded-example"}, 0},
      {"euler-periodic", {"euler", "--preset", "two-periodic"}, 1},
      {"psi", {"psi", "--preset", "two-periodic"}, 0},
      {"psi-odd-period", {"psi", "--preset", "odd-period"}, 1},
      {"fold", {"fold", "--preset", "bounded-example", "--period", "2"}, 0},
      {"cone", {"cone", "--preset", "times-two"}, 0},
      {"ainf-check", {"ainf-check", "--preset", "equator"}, 0},
      {"ainf-check-broken", {"ainf-check", "--json", broken_algebra}, 0},
      {"hcat", {"hcat", "--preset", "product"}, 0},
      {"functor-check", {"functor-check", "--preset", "equator-identity"}, 0},
      {"hochschild-equator", {"hochschild", "--preset", "equator", "--length", "6"}, 0},
      {"hochschild-dual-text", {"hochschild", "--preset", "dual-numbers", "--length", "5", "--format", "text"}, 0},
      {"hochschild-class-equator", {"hochschild-class", "--preset", "equator", "--length", "8"}, 0},
      {"hochschild-class-dual", {"hochschild-class", "--preset", "dual-numbers", "--length", "6"}, 1},
      {"k0", {"k0", "--preset", "standard-k0"}, 0},
      {"k0-undeclared", {"k0", "--json", R"({"generators": ["a"], "relations": [["a", "b", "a"]]})"}, 1},
      {"cofiber-check", {"cofiber-check", "--preset", "cofiber-triple"}, 0},
      {"groth", {"groth", "--preset", "identity-span"}, 0},
      {"localize", {"localize", "--preset", "cofiber-span"}, 0},
      {"pushout-check", {"pushout-check", "--preset", "indiscrete-span", "--format", "text"}, 0},
      {"simplex-cat", {"simplex-cat", "--preset", "standard-simplex", "--param", "dim_bound=1"}, 0},
      {"nerve", {"nerve", "--preset", "arrow-category", "--format", "text"}, 0},
      {"sconstruct", {"sconstruct", "--preset", "f2-free-modules", "--param", "max_rank=2", "--format", "text"}, 0},
      {"k0-s", {"k0-s", "--preset", "f2-free-modules"}, 0},
      {"concordance-check", {"concordance-check", "--preset", "constant-concordance"}, 0},
      {"list-presets", {"list-presets"}, 0},
      {"list-presets-text", {"list-presets", "--format", "text"}, 0},
      {"unknown-preset", {"hochschild-class", "--preset", "nope"}, 2},
      {"wrong-preset-kind", {"snf", "--preset", "equator"}, 2},
      {"malformed-json", {"snf", "--json", "[[1, 2"}, 2},
      {"unknown-subcommand", {"frobnicate"}, 2},
  };
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden corpus regenerates exactly") {
  const fs::path dir = KZERO_GOLDEN_DIR;
  const bool update = std::getenv("KZERO_UPDATE_GOLDEN") != nullptr;
  std::set<std::string> expected;
  for (const auto& c : golden_cases()) {
    CAPTURE(c.name);
    const auto out = run(c.args);
    CHECK(out.status == c.status);
    const fs::path file = dir / (c.name + ".out");
    expected.insert(file.filename().string());
    if (update) {
      fs::create_directories(dir);
      std::ofstream(file, std::ios::binary) << out.output;
    }
    REQUIRE(fs::exists(file));
    CHECK(read_file(file) == out.output);
  }
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(expected.count(entry.path().filename().string()) == 1);
}

TEST_CASE("snf example and error objects") {
  const Json snf = run_json({"snf", "--json", "[[2,4],[6,8]]"});
  CHECK(snf["diagonal"] == Json::array({"2", "4"}));

  const Json odd = run_json({"psi", "--preset", "odd-period"}, 1);
  CHECK(odd["error"]["kind"] == "unsupported-period");
  CHECK(odd["error"]["message"] == "period must be even");

  const Json unknown = run_json({"list-presets", "--format", "yaml"}, 2);
  CHECK(unknown["error"]["kind"] == "schema");
  CHECK(run({"k0", "--preset", "standard-k0", "--param", "max_rank"}).status == 2);
  CHECK(run({"k0", "--preset", "standard-k0", "--param", "size=3"}).status == 2);
  CHECK(run({"k0", "--preset", "standard-k0", "--json", "{}"}).status == 2);
  CHECK(run({"list-presets", "--preset", "equator"}).status == 2);
  CHECK(run({"snf", "--json", R"([["1.5"]])"}).status == 2);
  CHECK(run({"snf", "--json", "[[1], [1, 2]]"}).status == 2);
  CHECK(run({"homology", "--json", R"({"grading": {"type": "bounded", "min": 0, "max": 1},
                                      "ranks": {"0": 1, "1": 1}, "differentials": {"1": [[1, 1]]}})"}).status == 1);
}

TEST_CASE("input sources agree") {
  const std::string doc = R"({"generators": 1, "relations": [[4]]})";
  const auto inline_out = run({"group", "--json", doc});
  const auto stdin_out = run({"group"}, doc);
  const auto dash_out = run({"group", "-"}, doc);
  CHECK(inline_out.status == 0);
  CHECK(inline_out.output == stdin_out.output);
  CHECK(inline_out.output == dash_out.output);

  const fs::path tmp = fs::temp_directory_path() / "kzero_test_cli_input.json";
  std::ofstream(tmp) << doc;
  CHECK(run({"group", tmp.string()}).output == inline_out.output);
  fs::remove(tmp);
  CHECK(run({"group", (fs::temp_directory_path() / "kzero_missing.json").string()}).status == 2);
}

TEST_CASE("presets: sorted catalog, round trips, and every preset runs") {
  const auto& catalog = preset_catalog();
  REQUIRE(!catalog.empty());
  for (std::size_t i = 1; i < catalog.size(); ++i) CHECK(catalog[i - 1].name < catalog[i].name);
  CHECK(std::any_of(catalog.begin(), catalog.end(), [](const PresetInfo& p) { return p.name == "equator"; }));
  CHECK(run({"list-presets"}).output == run({"list-presets"}).output);

  const std::map<std::string, std::vector<std::string>> runner = {
      {"algebra", {"ainf-check"}}, {"chain-map", {"cone"}}, {"complex", {"homology"}},
      {"concordance", {"concordance-check"}}, {"cofiber-triple", {"cofiber-check"}},
      {"finite-category", {"nerve"}}, {"functor", {"functor-check"}}, {"matrix", {"snf"}},
      {"presentation", {"k0"}}, {"simplicial-set", {"simplex-cat"}}, {"span", {"groth", "pushout-check"}},
      {"toy", {"k0-s"}}};
  for (const auto& p : catalog) {
    CAPTURE(p.name);
    REQUIRE(runner.count(p.kind) == 1);
    for (const auto& cmd : runner.at(p.kind)) CHECK(run({cmd, "--preset", p.name}).status == 0);
  }

  for (const char* name : {"equator", "dual-numbers", "ground", "product"}) {
    const Json doc = preset_document(name);
    CHECK(io::from_category(io::to_category(doc)) == doc);
  }
  for (const char* name : {"identity-span", "cofiber-span", "indiscrete-span"}) {
    const Json doc = preset_document(name);
    CHECK(io::from_span(io::to_span(doc)) == doc);
  }
  for (const char* name : {"two-periodic", "bounded-example", "odd-period"}) {
    const Json doc = preset_document(name);
    CHECK(io::from_complex(io::to_complex(doc)) == doc);
  }
  const Json fc = preset_document("arrow-category");
  CHECK(io::from_finite_category(io::to_finite_category(fc)) == fc);
  const SimplicialSet X = io::to_simplicial_set(Json{{"standard", 2}, {"dim_bound", 2}});
  const SimplicialSet Y = io::to_simplicial_set(io::from_simplicial_set(X));
  CHECK(Y.simplices == X.simplices);
  CHECK(Y.faces == X.faces);
  CHECK(Y.degeneracies == X.degeneracies);
  const K0Presentation P = standard_presentation(4);
  const K0Presentation Q = io::to_presentation(io::from_presentation(P));
  CHECK(Q.generators == P.generators);
  CHECK(Q.relations == P.relations);
}

TEST_CASE("big integers travel as decimal strings") {
  const std::string big = "123456789012345678901234567890";
  const Json out = run_json({"snf", "--json", "[[\"" + big + "\"]]"});
  CHECK(out["diagonal"][0] == big);
  CHECK(io::to_integer(Json(big)) == Integer(big));
  CHECK(io::to_integer(Json(-7)) == -7);
  CHECK_THROWS_AS(io::to_integer(Json("12a")), SchemaError);
  CHECK_THROWS_AS(io::to_integer(Json(1.5)), SchemaError);
}

TEST_CASE("flagship command reports its class with a certificate") {
  const Json out = run_json({"hochschild-class", "--preset", "equator", "--length", "8"});
  CHECK(out["certified"] == true);
  CHECK(out["class"].is_string());
  const Json table = run_json({"hochschild", "--preset", "equator", "--length", "8"})["table"];
  REQUIRE(table.size() >= 3);
  for (const auto& row : table) CHECK(row.contains("certified"));
}

TEST_CASE("text mode renders aligned tables") {
  const auto out = run({"hochschild", "--preset", "equator", "--length", "4", "--format", "text"});
  CHECK(out.status == 0);
  CHECK(out.output.find("degree  chains  rank  torsion  certified") != std::string::npos);
  const auto err = run({"psi", "--preset", "odd-period", "--format", "text"});
  CHECK(err.status == 1);
  CHECK(err.output == "error (unsupported-period): period must be even\n");
}

TEST_CASE("output is identical across thread counts") {
  const std::vector<std::vector<std::string>> commands = {
      {"hochschild-class", "--preset", "equator", "--length", "8"},
      {"localize", "--preset", "indiscrete-span"},
      {"pushout-check", "--preset", "cofiber-span"},
      {"ainf-check", "--preset", "product"},
  };
  for (const auto& args : commands) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "2", "4"}) {
      setenv("KZERO_THREADS", threads, 1);
      outputs.push_back(run(args).output);
    }
    unsetenv("KZERO_THREADS");
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);
  }
}

TEST_CASE("every subcommand is wired") {
  const std::vector<std::string> expected = {
      "snf", "group", "homology", "euler", "psi", "fold", "cone", "ainf-check", "hcat", "functor-check",
      "hochschild", "hochschild-class", "k0", "cofiber-check", "groth", "localize", "pushout-check",
      "simplex-cat", "nerve", "sconstruct", "k0-s", "concordance-check", "list-presets"};
  CHECK(cli::subcommands() == expected);
  for (const auto& name : expected) CHECK(run({name, "--help"}).status == 0);
}
