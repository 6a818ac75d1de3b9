#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpa/cli.hpp"
#include "lpa/io.hpp"

using namespace lpa;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "lpa_io_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json sample5_json() {
  return digraph_to_json(Digraph(
      5, {{1, 2}, {2, 1}, {2, 3}, {2, 5}, {3, 2}, {4, 1}, {4, 3}, {4, 5}, {5, 3}, {5, 4}}));
}

}  // namespace

TEST_CASE("seed JSON round-trips bit-exactly", "[io]") {
  Seed m = mutate(initial_seed_binomial(Digraph::complete(2)), 0);
  json doc = seed_to_json(m);
  REQUIRE(doc.dump() ==
          "{\"rank\":2,\"slots\":[{\"ambient\":\"X1^-1*X2+A1*X1^-1\",\"exchange\":\"X2+A1\"},"
          "{\"ambient\":\"X2\",\"exchange\":\"A2*X1+A1\"}]}");
  Seed back = seed_from_json(doc);
  REQUIRE(seed_to_json(back).dump() == doc.dump());
  REQUIRE(seeds_equivalent(back, m));
}

TEST_CASE("seed JSON validation", "[io]") {
  REQUIRE_THROWS_AS(seed_from_json(json::parse("[1,2]")), ParseError);
  REQUIRE_THROWS_AS(seed_from_json(json{{"slots", json::array()}}), ParseError);
  REQUIRE_THROWS_AS(seed_from_json(json{{"rank", 0}, {"slots", json::array()}}), ParseError);
  // wrong slot count
  json two{{"rank", 2}, {"slots", {{{"ambient", "X1"}, {"exchange", "X2+A1"}}}}};
  REQUIRE_THROWS_AS(seed_from_json(two), ParseError);
  // unparseable polynomial
  json bad{{"rank", 1}, {"slots", {{{"ambient", "X1"}, {"exchange", "X1+"}}}}};
  REQUIRE_THROWS_AS(seed_from_json(bad), ParseError);
  // symbol outside the cluster
  json big{{"rank", 3},
           {"slots",
            {{{"ambient", "X1"}, {"exchange", "X2+A1"}},
             {{"ambient", "X2"}, {"exchange", "X5+A2"}},
             {{"ambient", "X3"}, {"exchange", "X1+A3"}}}}};
  try {
    seed_from_json(big);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(std::string(e.what()).find("mentions X5 beyond rank 3") != std::string::npos);
  }
}

TEST_CASE("digraph JSON round-trips", "[io]") {
  json doc = sample5_json();
  Digraph g = digraph_from_json(doc);
  REQUIRE(digraph_to_json(g).dump() == doc.dump());
  REQUIRE_THROWS_AS(digraph_from_json(json::parse("{\"n\":2}")), ParseError);
  REQUIRE_THROWS_AS(digraph_from_json(json::parse("{\"n\":0,\"edges\":[]}")), ParseError);
  REQUIRE_THROWS_AS(digraph_from_json(json::parse("{\"n\":2,\"edges\":[[1]]}")), ParseError);
  REQUIRE_THROWS_AS(digraph_from_json(json::parse("{\"n\":2,\"edges\":[[1,1]]}")), Error);
}

TEST_CASE("exchange graph JSON and DOT rendering", "[io]") {
  ExchangeGraph g = explore(initial_seed_binomial(Digraph::complete(2)));
  SequenceLabeling labels = label_by_sequences(g);
  REQUIRE(labels.ok);
  json doc = graph_to_json(g, SeedKind::binomial, &labels);
  REQUIRE(doc["kind"] == "binomial");
  REQUIRE(doc["n"] == 2);
  REQUIRE(doc["root"] == 0);
  REQUIRE(doc["truncated"] == false);
  REQUIRE(doc["vertices"].size() == 5);
  REQUIRE(doc["edges"].size() == 5);
  REQUIRE(doc["vertices"][0]["sequence"] == "");
  REQUIRE_FALSE(doc["vertices"][0].contains("seed"));

  std::string dot = graph_doc_to_dot(doc);
  REQUIRE(dot.rfind("graph exchange {\n", 0) == 0);
  REQUIRE(dot.find("v0 [label=\"()\"];") != std::string::npos);
  REQUIRE(dot.find("label=\"2/1\"") != std::string::npos);  // a swap edge
  REQUIRE(dot.back() == '\n');
  REQUIRE(graph_to_dot(g, SeedKind::binomial, &labels) == dot);

  json with_seeds = graph_to_json(g, SeedKind::binomial, &labels, true);
  REQUIRE(seeds_equivalent(seed_from_json(with_seeds["vertices"][2]["seed"]),
                           g.vertex(2).seed));
  REQUIRE_THROWS_AS(graph_doc_to_dot(json::parse("{\"vertices\":3}")), ParseError);
}

TEST_CASE("cli: seed and mutate", "[cli]") {
  auto direct = run({"seed", "--complete", "2"});
  REQUIRE(direct.code == 0);
  REQUIRE(direct.err.empty());
  REQUIRE(direct.out.find("X2+A1") != std::string::npos);

  fs::path graph = scratch() / "sample5.json";
  std::ofstream(graph) << sample5_json().dump();
  auto from_file = run({"seed", "--graph", graph.string(), "--kind", "binomial"});
  REQUIRE(from_file.code == 0);
  REQUIRE(from_file.out.find("X1*X3*X5+A2") != std::string::npos);
  auto linear = run({"seed", "--graph", graph.string(), "--kind", "linear"});
  REQUIRE(linear.code == 0);
  REQUIRE(linear.out.find("X5+X3+X1+A2") != std::string::npos);

  // a direction repeated twice undoes itself
  auto twice = run({"mutate", "--complete", "2", "--sequence", "1,1"});
  REQUIRE(twice.code == 0);
  REQUIRE(twice.out == direct.out);

  auto bad = run({"mutate", "--complete", "2", "--sequence", "3"});
  REQUIRE(bad.code == 1);
  REQUIRE(bad.err.find("out of range") != std::string::npos);
}

TEST_CASE("cli: explore and export", "[cli]") {
  auto a = run({"explore", "--complete", "2"});
  auto b = run({"explore", "--complete", "2"});
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(json::parse(a.out)["vertices"].size() == 5);

  fs::path dir = scratch();
  fs::path json_path = dir / "g2.json";
  fs::path dot_path = dir / "g2.dot";
  fs::path direct_dot = dir / "direct.dot";
  REQUIRE(run({"explore", "--complete", "2", "--out", json_path.string()}).code == 0);
  REQUIRE(run({"explore", "--complete", "2", "--out", direct_dot.string()}).code == 0);
  REQUIRE(run({"export", "--in", json_path.string(), "--out", dot_path.string()}).code == 0);
  REQUIRE(slurp(dot_path) == slurp(direct_dot));
  REQUIRE(slurp(dot_path).find("graph exchange {") != std::string::npos);

  auto to_stdout = run({"export", "--in", json_path.string()});
  REQUIRE(to_stdout.code == 0);
  REQUIRE(to_stdout.out == slurp(dot_path));

  auto truncated = run({"explore", "--complete", "3", "--max-seeds", "4"});
  REQUIRE(truncated.code == 0);
  REQUIRE(truncated.err.find("truncated") != std::string::npos);
  REQUIRE(json::parse(truncated.out)["truncated"] == true);
}

TEST_CASE("cli: verify", "[cli]") {
  auto counts = run({"verify", "--complete", "2", "--checks", "counts"});
  REQUIRE(counts.code == 0);
  REQUIRE(counts.out.find("seeds 5/5") != std::string::npos);
  REQUIRE(counts.out.find("PASS") != std::string::npos);
  REQUIRE(counts.out.find("FAIL") == std::string::npos);

  auto several = run({"verify", "--complete", "2", "--checks", "thm42,prop33,iso"});
  REQUIRE(several.code == 0);
  REQUIRE(several.out.find("FAIL") == std::string::npos);

  auto unknown = run({"verify", "--complete", "2", "--checks", "bogus"});
  REQUIRE(unknown.code == 1);
  REQUIRE(unknown.err.find("unknown check 'bogus'") != std::string::npos);
}

TEST_CASE("cli: error handling", "[cli]") {
  auto nograph = run({"seed"});
  REQUIRE(nograph.code == 1);
  REQUIRE(nograph.err.find("need a graph") != std::string::npos);

  fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << "{not json";
  auto badfile = run({"export", "--in", bad.string()});
  REQUIRE(badfile.code == 1);
  REQUIRE(badfile.err.find(bad.string()) != std::string::npos);

  auto missing = run({"export", "--in", (scratch() / "absent.json").string()});
  REQUIRE(missing.code == 1);
  REQUIRE(missing.err.find("cannot open") != std::string::npos);

  REQUIRE(run({"seed", "--complete", "2", "--unknown-flag"}).code != 0);
  REQUIRE(run({}).code != 0);
  REQUIRE(run({"seed", "--complete", "0"}).code == 1);
  REQUIRE(run({"seed", "--complete", "2", "--kind", "cubic"}).code == 1);
}
