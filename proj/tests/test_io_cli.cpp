#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "boxslash/cli.hpp"
#include "boxslash/errors.hpp"
#include "boxslash/io.hpp"

using namespace boxslash;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("boxslash_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// Drops wall-clock fields so two runs can be compared.
Json without_times(Json doc) {
  for (Json& s : doc["suites"]) s.erase("seconds");
  return doc;
}

}  // namespace

TEST_CASE("product graph JSON round trip") {
  const ProductGraph pg(TreeSpec{{3, 2}}, 2);
  const Json doc = graph_to_json(pg);
  CHECK(doc["vertices"].size() == pg.vertex_count());
  CHECK(doc["edges"].size() == pg.edge_count());
  const LoadedGraph back = graph_from_json(doc);
  REQUIRE(back.product.has_value());
  CHECK(back.product->spec() == pg.spec());
  CHECK(back.graph == pg.graph());
  CHECK(graph_from_json(Json{{"tree_degrees", {3, 2}}, {"path_len", 2}}).graph == pg.graph());
}

TEST_CASE("plain graph JSON round trip and errors") {
  const Graph g(3, {{0, 1}, {1, 2}}, {"a", "b", "c"});
  const LoadedGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.graph == g);
  CHECK_FALSE(back.product.has_value());
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n":2,"edges":[[0,5]]})")), input_error);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"edges":[]})")), input_error);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"tree_degrees":[0],"path_len":2})")), input_error);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"([1,2])")), input_error);
}

TEST_CASE("layout JSON round trip and errors") {
  const ProductGraph pg(TreeSpec{{2}}, 2);
  const Layout layout = three_queue_layout(pg);
  const Json doc = layout_to_json(pg.graph(), layout.order, layout.coloring);
  CHECK(doc["colors"].contains(edge_key(pg.graph(), 0)));
  const Layout back = layout_from_json(doc, pg.graph());
  CHECK(back.order == layout.order);
  CHECK(back.coloring.colors == layout.coloring.colors);
  CHECK(back.coloring.k == 3);

  Json unknown = doc;
  unknown["order"][0] = "9@9";
  CHECK_THROWS_AS(layout_from_json(unknown, pg.graph()), input_error);
  Json missing = doc;
  missing["colors"].erase(edge_key(pg.graph(), 0));
  CHECK_THROWS_AS(layout_from_json(missing, pg.graph()), input_error);
  Json range = doc;
  range["colors"][edge_key(pg.graph(), 0)] = 3;
  CHECK_THROWS_AS(layout_from_json(range, pg.graph()), input_error);
}

TEST_CASE("hex colouring JSON round trip") {
  const HexColoring c = HexColoring::from_rows({{0, 1, 1}, {1, 0, 0}});
  CHECK(coloring_from_json(coloring_to_json(c)) == c);
  CHECK_THROWS_AS(coloring_from_json(Json::parse(R"({"n":1,"m":2,"chi":[[0]]})")), input_error);
}

TEST_CASE("gen reports the product sizes") {
  const Run json = cli({"gen", "--degrees", "2,2", "--path", "3"});
  CHECK(json.code == kExitOk);
  CHECK(json.json()["vertices"].size() == 21);
  CHECK(json.json()["edges"].size() == 44);

  const Run dot = cli({"gen", "--degrees", "2,2", "--path", "3", "--dot"});
  CHECK(dot.code == kExitOk);
  std::istringstream lines(dot.out);
  int nodes = 0, edges = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.find(" -- ") != std::string::npos) {
      ++edges;
    } else if (line.find("@") != std::string::npos) {
      ++nodes;
    }
  }
  CHECK(nodes == 21);
  CHECK(edges == 44);
}

TEST_CASE("layout piped into validate") {
  const Run layout = cli({"layout", "--degrees", "2,2", "--path", "3"});
  REQUIRE(layout.code == kExitOk);
  const Run queue = cli({"validate", "--queue"}, layout.out);
  CHECK(queue.code == kExitOk);
  CHECK(queue.json()["valid"] == true);
  const Run stack = cli({"validate", "--stack"}, layout.out);
  CHECK(stack.code == kExitViolation);
  CHECK(stack.json()["valid"] == false);
  CHECK_FALSE(stack.json()["violations"].empty());

  const Run reversed = cli({"layout", "--degrees", "2,2", "--path", "3", "--reverse"});
  CHECK(cli({"validate", "--queue"}, reversed.out).code == kExitOk);

  const Run pages = cli({"layout", "--degrees", "2", "--path", "3", "--stack-pages"});
  REQUIRE(pages.code == kExitOk);
  CHECK(cli({"validate", "--stack"}, pages.out).code == kExitOk);

  const std::string file = write_temp("layout.json", layout.out);
  CHECK(cli({"validate", "--queue", "--layout", file}).code == kExitOk);
}

TEST_CASE("solve") {
  const std::string k4 = write_temp("k4.json", R"({"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})");
  const Run stack = cli({"solve", "--stack", "--graph", k4});
  CHECK(stack.code == kExitOk);
  CHECK(stack.json()["value"] == 2);
  CHECK(stack.json()["exact"] == true);
  CHECK(cli({"validate", "--stack", "--graph", k4}, stack.json()["layout"].dump()).code == kExitOk);

  const Run queue = cli({"solve", "--queue", "--graph", k4, "--jobs", "2"});
  CHECK(queue.json()["value"] == 2);

  const Run capped = cli({"solve", "--stack", "--graph", k4, "--limit", "1"});
  CHECK(capped.code == kExitViolation);
  CHECK(capped.json()["limit_exceeded"] == true);
}

TEST_CASE("passes run") {
  const Run ok = cli({"passes", "run", "--degrees", "2,2", "--path", "2"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.json()["status"] == "ok");

  const Run starved = cli({"passes", "run", "--degrees", "2,2", "--path", "2", "--target-degrees", "3,2"});
  CHECK(starved.code == kExitViolation);
  CHECK(starved.json()["status"] == "pass_failure");
  CHECK(starved.json()["level"] == 0);
}

TEST_CASE("hex subcommands") {
  const Run grid = cli({"hex", "random", "--n", "3", "--m", "30", "--seed", "5"});
  REQUIRE(grid.code == kExitOk);
  CHECK(grid.json()["n"] == 3);
  CHECK(cli({"hex", "random", "--n", "3", "--m", "30", "--seed", "5"}).out == grid.out);
  const std::string file = write_temp("grid.json", grid.out);
  const Run analysis = cli({"hex", "analyze", "--coloring", file, "--s", "2", "--S", "3"});
  CHECK(analysis.code == kExitOk);
  CHECK(analysis.json().contains("top_or_long"));
}

TEST_CASE("selftest is reproducible") {
  const Run a = cli({"selftest", "--seed", "3", "--jobs", "2"});
  const Run b = cli({"selftest", "--seed", "3", "--jobs", "1"});
  CHECK(a.code == kExitOk);
  CHECK(a.json()["pass"] == true);
  CHECK(without_times(a.json()) == without_times(b.json()));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"gen", "--degrees", "2,x", "--path", "3"}).code == kExitUsage);
  CHECK(cli({"gen", "--degrees", "0", "--path", "3"}).code == kExitUsage);
  CHECK(cli({"validate", "--stack", "--queue"}, "{}").code == kExitUsage);
  CHECK(cli({"validate", "--queue"}, "not json").code == kExitUsage);
  CHECK(cli({"solve", "--stack", "--graph", "/nonexistent/graph.json"}).code == kExitUsage);
  const std::string big = write_temp("big.json", R"({"n":12,"edges":[[0,1]]})");
  CHECK(cli({"solve", "--stack", "--graph", big}).code == kExitUsage);
}
