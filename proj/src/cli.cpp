#include "boxslash/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "boxslash/errors.hpp"
#include "boxslash/io.hpp"
#include "boxslash/suites.hpp"

namespace boxslash {

namespace {

// Thrown for bad files or arguments found after parsing; maps to exit 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_error(std::string(what) + " must be a comma separated list of integers");
    }
  }
  if (out.empty()) throw usage_error(std::string(what) + " is empty");
  return out;
}

Json read_json(std::istream& in, const std::string& label) {
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(label + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw usage_error("cannot open " + path);
  return read_json(file, path);
}

void print(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

// Product order colouring each edge by kind, optionally reversed: the
// fixture the passes keep whole.
LayoutInstance kind_fixture(const ProductGraph& pg, bool reverse) {
  Layout layout = three_queue_layout(pg);
  if (reverse) layout.order = layout.order.reversed();
  return LayoutInstance::make(pg, layout.order, layout.coloring);
}

unsigned resolve_jobs(int jobs) {
  if (jobs > 0) return static_cast<unsigned>(jobs);
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SuiteResult> run_suites(const std::vector<std::function<SuiteResult()>>& suites, unsigned jobs) {
  std::vector<SuiteResult> results(suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suites.size(); i = next++) results[i] = suites[i]();
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, suites.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

SuiteResult z_fixture_suite() {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out{"Z table of the product-order fixture", {}, 0};
  for (bool reverse : {false, true}) {
    const ProductGraph pg(TreeSpec{{2, 2}}, 2);
    const PipelineResult r = run_passes(kind_fixture(pg, reverse), {0, 0});
    const Direction want = reverse ? Direction::Dec : Direction::Inc;
    for (int i = 1; i <= r.z.n(); ++i) {
      for (int j = i; j <= r.z.n(); ++j) {
        for (int p = 1; p <= r.z.m(); ++p) {
          ++out.report.checked;
          if (r.z.at(i, j, p) != want) {
            out.report.fail("Z(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(p) + ") is " +
                            to_string(r.z.at(i, j, p)));
          }
        }
      }
    }
    out.report.merge(r.consistency);
    out.report.merge(r.identity);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Json suite_to_json(const SuiteResult& s) {
  constexpr std::size_t kListed = 20;
  std::vector<std::string> shown(s.report.violations.begin(),
                                 s.report.violations.begin() +
                                     static_cast<long>(std::min(kListed, s.report.violations.size())));
  return {{"name", s.name},
          {"pass", s.ok()},
          {"checked", s.report.checked},
          {"failures", s.report.violations.size()},
          {"examples", shown},
          {"seconds", s.seconds}};
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenArgs {
  std::string degrees;
  int path{1};
  bool dot{false};
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const ProductGraph pg(TreeSpec{parse_int_list(a.degrees, "--degrees")}, a.path);
  if (a.dot) {
    out << to_dot(pg);
  } else {
    print(out, graph_to_json(pg));
  }
  return kExitOk;
}

struct LayoutArgs {
  std::string degrees;
  int path{1};
  bool three_queue{false};
  bool stack_pages{false};
  bool queues{false};
  bool reverse{false};
};

int cmd_layout(const LayoutArgs& a, std::ostream& out) {
  const ProductGraph pg(TreeSpec{parse_int_list(a.degrees, "--degrees")}, a.path);
  const Json descriptor{{"tree_degrees", pg.spec().degrees}, {"path_len", pg.path_len()}};
  LinearOrder order = product_order(pg);
  if (a.reverse) order = order.reversed();
  EdgeColoring coloring;
  bool exact = true;
  if (a.stack_pages) {
    const ColorCount cc = stack_pages_for_order(pg.graph(), order);
    coloring = cc.coloring;
    exact = cc.exact;
  } else if (a.queues) {
    coloring = queues_for_order(pg.graph(), order).coloring;
  } else {
    coloring = three_queue_layout(pg).coloring;
  }
  Json doc = layout_to_json(pg.graph(), order, coloring, descriptor);
  if (!exact) doc["exact"] = false;
  print(out, doc);
  return kExitOk;
}

struct ValidateArgs {
  bool stack{false};
  bool queue{false};
  std::string layout;
  std::string graph;
};

int cmd_validate(const ValidateArgs& a, std::istream& in, std::ostream& out) {
  const Json doc = a.layout.empty() ? read_json(in, "standard input") : read_json_file(a.layout);
  Json graph_doc;
  if (!a.graph.empty()) {
    graph_doc = read_json_file(a.graph);
  } else if (doc.contains("graph")) {
    graph_doc = doc.at("graph");
  } else {
    throw usage_error("layout has no \"graph\" field; pass --graph");
  }
  const LoadedGraph g = graph_from_json(graph_doc);
  const Layout layout = layout_from_json(doc, g.graph);
  const LayoutReport report = a.stack ? validate_stack_layout(g.graph, layout.order, layout.coloring)
                                      : validate_queue_layout(g.graph, layout.order, layout.coloring);
  Json res = report_to_json(g.graph, report);
  res["kind"] = a.stack ? "stack" : "queue";
  print(out, res);
  return report.valid ? kExitOk : kExitViolation;
}

struct SolveArgs {
  bool stack{false};
  bool queue{false};
  std::string graph;
  int limit{-1};
  long budget_ms{-1};
  int jobs{1};
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const LoadedGraph g = graph_from_json(read_json_file(a.graph));
  SolveOptions options;
  options.upper_limit = a.limit;
  if (a.budget_ms >= 0) options.budget = std::chrono::milliseconds(a.budget_ms);
  options.jobs = resolve_jobs(a.jobs);
  const LayoutKind kind = a.stack ? LayoutKind::Stack : LayoutKind::Queue;
  const SolveResult r = solve(g.graph, kind, options);
  print(out, solve_result_to_json(g.graph, r, kind));
  return r.limit_exceeded ? kExitViolation : kExitOk;
}

struct PassesArgs {
  std::string graph;
  std::string layout;
  std::string degrees;
  int path{1};
  bool reverse{false};
  std::string targets;
};

int cmd_passes(const PassesArgs& a, std::ostream& out) {
  LayoutInstance instance;
  if (!a.graph.empty()) {
    const LoadedGraph g = graph_from_json(read_json_file(a.graph));
    if (!g.product) throw usage_error("passes need a product graph descriptor");
    if (a.layout.empty()) {
      instance = kind_fixture(*g.product, a.reverse);
    } else {
      const Layout layout = layout_from_json(read_json_file(a.layout), g.graph);
      instance = LayoutInstance::make(*g.product, layout.order, layout.coloring);
    }
  } else if (!a.degrees.empty()) {
    instance = kind_fixture(ProductGraph(TreeSpec{parse_int_list(a.degrees, "--degrees")}, a.path), a.reverse);
  } else {
    throw usage_error("give --graph (with optional --layout) or --degrees");
  }
  std::vector<int> targets = a.targets.empty()
                                 ? std::vector<int>(instance.graph.spec().degrees.size(), 0)
                                 : parse_int_list(a.targets, "--target-degrees");
  try {
    const PipelineResult r = run_passes(instance, targets);
    Json doc = pipeline_to_json(r);
    const bool ok = r.transfer.ok() && r.identity.ok() && r.consistency.ok() && r.related.ok();
    doc["status"] = ok ? "ok" : "violations";
    print(out, doc);
    return ok ? kExitOk : kExitViolation;
  } catch (const pass_failure& e) {
    print(out, {{"status", "pass_failure"}, {"level", e.level()}, {"error", e.what()}});
    return kExitViolation;
  }
}

struct HexArgs {
  std::string coloring;
  int s{1};
  int S{0};
  int n{3};
  int m{3};
  std::uint64_t seed{1};
};

int cmd_hex_analyze(const HexArgs& a, std::ostream& out) {
  const HexColoring coloring = coloring_from_json(read_json_file(a.coloring));
  if (a.s < 1) throw usage_error("--s must be positive");
  bool ok = true;
  Json doc{{"coloring", coloring_to_json(coloring)}, {"s", a.s}};

  const SpanningPath path = monochromatic_spanning_path(coloring);
  const CheckReport path_check = verify_spanning_path(coloring, path, static_cast<std::size_t>(std::min(coloring.n(), coloring.m())));
  Json cells = Json::array();
  for (const Cell& c : path.cells) cells.push_back(cell_to_json(c));
  doc["spanning_path"] = {{"color", to_string(path.color)}, {"cells", cells}, {"verification", check_report_to_json(path_check)}};
  ok = ok && path_check.ok();

  const BoundaryGraph graph = boundary_subgraph(coloring);
  const CheckReport graph_check = check_boundary_graph(coloring, graph);
  ok = ok && graph_check.ok();
  Json walks = Json::array();
  for (const DualWalk& w : graph.walks) {
    const BoundaryLine line = to_boundary_line(coloring, w);
    const CheckReport line_check = verify_boundary_line(coloring, line);
    ok = ok && line_check.ok();
    Json entry = boundary_line_to_json(line);
    entry["verification"] = check_report_to_json(line_check);
    Json crit = Json::array();
    for (const CriticalPoint& p : critical_points(coloring, line)) {
      crit.push_back({{"point", p.point.str()}, {"base", to_string(p.base)}});
    }
    entry["critical_points"] = std::move(crit);
    try {
      const GoodPoints gp = find_good_points(coloring, line, a.s);
      entry["good_points"] = good_points_to_json(gp);
      ok = ok && gp.verification.ok();
    } catch (const precondition_error& e) {
      entry["good_points"] = {{"error", e.what()}};
    }
    walks.push_back(std::move(entry));
  }
  doc["boundaries"] = {{"verification", check_report_to_json(graph_check)}, {"walks", std::move(walks)}};

  const BoundaryForest forest = maximal_boundaries(coloring);
  Json tops = Json::array();
  for (std::size_t k = 0; k < forest.boundaries.size(); ++k) {
    const bool maximal = std::find(forest.maximal.begin(), forest.maximal.end(), k) != forest.maximal.end();
    tops.push_back({{"x", forest.boundaries[k].x}, {"y", forest.boundaries[k].y}, {"maximal", maximal}});
  }
  doc["cut_points"] = cut_points(coloring);
  doc["top_boundaries"] = {{"boundaries", std::move(tops)},
                           {"flagged", forest.flagged},
                           {"verification", check_report_to_json(forest.checks)}};
  ok = ok && forest.checks.ok();

  const int S = a.S > 0 ? a.S : 1;
  try {
    const TopOrLong tol = top_or_long(coloring, a.s, S);
    doc["top_or_long"] = top_or_long_to_json(tol);
    doc["top_or_long"]["S"] = S;
    ok = ok && tol.verification.ok();
  } catch (const size_error& e) {
    doc["top_or_long"] = {{"skipped", e.what()}, {"S", S}};
  }
  doc["status"] = ok ? "ok" : "violations";
  print(out, doc);
  return ok ? kExitOk : kExitViolation;
}

int cmd_hex_random(const HexArgs& a, std::ostream& out) {
  if (a.n < 1 || a.m < 1) throw usage_error("--n and --m must be positive");
  std::mt19937_64 rng(a.seed);
  HexColoring coloring(a.n, a.m);
  for (int i = 1; i <= a.n; ++i) {
    for (int j = 1; j <= a.m; ++j) coloring.set({i, j}, rng() & 1u ? Direction::Dec : Direction::Inc);
  }
  print(out, coloring_to_json(coloring));
  return kExitOk;
}

struct SelftestArgs {
  std::uint64_t seed{1};
  int jobs{1};
};

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  const std::uint64_t seed = a.seed;
  const std::vector<std::function<SuiteResult()>> suites{
      [] { return hex_path_exhaustive(3, 3); },
      [] { return boundary_exhaustive(3, 3); },
      [] { return crossing_characterisation(); },
      [] { return fan_fan_exhaustive(2); },
      [] { return fan_rainbow_exhaustive(); },
      [] { return es_permutations(5, 3); },
      [seed] { return bundled_suite(200, seed); },
      [seed] { return rainbow_suite(200, seed + 1); },
      [seed] { return interleave_oracle_suite(200, seed + 2); },
      [seed] { return lex_random(10, 6, 2, 2, seed + 3); },
      [] { return z_fixture_suite(); },
  };
  const auto results = run_suites(suites, resolve_jobs(a.jobs));
  Json list = Json::array();
  bool ok = true;
  for (const SuiteResult& r : results) {
    list.push_back(suite_to_json(r));
    ok = ok && r.ok();
  }
  print(out, {{"seed", seed}, {"pass", ok}, {"suites", std::move(list)}});
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Product graphs of trees and paths: layouts, exact solvers, passes and hex analysis", "boxslash"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Emit the product graph as JSON or DOT");
  gen->add_option("--degrees", gen_args.degrees, "Tree degree sequence, e.g. 2,2")->required();
  gen->add_option("--path", gen_args.path, "Path length m")->required();
  gen->add_flag("--dot", gen_args.dot, "Emit Graphviz DOT instead of JSON");

  LayoutArgs layout_args;
  auto* layout = app.add_subcommand("layout", "Build a layout of the product graph on the product order");
  layout->add_option("--degrees", layout_args.degrees, "Tree degree sequence")->required();
  layout->add_option("--path", layout_args.path, "Path length m")->required();
  auto* tq = layout->add_flag("--three-queue", layout_args.three_queue, "One queue per edge kind (default)");
  auto* sp = layout->add_flag("--stack-pages", layout_args.stack_pages, "Fewest stack pages for the order");
  auto* qs = layout->add_flag("--queues", layout_args.queues, "Fewest queues for the order");
  tq->excludes(sp)->excludes(qs);
  sp->excludes(qs);
  layout->add_flag("--reverse", layout_args.reverse, "Use the reversed product order");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Validate a layout read from --layout or standard input");
  auto* vs = validate->add_flag("--stack", validate_args.stack, "Check for same-colour crossings");
  auto* vq = validate->add_flag("--queue", validate_args.queue, "Check for same-colour nestings");
  vs->excludes(vq);
  validate->add_option("--layout", validate_args.layout, "Layout JSON file");
  validate->add_option("--graph", validate_args.graph, "Graph JSON file (defaults to the layout's graph field)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Exact stack or queue number of a small graph");
  auto* ss = solve_cmd->add_flag("--stack", solve_args.stack, "Stack number");
  auto* sq = solve_cmd->add_flag("--queue", solve_args.queue, "Queue number");
  ss->excludes(sq);
  solve_cmd->add_option("--graph", solve_args.graph, "Graph JSON file")->required();
  solve_cmd->add_option("--limit", solve_args.limit, "Largest colour count to try");
  solve_cmd->add_option("--budget-ms", solve_args.budget_ms, "Abort with exact=false after this many ms");
  solve_cmd->add_option("--jobs", solve_args.jobs, "Worker threads (0 = all cores)")->envname("BOXSLASH_JOBS");

  PassesArgs passes_args;
  auto* passes = app.add_subcommand("passes", "Run the colour, order and lex passes");
  auto* passes_run = passes->add_subcommand("run", "Run the pipeline and re-check the result");
  passes->require_subcommand(1);
  passes_run->add_option("--graph", passes_args.graph, "Product graph descriptor JSON");
  passes_run->add_option("--layout", passes_args.layout, "Layout JSON (default: product order coloured by kind)");
  passes_run->add_option("--degrees", passes_args.degrees, "Tree degrees for the built-in fixture");
  passes_run->add_option("--path", passes_args.path, "Path length for the built-in fixture");
  passes_run->add_flag("--reverse", passes_args.reverse, "Reverse the fixture order");
  passes_run->add_option("--target-degrees", passes_args.targets, "Children kept per level at the lex pass (0 = all)");

  HexArgs hex_args;
  auto* hex = app.add_subcommand("hex", "Hexagonal grid colourings");
  hex->require_subcommand(1);
  auto* analyze = hex->add_subcommand("analyze", "Spanning path, boundaries, good points and top-or-long");
  analyze->add_option("--coloring", hex_args.coloring, "Grid JSON file")->required();
  analyze->add_option("--s", hex_args.s, "Number of good points minus one");
  analyze->add_option("--S", hex_args.S, "Boundary length bound for top-or-long (default 1)");
  auto* random_grid = hex->add_subcommand("random", "Emit a random colouring");
  random_grid->add_option("--n", hex_args.n, "Rows");
  random_grid->add_option("--m", hex_args.m, "Columns");
  random_grid->add_option("--seed", hex_args.seed, "Random seed");

  SelftestArgs selftest_args;
  auto* selftest = app.add_subcommand("selftest", "Run the exhaustive and seeded suites");
  selftest->add_option("--seed", selftest_args.seed, "Seed for the randomized suites");
  selftest->add_option("--jobs", selftest_args.jobs, "Suites run in parallel (0 = all cores)")->envname("BOXSLASH_JOBS");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_args, out);
    if (*layout) return cmd_layout(layout_args, out);
    if (*validate) {
      if (!validate_args.stack && !validate_args.queue) throw usage_error("validate needs --stack or --queue");
      return cmd_validate(validate_args, in, out);
    }
    if (*solve_cmd) {
      if (!solve_args.stack && !solve_args.queue) throw usage_error("solve needs --stack or --queue");
      return cmd_solve(solve_args, out);
    }
    if (*passes_run) return cmd_passes(passes_args, out);
    if (*analyze) return cmd_hex_analyze(hex_args, out);
    if (*random_grid) return cmd_hex_random(hex_args, out);
    if (*selftest) return cmd_selftest(selftest_args, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const input_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const size_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace boxslash
