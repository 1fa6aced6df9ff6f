// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "boxslash/errors.hpp"
#include "boxslash/exact_solver.hpp"
#include "boxslash/hexgrid.hpp"
#include "boxslash/linear_layout.hpp"
#include "boxslash/ramsey_passes.hpp"
#include "boxslash/suites.hpp"

using namespace boxslash;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass{true};
  std::string detail;
  void need(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
};

void absorb(Outcome& o, const SuiteResult& s, std::string& summary) {
  summary += (summary.empty() ? "" : ", ") + s.name + " " + std::to_string(s.report.checked);
  if (!s.ok()) o.need(false, s.name + ": " + s.report.violations.front());
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs >= limit_s) o.need(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  if (!o.pass) ++failures;
  std::printf("CRITERION %2d %s  %s (%.2f s%s)  %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), secs,
              limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(limit_s)) + " s").c_str() : "",
              o.detail.c_str());
  std::fflush(stdout);
}

Outcome solver_value(Outcome o, const std::string& name, const Graph& g, LayoutKind kind, int want) {
  const SolveResult r = solve(g, kind);
  const LayoutReport rep = kind == LayoutKind::Stack ? validate_stack_layout(g, r.order, r.coloring)
                                                     : validate_queue_layout(g, r.order, r.coloring);
  const int naive = naive_layout_number(g, kind);
  o.need(r.exact, name + " not exact");
  o.need(r.value == want, name + " = " + std::to_string(r.value) + ", expected " + std::to_string(want));
  o.need(naive == r.value, name + " naive scan gives " + std::to_string(naive));
  o.need(rep.valid, name + " witness does not validate");
  o.need(r.coloring.k == r.value, name + " witness uses a different colour count");
  if (o.pass) o.detail += (o.detail.empty() ? "" : ", ") + name + "=" + std::to_string(r.value);
  return o;
}

HexColoring random_grid(std::mt19937_64& rng, int n, int m) {
  HexColoring c(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) c.set({i, j}, rng() & 1u ? Direction::Dec : Direction::Inc);
  }
  return c;
}

}  // namespace

int main() {
  criterion(1, "three-queue layouts of the product graphs", 5.0, [] {
    Outcome o;
    const auto s = three_queue_suite({{1}, {2}, {3}, {2, 2}, {3, 2}, {2, 2, 2}}, {2, 3, 4, 5});
    std::string summary;
    absorb(o, s, summary);
    o.need(s.report.checked == 24, "expected 24 instances");
    if (o.pass) o.detail = "24 instances, 0 violations";
    return o;
  });

  criterion(2, "exact solver against the naive permutation scan", 60.0, [] {
    Outcome o;
    o = solver_value(o, "stack(K4)", complete_graph(4), LayoutKind::Stack, 2);
    o = solver_value(o, "stack(K5)", complete_graph(5), LayoutKind::Stack, 3);
    o = solver_value(o, "queue(K4)", complete_graph(4), LayoutKind::Queue, 2);
    o = solver_value(o, "queue(K1,5)", star_graph(5), LayoutKind::Queue, 1);
    return o;
  });

  criterion(3, "queue number of small product graphs is at most 3", 60.0, [] {
    Outcome o;
    struct Case {
      std::vector<int> degrees;
      int m;
    };
    for (const Case& c : std::vector<Case>{{{1}, 1}, {{1}, 2}, {{2}, 1}}) {
      const ProductGraph pg(TreeSpec{c.degrees}, c.m);
      const SolveResult r = queue_number(pg.graph());
      const std::string name = "(" + std::to_string(c.degrees[0]) + ") m=" + std::to_string(c.m);
      o.need(r.exact && r.value <= 3, name + " queue number " + std::to_string(r.value));
      o.need(validate_queue_layout(pg.graph(), r.order, r.coloring).valid, name + " witness invalid");
      o.need(naive_layout_number(pg.graph(), LayoutKind::Queue) == r.value, name + " disagrees with the naive scan");
      o.detail += (o.detail.empty() ? "" : ", ") + name + ": " + std::to_string(r.value);
    }
    o.detail += "; unbounded stack number not reproducible at desk scale, covered by 4-8";
    return o;
  });

  criterion(4, "hex lemma: monochromatic spanning paths", 30.0, [] {
    Outcome o;
    std::string summary;
    absorb(o, hex_path_exhaustive(3, 3), summary);
    absorb(o, hex_path_exhaustive(2, 2), summary);
    absorb(o, hex_path_random(10, 10, 10000, kSeed), summary);
    if (o.pass) o.detail = summary;
    return o;
  });

  criterion(5, "boundary subgraph degrees and path/cycle decomposition", 30.0, [] {
    Outcome o;
    std::string summary;
    absorb(o, boundary_exhaustive(3, 3), summary);
    absorb(o, boundary_exhaustive(2, 2), summary);
    absorb(o, boundary_random(10, 10, 10000, kSeed), summary);
    if (o.pass) o.detail = summary;
    return o;
  });

  criterion(6, "sequence lemma suites against the interleave oracle", 60.0, [] {
    Outcome o;
    std::string summary;
    absorb(o, bundled_suite(1000, kSeed), summary);
    absorb(o, rainbow_suite(1000, kSeed + 1), summary);
    absorb(o, sub_inter_suite(1000, kSeed + 2), summary);
    absorb(o, half_inter_suite(1000, kSeed + 3), summary);
    absorb(o, chain_bound_suite(1000, kSeed + 4), summary);
    absorb(o, rainbow_transfer_suite(1000, kSeed + 5), summary);
    absorb(o, interleave_oracle_suite(1000, kSeed + 6), summary);
    if (o.pass) o.detail = summary;
    return o;
  });

  criterion(7, "constructive fan-fan and fan-rainbow crossings", 60.0, [] {
    Outcome o;
    std::string summary;
    absorb(o, fan_fan_exhaustive(2), summary);
    absorb(o, fan_fan_exhaustive(3), summary);
    absorb(o, fan_rainbow_exhaustive(), summary);
    if (o.pass) o.detail = summary;
    return o;
  });

  criterion(8, "Erdos-Szekeres and lex-monotone subarrays", 60.0, [] {
    Outcome o;
    std::string summary;
    const auto es = es_permutations(5, 3);
    absorb(o, es, summary);
    o.need(es.report.checked == 120, "expected 120 permutations");
    absorb(o, lex_random(100, 10, 2, 2, kSeed), summary);
    if (o.pass) o.detail = summary;
    return o;
  });

  criterion(9, "passes keep the product-order fixtures whole", 60.0, [] {
    Outcome o;
    struct Case {
      std::vector<int> degrees;
      int m;
    };
    int runs = 0;
    for (const Case& c : std::vector<Case>{{{2, 2}, 3}, {{3, 2}, 2}, {{2, 2, 2}, 2}}) {
      for (bool reverse : {false, true}) {
        const ProductGraph pg(TreeSpec{c.degrees}, c.m);
        Layout layout = three_queue_layout(pg);
        if (reverse) layout.order = layout.order.reversed();
        const LayoutInstance inst = LayoutInstance::make(pg, layout.order, layout.coloring);
        const std::vector<int> keep_all(c.degrees.size(), 0);
        std::string name = "degrees";
        for (int d : c.degrees) name += " " + std::to_string(d);
        name += reverse ? " reversed" : "";

        const ColourPassResult colour = pass_colour(inst, keep_all);
        o.need(colour.degrees == c.degrees, name + ": colour pass dropped children");
        const OrderPassResult order = pass_order(colour.instance, keep_all);
        o.need(order.degrees == c.degrees, name + ": order pass dropped children");
        o.need(order.transfer.ok(), name + ": order transfer violations");
        const LexPassResult lex = pass_lex(order.instance, c.degrees);
        o.need(lex.degrees == c.degrees, name + ": lex pass dropped children");

        const ZTable z = extract_Z(lex.instance);
        const Direction want = reverse ? Direction::Dec : Direction::Inc;
        bool uniform = true;
        for (int i = 1; i <= z.n(); ++i) {
          for (int j = i; j <= z.n(); ++j) {
            for (int p = 1; p <= z.m(); ++p) uniform = uniform && z.at(i, j, p) == want;
          }
        }
        o.need(uniform, name + ": Z is not all " + to_string(want));
        const CheckReport cons = check_z_consistency(z);
        const CheckReport ident = check_identity_permutation(lex.instance);
        o.need(cons.ok(), name + ": " + std::to_string(cons.violations.size()) + " Z consistency violations");
        o.need(ident.ok(), name + ": " + std::to_string(ident.violations.size()) + " identity violations");
        ++runs;
      }
    }
    if (o.pass) o.detail = std::to_string(runs) + " fixtures, full survival, Z uniform, 0 violations";
    return o;
  });

  criterion(10, "top-or-long witnesses at the minimal grid for s = 2", 60.0, [] {
    Outcome o;
    constexpr int s = 2, S = 3;
    constexpr int M = (s + 2) * S;
    constexpr int n = S, m = 2 * M + 2 * S;
    std::mt19937_64 rng(kSeed);
    int top = 0, lng = 0, chain = 0;
    for (int t = 0; t < 50; ++t) {
      const TopOrLong w = top_or_long(random_grid(rng, n, m), s, S);
      o.need(w.verification.ok(), "random grid " + std::to_string(t) + " witness fails re-verification");
      (w.kind == TopOrLong::Kind::TopCells ? top : lng) += 1;
      chain += w.via_chain ? 1 : 0;
    }
    const TopOrLong constant = top_or_long(HexColoring(n, m), s, S);
    HexColoring stripes(n, m);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= m; ++j) stripes.set({i, j}, j % 2 ? Direction::Inc : Direction::Dec);
    }
    const TopOrLong striped = top_or_long(stripes, s, S);
    o.need(constant.kind == TopOrLong::Kind::TopCells && constant.verification.ok(), "constant fixture missed the top-cells branch");
    o.need(striped.kind == TopOrLong::Kind::LongBoundary && striped.verification.ok(), "stripe fixture missed the long-boundary branch");
    if (o.pass) {
      o.detail = "grid " + std::to_string(n) + "x" + std::to_string(m) + " (S = 3, M = 12): 50 random witnesses verified (" +
                 std::to_string(top) + " top cells, " + std::to_string(chain) + " via maximal chains, " + std::to_string(lng) +
                 " long boundaries); both branches hit by fixtures";
    }
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
