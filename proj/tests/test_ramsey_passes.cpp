#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "boxslash/errors.hpp"
#include "boxslash/ramsey_passes.hpp"
#include "boxslash/suites.hpp"

using namespace boxslash;

namespace {

// One colour per edge kind on the given order.
LayoutInstance kind_instance(const ProductGraph& pg, const LinearOrder& order) {
  Layout layout = three_queue_layout(pg);
  return LayoutInstance::make(pg, order, layout.coloring);
}

std::vector<NodeIndex> kept_children(const LayoutInstance& inst) {
  std::vector<NodeIndex> out;
  for (const NodeIndex& a : inst.origin) {
    if (a.depth() == 1) out.push_back(a);
  }
  return out;
}

bool uniform(const ZTable& z, Direction d) {
  for (int i = 1; i <= z.n(); ++i) {
    for (int j = i; j <= z.n(); ++j) {
      for (int p = 1; p <= z.m(); ++p) {
        if (z.at(i, j, p) != d) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("monotone subsequences of lists") {
  CHECK(es_monotone_subsequence({1, 2, 3, 4, 5}, 5) == std::vector<long long>{1, 2, 3, 4, 5});
  const auto two = es_monotone_subsequence({3, 1, 2}, 2);
  REQUIRE(two.has_value());
  CHECK(two->size() >= 2);
  CHECK_FALSE(es_monotone_subsequence({2, 1, 4, 3}, 3).has_value());
  CHECK_THROWS_AS(es_monotone_subsequence({1, 1}, 1), input_error);
  CHECK(es_permutations(5, 3).ok());
  // (n-1)^2 + 1 is enough, (n-1)^2 is not always.
  CHECK(es_permutations(4, 3).report.violations.size() > 0);
}

TEST_CASE("lex-monotone arrays") {
  std::vector<long long> values(9);
  std::iota(values.begin(), values.end(), 0);
  const LexArray sorted({3, 3}, values);
  const auto order = lex_order_of(sorted);
  REQUIRE(order.has_value());
  CHECK(order->identity_sigma());
  CHECK(order->signs == std::vector<Direction>{Direction::Inc, Direction::Inc});
  const auto full = lex_monotone_subarray(sorted, 3);
  REQUIRE(full.has_value());
  CHECK(full->index_sets == std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 2}});
  CHECK(verify_lex_monotone(sorted, *full));

  // Column-major values: the second axis decides first.
  const LexArray transposed({3, 3}, {0, 3, 6, 1, 4, 7, 2, 5, 8});
  const auto t = lex_order_of(transposed);
  REQUIRE(t.has_value());
  CHECK(t->sigma == std::vector<int>{1, 0});

  // One axis is the list case.
  const LexArray line({6}, {5, 1, 4, 2, 6, 3});
  const auto w = lex_monotone_subarray(line, 3);
  REQUIRE(w.has_value());
  std::vector<long long> picked;
  for (int k : w->index_sets[0]) picked.push_back(line.at({k}));
  CHECK(std::is_sorted(picked.begin(), picked.end()) == (w->signs[0] == Direction::Inc));
  CHECK(es_monotone_subsequence(line.values(), 3).has_value());

  CHECK_THROWS_AS(lex_monotone_subarray(LexArray({2}, {1, 1}), 2), input_error);
  CHECK_THROWS_AS(lex_monotone_subarray(LexArray({13}, std::vector<long long>(13, 0)), 2), size_error);
  CHECK(lex_random(50, 10, 2, 2, 3).ok());
}

TEST_CASE("colour pass keeps the largest matching bucket") {
  const ProductGraph pg(TreeSpec{{4}}, 1);
  EdgeColoring coloring{std::vector<int>(pg.edge_count(), 0), 2};
  for (std::size_t e = 0; e < pg.edge_count(); ++e) {
    const int child = pg.pvertex(pg.graph().edge(e).u).node[0];
    coloring.colors[e] = child % 2 == 0 ? 1 : 0;
  }
  const LayoutInstance inst = LayoutInstance::make(pg, product_order(pg), coloring);
  const ColourPassResult r = pass_colour(inst, {2});
  CHECK(r.degrees == std::vector<int>{2});
  CHECK(kept_children(r.instance) == std::vector<NodeIndex>{NodeIndex{1}, NodeIndex{3}});
  CHECK(color_table(r.instance.graph, r.instance.coloring).has_value());
  CHECK_FALSE(color_table(pg, coloring).has_value());

  const ProductGraph pair(TreeSpec{{2}}, 1);
  const LayoutInstance split = LayoutInstance::make(pair, product_order(pair), EdgeColoring{{0, 1}, 2});
  try {
    pass_colour(split, {2});
    FAIL("expected a pass failure");
  } catch (const pass_failure& e) {
    CHECK(e.level() == 0);
  }
}

TEST_CASE("passes are idempotent") {
  const ProductGraph pg(TreeSpec{{3, 2}}, 2);
  const LayoutInstance inst = kind_instance(pg, product_order(pg));
  const ColourPassResult once = pass_colour(inst, {0, 0});
  const ColourPassResult twice = pass_colour(once.instance, {0, 0});
  CHECK(twice.degrees == once.degrees);
  CHECK(twice.instance.origin.size() == once.instance.origin.size());
  const OrderPassResult o1 = pass_order(once.instance, {0, 0});
  const OrderPassResult o2 = pass_order(o1.instance, {0, 0});
  CHECK(o1.degrees == std::vector<int>{3, 2});
  CHECK(o2.degrees == o1.degrees);
}

TEST_CASE("order pass drops a child whose subtree is ordered differently") {
  const ProductGraph pg(TreeSpec{{3, 2}}, 1);
  std::vector<Vertex> seq = product_order(pg).sequence();
  const Vertex x = pg.vertex(PVertex::parse("3.1@1"));
  const Vertex y = pg.vertex(PVertex::parse("3.2@1"));
  std::iter_swap(std::find(seq.begin(), seq.end(), x), std::find(seq.begin(), seq.end(), y));
  const LayoutInstance inst = kind_instance(pg, LinearOrder::from_sequence(seq));
  const OrderPassResult r = pass_order(inst, {0, 0});
  CHECK(r.degrees == std::vector<int>{2, 2});
  CHECK(kept_children(r.instance) == std::vector<NodeIndex>{NodeIndex{1}, NodeIndex{2}});
  CHECK(r.transfer.ok());
  CHECK_FALSE(verify_order_transfer(inst).ok());

  const ProductGraph thin(TreeSpec{{1, 1}}, 2);
  CHECK(pass_order(kind_instance(thin, product_order(thin)), {0, 0}).degrees == std::vector<int>{1, 1});
}

TEST_CASE("lex pass on the product order and its reversal") {
  const ProductGraph pg(TreeSpec{{3, 2}}, 2);
  for (bool reverse : {false, true}) {
    const LinearOrder o = reverse ? product_order(pg).reversed() : product_order(pg);
    const LexPassResult r = pass_lex(kind_instance(pg, o), {3, 2});
    CHECK(r.degrees == std::vector<int>{3, 2});
    REQUIRE_FALSE(r.arrays.empty());
    for (const LexEntry& entry : r.arrays) {
      CHECK(entry.witness.identity_sigma());
      for (Direction d : entry.witness.signs) CHECK(d == (reverse ? Direction::Dec : Direction::Inc));
    }
  }
}

TEST_CASE("lex pass on random orders never returns a false witness") {
  const ProductGraph pg(TreeSpec{{3, 3}}, 2);
  std::mt19937_64 rng(17);
  int kept = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<Vertex> seq = product_order(pg).sequence();
    std::shuffle(seq.begin(), seq.end(), rng);
    try {
      const LexPassResult r = pass_lex(kind_instance(pg, LinearOrder::from_sequence(seq)), {2, 2});
      CHECK(r.degrees == std::vector<int>{2, 2});
      CHECK(extract_Z(r.instance).n() == 2);
      ++kept;
    } catch (const pass_failure&) {
    }
  }
  MESSAGE("random orders surviving lex pass: " << kept << "/20");
}

TEST_CASE("Z table domain and consistency") {
  ZTable z(3, 2);
  CHECK(z.contains(1, 3, 2));
  CHECK_FALSE(z.contains(2, 1, 1));
  CHECK_FALSE(z.contains(1, 1, 3));
  CHECK_THROWS(z.at(3, 2, 1));
  CHECK(check_z_consistency(z).ok());

  z.set(1, 3, 1, Direction::Dec);
  const CheckReport bad = check_z_consistency(z);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations.front() == "(a) k=2 i=2 p=1");
}

TEST_CASE("Z is undefined below a single child") {
  const ProductGraph pg(TreeSpec{{1, 2}}, 2);
  CHECK_THROWS_AS(extract_Z(kind_instance(pg, product_order(pg))), precondition_error);
}

TEST_CASE("Z read off a hand-built order") {
  const ProductGraph pg(TreeSpec{{2}}, 2);
  ZTable z(1, 2);
  z.set(1, 1, 2, Direction::Dec);
  const ZTable got = extract_Z(kind_instance(pg, lex_structured_order(pg, z)));
  CHECK(got == z);
}

TEST_CASE("identity permutation check catches a last-coordinate-first order") {
  const ProductGraph pg(TreeSpec{{2, 2}}, 1);
  CHECK(check_identity_permutation(kind_instance(pg, product_order(pg))).ok());
  std::vector<Vertex> seq = product_order(pg).sequence();
  std::stable_sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) {
    const NodeIndex& x = pg.pvertex(a).node;
    const NodeIndex& y = pg.pvertex(b).node;
    if (x.depth() != y.depth()) return x.depth() < y.depth();
    return std::lexicographical_compare(x.path.rbegin(), x.path.rend(), y.path.rbegin(), y.path.rend());
  });
  CHECK_FALSE(check_identity_permutation(kind_instance(pg, LinearOrder::from_sequence(seq))).ok());
  const ProductGraph flat(TreeSpec{{3}}, 2);
  CHECK(check_identity_permutation(kind_instance(flat, product_order(flat))).ok());
}

// Every consistent Z table, realised as an order, survives the whole pipeline
// and is read back unchanged.
TEST_CASE("pipeline round trip over all consistent tables") {
  const ProductGraph pg(TreeSpec{{2, 2}}, 2);
  int consistent = 0, mixed = 0;
  for (unsigned code = 0; code < (1u << 6); ++code) {
    ZTable z(2, 2);
    int bit = 0;
    for (int i = 1; i <= 2; ++i) {
      for (int j = i; j <= 2; ++j) {
        for (int p = 1; p <= 2; ++p) z.set(i, j, p, code >> bit++ & 1u ? Direction::Dec : Direction::Inc);
      }
    }
    if (!check_z_consistency(z).ok()) continue;
    ++consistent;
    mixed += uniform(z, Direction::Inc) || uniform(z, Direction::Dec) ? 0 : 1;
    const PipelineResult r = run_passes(kind_instance(pg, lex_structured_order(pg, z)), {2, 2});
    INFO("table code " << code);
    CHECK(r.instance.graph.spec() == pg.spec());
    CHECK(r.z == z);
    CHECK(r.transfer.ok());
    CHECK(r.identity.ok());
    CHECK(r.consistency.ok());
    CHECK(r.related.ok());
  }
  CHECK(consistent > 2);
  CHECK(mixed > 0);
}

TEST_CASE("pipeline on the product order keeps everything") {
  for (bool reverse : {false, true}) {
    const ProductGraph pg(TreeSpec{{2, 2}}, 3);
    const LinearOrder o = reverse ? product_order(pg).reversed() : product_order(pg);
    const PipelineResult r = run_passes(kind_instance(pg, o), {0, 0});
    CHECK(r.instance.graph.spec() == pg.spec());
    CHECK(uniform(r.z, reverse ? Direction::Dec : Direction::Inc));
    CHECK(r.related.ok());
    CHECK(r.related.checked > 0);
    // Vertical keys 2 depths x 3 positions, horizontal 3 x 2, diagonal 2 x 2.
    CHECK(r.table.size() == 6 + 6 + 4);
  }
}
