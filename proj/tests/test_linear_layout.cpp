#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "boxslash/errors.hpp"
#include "boxslash/linear_layout.hpp"

using namespace boxslash;

namespace {

LinearOrder order_of(std::vector<Vertex> seq) { return LinearOrder::from_sequence(std::move(seq)); }

// Smallest k for which some colouring of the edges avoids same-coloured pairs
// in the given relation, by trying all k^|E| colourings.
int brute_min_colors(const Graph& g, const LinearOrder& order, PairRelation bad) {
  const std::size_t e = g.edge_count();
  for (int k = 1;; ++k) {
    std::vector<int> col(e, 0);
    while (true) {
      bool ok = true;
      for (std::size_t x = 0; x < e && ok; ++x) {
        for (std::size_t y = x + 1; y < e && ok; ++y) {
          ok = !(col[x] == col[y] && classify_pair(g.edge(x), g.edge(y), order) == bad);
        }
      }
      if (ok) return k;
      std::size_t i = 0;
      while (i < e && ++col[i] == k) col[i++] = 0;
      if (i == e) break;
    }
  }
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_edges) {
  std::vector<Edge> all;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(all.size(), 1 + rng() % max_edges));
  return Graph(n, all);
}

}  // namespace

TEST_CASE("orders are permutations") {
  CHECK_THROWS_AS((order_of({0, 0, 1})), input_error);
  CHECK_THROWS_AS((order_of({0, 2})), input_error);
  const LinearOrder o = order_of({2, 0, 1});
  CHECK(o.rank(2) == 0);
  CHECK(o.less(0, 1));
  CHECK(o.reversed().sequence() == std::vector<Vertex>{1, 0, 2});
}

TEST_CASE("pair relations on four points") {
  const LinearOrder id = LinearOrder::identity(4);
  CHECK(classify_pair({0, 1}, {2, 3}, id) == PairRelation::Separated);
  CHECK(classify_pair({0, 3}, {1, 2}, id) == PairRelation::Nest);
  CHECK(classify_pair({0, 2}, {1, 3}, id) == PairRelation::Cross);
  CHECK(classify_pair({0, 2}, {2, 3}, id) == PairRelation::SharesEndpoint);
  CHECK(classify_pair({2, 0}, {3, 1}, id) == PairRelation::Cross);
  CHECK_THROWS_AS((classify_pair({1, 1}, {2, 3}, id)), input_error);
}

// Every pair gets exactly one relation; swapping the edges or reversing the
// order does not change it.
TEST_CASE("pair relations are symmetric and reversal invariant") {
  std::vector<Vertex> seq{0, 1, 2, 3, 4};
  do {
    const LinearOrder o = order_of(seq);
    const LinearOrder r = o.reversed();
    for (Vertex a = 0; a < 5; ++a) {
      for (Vertex b = a + 1; b < 5; ++b) {
        for (Vertex c = 0; c < 5; ++c) {
          for (Vertex d = c + 1; d < 5; ++d) {
            const PairRelation rel = classify_pair({a, b}, {c, d}, o);
            CHECK(rel == classify_pair({c, d}, {a, b}, o));
            CHECK(rel == classify_pair({a, b}, {c, d}, r));
          }
        }
      }
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
}

TEST_CASE("validators report exactly the same-coloured conflicts") {
  // (0,2) crosses (1,3); (1,3) nests inside (0,4).
  const Graph g(5, {{0, 2}, {1, 3}, {0, 4}});
  const LinearOrder id = LinearOrder::identity(5);
  const EdgeColoring one{{0, 0, 0}, 1};
  const LayoutReport stack = validate_stack_layout(g, id, one);
  CHECK_FALSE(stack.valid);
  REQUIRE(stack.violations.size() == 1);
  CHECK(stack.violations[0].relation == PairRelation::Cross);
  const LayoutReport queue = validate_queue_layout(g, id, one);
  CHECK_FALSE(queue.valid);
  REQUIRE(queue.violations.size() == 1);
  CHECK(queue.violations[0].relation == PairRelation::Nest);
  CHECK(validate_queue_layout(g, id, EdgeColoring{{0, 1, 0}, 2}).valid);
  CHECK(validate_stack_layout(g, id, EdgeColoring{{0, 1, 0}, 2}).valid);
  CHECK_THROWS_AS((validate_stack_layout(g, id, EdgeColoring{{0, 1}, 2})), input_error);
  CHECK_THROWS_AS((validate_stack_layout(g, id, EdgeColoring{{0, 2, 0}, 2})), input_error);
}

TEST_CASE("fixed-order minima agree with brute force on small graphs") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 4 + rng() % 3;
    const Graph g = random_graph(rng, n, 6);
    std::vector<Vertex> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    std::shuffle(seq.begin(), seq.end(), rng);
    const LinearOrder o = order_of(seq);

    const ColorCount q = queues_for_order(g, o);
    CHECK(q.exact);
    CHECK(q.count == brute_min_colors(g, o, PairRelation::Nest));
    CHECK(validate_queue_layout(g, o, q.coloring).valid);
    CHECK(static_cast<int>(max_rainbow(g, o).size()) == q.count);

    const ColorCount s = stack_pages_for_order(g, o);
    CHECK(s.exact);
    CHECK(s.count == brute_min_colors(g, o, PairRelation::Cross));
    CHECK(validate_stack_layout(g, o, s.coloring).valid);
  }
}

TEST_CASE("k_color on odd cycles") {
  std::vector<std::vector<std::size_t>> c5(5);
  for (std::size_t i = 0; i < 5; ++i) {
    c5[i].push_back((i + 1) % 5);
    c5[(i + 1) % 5].push_back(i);
  }
  CHECK_FALSE(k_color(c5, 2).has_value());
  const auto three = k_color(c5, 3);
  REQUIRE(three.has_value());
  for (std::size_t i = 0; i < 5; ++i) CHECK((*three)[i] != (*three)[(i + 1) % 5]);
}

TEST_CASE("product order and the three-queue layout") {
  const ProductGraph pg(TreeSpec{{2, 2}}, 3);
  const LinearOrder o = product_order(pg);
  for (std::size_t k = 1; k < o.size(); ++k) {
    CHECK(product_order_less(pg.pvertex(o.at(k - 1)), pg.pvertex(o.at(k))));
  }
  const Layout layout = three_queue_layout(pg);
  CHECK(layout.coloring.k == 3);
  for (std::size_t e = 0; e < pg.edge_count(); ++e) {
    CHECK(layout.coloring.colors[e] == static_cast<int>(pg.kind(e)));
  }
  CHECK(validate_queue_layout(pg.graph(), layout.order, layout.coloring).valid);
  CHECK(validate_queue_layout(pg.graph(), layout.order.reversed(), layout.coloring).valid);
  CHECK(queues_for_order(pg.graph(), layout.order).count <= 3);
}
