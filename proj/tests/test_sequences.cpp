#include "doctest.h"

#include <algorithm>

#include "boxslash/errors.hpp"
#include "boxslash/sequences.hpp"
#include "boxslash/suites.hpp"

using namespace boxslash;

namespace {

// Graph on 0..n-1 under the identity order, every listed edge coloured by
// its entry in colors (0 when omitted).
struct Page {
  Graph graph;
  LinearOrder order;
  EdgeColoring coloring;

  Page(std::size_t n, std::vector<Edge> edges, std::vector<int> colors = {})
      : graph(n, edges), order(LinearOrder::identity(n)) {
    if (colors.empty()) colors.assign(edges.size(), 0);
    coloring = {colors, 1 + *std::max_element(colors.begin(), colors.end())};
  }
};

std::vector<Edge> matching(const VertexSequence& a, const VertexSequence& b) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.size(); ++i) edges.push_back({a[i], b[i]});
  return edges;
}

std::vector<Edge> fan(const VertexSequence& a, Vertex apex) {
  std::vector<Edge> edges;
  for (Vertex v : a) edges.push_back({apex, v});
  return edges;
}

void check_cross(const CrossingPair& pair, const Page& page) {
  const Edge& e = page.graph.edge(pair.first);
  const Edge& f = page.graph.edge(pair.second);
  CHECK(classify_pair(e, f, page.order) == PairRelation::Cross);
  CHECK(oracle_cross(e.u, e.v, f.u, f.v, page.order));
  CHECK(page.coloring.colors[pair.first] == pair.color);
  CHECK(page.coloring.colors[pair.second] == pair.color);
}

}  // namespace

TEST_CASE("monotone directions") {
  const LinearOrder id = LinearOrder::identity(10);
  const VertexSequence inc{1, 5, 9}, dec{9, 5, 1}, none{1, 9, 5}, one{4};
  CHECK(is_monotone(inc, id) == Direction::Inc);
  CHECK(is_monotone(dec, id) == Direction::Dec);
  CHECK_FALSE(is_monotone(none, id).has_value());
  CHECK(is_monotone(one, id) == Direction::Either);
  const VertexSequence dup{1, 1}, empty{};
  CHECK_THROWS_AS(is_monotone(dup, id), input_error);
  CHECK_THROWS_AS(is_monotone(empty, id), input_error);
  CHECK(same_direction(Direction::Either, Direction::Dec));
  CHECK_FALSE(same_direction(Direction::Inc, Direction::Dec));
  CHECK(opposite(Direction::Inc) == Direction::Dec);
}

TEST_CASE("related pairs on a ladder and a nest") {
  const VertexSequence a{1, 3, 5}, b{2, 4, 6};
  const Page ladder(7, matching(a, b));
  const auto bundled = is_related(a, b, ladder.graph, ladder.order, ladder.coloring);
  REQUIRE(bundled.has_value());
  CHECK(bundled->kind == RelatedKind::Bundled);
  CHECK(bundled->color == 0);
  CHECK(check_bundled(a, b, ladder.graph, ladder.order, ladder.coloring).chain ==
        VertexSequence{1, 2, 3, 4, 5, 6});

  const VertexSequence in{0, 1, 2}, out{5, 4, 3};
  const Page nest(6, matching(in, out), {2, 2, 2});
  const auto rainbow = is_related(in, out, nest.graph, nest.order, nest.coloring);
  REQUIRE(rainbow.has_value());
  CHECK(rainbow->kind == RelatedKind::Rainbow);
  CHECK(rainbow->color == 2);
  CHECK(check_rainbow(in, out, nest.graph, nest.order, nest.coloring) == RainbowShape::IncBelow);
  CHECK(check_rainbow(out, in, nest.graph, nest.order, nest.coloring) == RainbowShape::DecAbove);

  const Page mixed(7, matching(a, b), {0, 1, 0});
  CHECK_FALSE(is_related(a, b, mixed.graph, mixed.order, mixed.coloring).has_value());
  const VertexSequence shorter{2, 4};
  CHECK_THROWS_AS(is_related(a, shorter, ladder.graph, ladder.order, ladder.coloring), input_error);
  CHECK_THROWS_AS(check_rainbow(a, b, ladder.graph, ladder.order, ladder.coloring), precondition_error);
}

TEST_CASE("length-one pairs are trivially bundled") {
  const VertexSequence a{3}, b{1};
  const Page page(4, matching(a, b));
  CHECK(is_related(a, b, page.graph, page.order, page.coloring)->kind == RelatedKind::Bundled);
  CHECK(check_bundled(a, b, page.graph, page.order, page.coloring).chain.size() == 2);
}

TEST_CASE("crossing matching edges are outside the bundled hypothesis") {
  // (1,3) and (2,4): matching edges cross, so no conclusion is promised.
  const VertexSequence a{1, 2}, b{3, 4};
  const Page page(5, matching(a, b));
  CHECK_THROWS_AS(check_bundled(a, b, page.graph, page.order, page.coloring), precondition_error);
}

TEST_CASE("strong interleaving and maximum interleave") {
  const LinearOrder id = LinearOrder::identity(20);
  CHECK(strongly_interleave(VertexSequence{1, 3, 5}, VertexSequence{2, 4, 6}, id));
  CHECK_FALSE(strongly_interleave(VertexSequence{1, 2, 3}, VertexSequence{4, 5, 6}, id));
  CHECK(strongly_interleave(VertexSequence{6, 4, 2}, VertexSequence{5, 3, 1}, id));
  CHECK_FALSE(strongly_interleave(VertexSequence{1, 3, 5}, VertexSequence{6, 4, 2}, id));

  VertexSequence a, b;
  for (Vertex k = 0; k < 7; ++k) {
    a.push_back(2 * k);
    b.push_back(2 * k + 1);
  }
  CHECK(max_interleave(a, b, id) == 7);
  CHECK(oracle_max_interleave(a, b, id) == 7);
  const VertexSequence low{0, 1, 2}, high{3, 4, 5};
  CHECK(max_interleave(low, high, id) == 1);
  CHECK(max_interleave(low, VertexSequence{5, 4, 3}, id) == 0);
  const InterleaveWitness w = interleave_witness(a, b, id);
  CHECK(w.size() == 7);
  CHECK(w.a_first);
}

// Every subsequence of one side of a strong interleave is matched by a
// strongly interleaving subsequence of the other side.
TEST_CASE("sub-interleave holds for every subset up to length 6") {
  const LinearOrder id = LinearOrder::identity(12);
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    VertexSequence a, b;
    for (Vertex k = 0; k < len; ++k) {
      a.push_back(2 * k);
      b.push_back(2 * k + 1);
    }
    for (unsigned mask = 1; mask < (1u << len); ++mask) {
      VertexSequence sub;
      for (std::size_t k = 0; k < len; ++k) {
        if (mask >> k & 1u) sub.push_back(a[k]);
      }
      CHECK(max_interleave(sub, b, id) == static_cast<int>(sub.size()));
      ++checked;
    }
  }
  CHECK(checked == 1 + 3 + 7 + 15 + 31 + 63);
}

TEST_CASE("fans") {
  const VertexSequence a{1, 2, 3};
  const Page page(5, fan(a, 0), {1, 1, 1});
  CHECK(fan_check(a, 0, page.graph, page.coloring) == 1);
  const Page gap(5, {{0, 1}, {0, 2}}, {1, 1});
  CHECK_FALSE(fan_check(a, 0, gap.graph, gap.coloring).has_value());
  const Page mixed(5, fan(a, 0), {1, 0, 1});
  CHECK_FALSE(fan_check(a, 0, mixed.graph, mixed.coloring).has_value());
}

TEST_CASE("two fans on interleaving sequences cross") {
  const VertexSequence a{1, 3}, b{2, 4};
  std::vector<Edge> edges = fan(a, 5);
  for (const Edge& e : fan(b, 6)) edges.push_back(e);
  const Page page(7, edges);
  check_cross(derive_fan_fan_crossing(a, 5, b, 6, page.graph, page.order, page.coloring), page);

  const VertexSequence lo{1, 2}, hi{3, 4};
  std::vector<Edge> apart = fan(lo, 0);
  for (const Edge& e : fan(hi, 5)) apart.push_back(e);
  const Page separate(6, apart);
  CHECK_THROWS_AS(derive_fan_fan_crossing(lo, 0, hi, 5, separate.graph, separate.order, separate.coloring),
                  precondition_error);
}

TEST_CASE("a fan needs a 3-interleave with the rainbow side") {
  // Rainbow (0,1) ~ (7,6); fanned (2,3) at apex 5 only 1-interleaves with a.
  const VertexSequence a{0, 1}, b{7, 6}, c{2, 3};
  std::vector<Edge> edges = matching(a, b);
  for (const Edge& e : fan(c, 5)) edges.push_back(e);
  const Page page(8, edges);
  CHECK_THROWS_AS(derive_fan_rainbow_crossing(a, b, c, 5, page.graph, page.order, page.coloring),
                  precondition_error);
}

TEST_CASE("rainbows keep all but two of an interleave") {
  // A, B alternate on 0..9; C, D nest around them from the right.
  const VertexSequence a{0, 2, 4, 6, 8}, b{1, 3, 5, 7, 9};
  const VertexSequence c{19, 17, 15, 13, 11}, d{18, 16, 14, 12, 10};
  std::vector<Edge> edges = matching(a, c);
  for (const Edge& e : matching(b, d)) edges.push_back(e);
  const Page page(20, edges);
  CHECK(validate_stack_layout(page.graph, page.order, page.coloring).valid);
  const TransferResult r = rainbow_interleave_transfer(a, b, c, d, page.graph, page.order, page.coloring);
  CHECK(r.before == 5);
  CHECK(r.after >= 3);
}

TEST_CASE("chains of strong interleaves") {
  CHECK(chain_interleave_bound(9, 1) == 9);
  CHECK(chain_interleave_bound(9, 3) == 2);
  CHECK(chain_interleave_bound(9, 2) == 4);
  std::vector<VertexSequence> chain(4);
  for (Vertex k = 0; k < 9; ++k) {
    for (Vertex s = 0; s < 4; ++s) chain[s].push_back(4 * k + s);
  }
  const LinearOrder id = LinearOrder::identity(36);
  const ChainBound three = chain_interleave(chain, id);
  CHECK(three.steps == 3);
  CHECK(three.bound == 2);
  CHECK(three.actual >= 2);
  const ChainBound single = chain_interleave(std::span<const VertexSequence>(chain).first(2), id);
  CHECK(single.bound == 9);
  CHECK(single.actual == 9);
  std::swap(chain[1], chain[2]);
  chain[1].pop_back();
  CHECK_THROWS_AS(chain_interleave(chain, id), precondition_error);
}

TEST_CASE("bundled chain between two fans yields a crossing") {
  const VertexSequence a1{1, 3, 5}, a2{2, 4, 6};
  std::vector<Edge> edges = matching(a1, a2);
  for (const Edge& e : fan(a1, 0)) edges.push_back(e);
  for (const Edge& e : fan(a2, 7)) edges.push_back(e);
  const Page page(8, edges);
  const std::vector<VertexSequence> chain{a1, a2};
  const auto pair = derive_bundled_chain_crossing(chain, ChainEnd::fan(0), ChainEnd::fan(7), page.graph,
                                                  page.order, page.coloring);
  REQUIRE(pair.has_value());
  check_cross(*pair, page);
  CHECK(bundled_chain_length_bound(1) == 20);
  CHECK(related_chains_interleave_bound(2) == 160);
}

TEST_CASE("seeded suites") {
  for (const SuiteResult& s : {bundled_suite(200, 1), rainbow_suite(200, 2), sub_inter_suite(200, 3),
                               half_inter_suite(200, 4), chain_bound_suite(200, 5),
                               rainbow_transfer_suite(200, 6), interleave_oracle_suite(200, 7),
                               fan_fan_exhaustive(2), crossing_characterisation()}) {
    INFO(s.name);
    CHECK(s.report.checked > 0);
    CHECK(s.ok());
  }
}
