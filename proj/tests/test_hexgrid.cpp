#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "boxslash/errors.hpp"
#include "boxslash/hexgrid.hpp"
#include "boxslash/suites.hpp"

using namespace boxslash;

namespace {

HexColoring random_grid(std::mt19937_64& rng, int n, int m) {
  HexColoring c(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) c.set({i, j}, rng() & 1u ? Direction::Dec : Direction::Inc);
  }
  return c;
}

BoundaryLine only_line(const HexColoring& c) {
  const BoundaryGraph g = boundary_subgraph(c);
  REQUIRE(g.walks.size() == 1);
  return to_boundary_line(c, g.walks.front());
}

}  // namespace

TEST_CASE("hex neighbourhood and edge kinds") {
  const Cell c{2, 2};
  int count = 0;
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) count += hex_adjacent(c, {2 + di, 2 + dj}) ? 1 : 0;
  }
  CHECK(count == 6);
  CHECK_FALSE(hex_adjacent(c, {3, 3}));
  CHECK_FALSE(hex_adjacent(c, {1, 1}));
  CHECK(hex_edge_kind({1, 2}, {2, 2}) == EdgeKind::Vertical);
  CHECK(hex_edge_kind({2, 2}, {2, 3}) == EdgeKind::Horizontal);
  CHECK(hex_edge_kind({2, 1}, {1, 2}) == EdgeKind::Diagonal);
  CHECK(hex_edge_kind({1, 2}, {2, 1}) == EdgeKind::Diagonal);
  CHECK_THROWS(hex_edge_kind({1, 1}, {2, 2}));
  CHECK(HexColoring(3, 3).neighbours({2, 2}).size() == 6);
  CHECK(HexColoring(3, 3).neighbours({1, 1}).size() == 2);
  CHECK(HexColoring(3, 3).neighbours({1, 3}).size() == 3);
}

TEST_CASE("colourings from rows and codes agree") {
  const HexColoring a = HexColoring::from_rows({{0, 1, 1}, {1, 0, 0}});
  const HexColoring b = HexColoring::from_code(2, 3, 0b001110);
  CHECK(a == b);
  CHECK(a.rows() == std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 0}});
  CHECK_THROWS_AS(HexColoring::from_rows({{0, 1}, {0}}), input_error);
  CHECK_THROWS_AS(HexColoring::from_rows({{0, 2}}), input_error);
}

TEST_CASE("dual graph: corners meet two or three cells, edges pair adjacent cells") {
  for (int n = 1; n <= 4; ++n) {
    for (int m = 1; m <= 4; ++m) {
      std::set<std::pair<Cell, Cell>> crossed;
      for (const DualVertex& v : dual_vertices(n, m)) {
        const int cells = cell_count(v, n, m);
        CHECK((cells == 2 || cells == 3));
        const auto edges = dual_edges_at(v, n, m);
        CHECK(edges.size() == (cells == 3 ? 3u : 1u));
        for (const DualEdge& e : edges) {
          CHECK(hex_adjacent(e.x, e.y));
          const auto ca = e.a.cells(), cb = e.b.cells();
          for (const Cell& x : {e.x, e.y}) {
            CHECK(std::find(ca.begin(), ca.end(), x) != ca.end());
            CHECK(std::find(cb.begin(), cb.end(), x) != cb.end());
          }
          crossed.insert(std::minmax(e.x, e.y));
        }
      }
      // Every H-edge of the grid is crossed by some dual edge.
      const std::size_t h_edges = static_cast<std::size_t>(n * (m - 1) + (n - 1) * m + (n - 1) * (m - 1));
      CHECK(crossed.size() == h_edges);
    }
  }
}

TEST_CASE("small boundaries") {
  CHECK(boundary_subgraph(HexColoring(3, 3)).edges.empty());

  const HexColoring pair = HexColoring::from_rows({{0, 1}});
  const BoundaryLine unit = only_line(pair);
  CHECK(unit.length() == 1);
  CHECK_FALSE(unit.cycle);
  CHECK(unit.a == std::vector<Cell>{{1, 1}});
  CHECK(unit.b == std::vector<Cell>{{1, 2}});
  CHECK(verify_boundary_line(pair, unit).ok());

  // Splitting a column off a 3x3 grid crosses 3 horizontal and 2 diagonal
  // H-edges.
  const HexColoring split = HexColoring::from_rows({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}});
  const BoundaryLine mid = only_line(split);
  CHECK(mid.length() == 5);
  CHECK(verify_boundary_line(split, mid).ok());
  for (const Cell& c : mid.a) CHECK(c.j == 1);

  const HexColoring island = HexColoring::from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  const BoundaryLine ring = only_line(island);
  CHECK(ring.cycle);
  CHECK(ring.length() == 6);
  CHECK(std::all_of(ring.b.begin(), ring.b.end(), [](const Cell& c) { return c == Cell{2, 2}; }));
  CHECK(verify_boundary_line(island, ring).ok());
}

TEST_CASE("tracing starts at the requested corner") {
  const HexColoring split = HexColoring::from_rows({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}});
  const BoundaryLine whole = only_line(split);
  for (const DualVertex& end : {whole.walk.front(), whole.walk.back()}) {
    const BoundaryLine from = trace_boundary(split, end);
    CHECK(from.walk.front() == end);
    CHECK(from.length() == whole.length());
    CHECK(verify_boundary_line(split, from).ok());
  }
  const HexColoring island = HexColoring::from_rows({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  const BoundaryLine ring = only_line(island);
  const BoundaryLine rotated = trace_boundary(island, ring.walk[3]);
  CHECK(rotated.walk.front() == ring.walk[3]);
  CHECK(rotated.cycle);
  CHECK_THROWS_AS(trace_boundary(island, DualVertex{1, 1, true}), input_error);
}

TEST_CASE("broken boundary lines are rejected") {
  const HexColoring split = HexColoring::from_rows({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}});
  BoundaryLine line = only_line(split);
  std::reverse(line.b.begin(), line.b.end());
  CHECK_FALSE(verify_boundary_line(split, line).ok());
  line = only_line(split);
  line.b[2] = line.b[0];
  CHECK_FALSE(verify_boundary_line(split, line).ok());
}

TEST_CASE("spanning paths") {
  const SpanningPath one = monochromatic_spanning_path(HexColoring(1, 1));
  CHECK(one.cells.size() == 1);
  CHECK(one.spans);
  const HexColoring red(5, 5);
  const SpanningPath straight = monochromatic_spanning_path(red);
  CHECK(straight.cells.size() == 5);
  CHECK(straight.color == Direction::Inc);
  CHECK(verify_spanning_path(red, straight, 5).ok());
  const HexColoring blue(5, 5, Direction::Dec);
  CHECK(monochromatic_spanning_path(blue).color == Direction::Dec);
  CHECK(hex_path_exhaustive(3, 3).ok());
  CHECK(hex_path_exhaustive(3, 3).report.checked == 512);
  CHECK(hex_path_random(7, 7, 500, 4).ok());
}

TEST_CASE("boundary decomposition on every small colouring") {
  for (const auto& [n, m] : std::vector<std::pair<int, int>>{{1, 4}, {2, 3}, {3, 3}, {2, 4}}) {
    const SuiteResult s = boundary_exhaustive(n, m);
    INFO(s.name);
    CHECK(s.ok());
    CHECK(s.report.checked == (1u << (n * m)));
  }
  CHECK(boundary_random(8, 8, 300, 2).ok());
}

TEST_CASE("components are monochromatic and partition the grid") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const HexColoring c = random_grid(rng, 4, 6);
    std::size_t total = 0;
    for (const auto& comp : monochromatic_components(c)) {
      total += comp.size();
      for (const Cell& x : comp) CHECK(c.at(x) == c.at(comp.front()));
    }
    CHECK(total == 24);
  }
}

TEST_CASE("boards of Z tables") {
  const ZTable flat(3, 4);
  CHECK(boundary_preservation_check(flat).ok());
  const HexColoring board = z_board(flat, 2);
  CHECK(board.n() == 2);
  CHECK(board.m() == 4);

  // Depends only on the position: consistent, with a boundary on every board.
  ZTable columns(3, 4);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i; j <= 3; ++j) {
      for (int p = 3; p <= 4; ++p) columns.set(i, j, p, Direction::Dec);
    }
  }
  CHECK(check_z_consistency(columns).ok());
  const CheckReport kept = boundary_preservation_check(columns);
  CHECK(kept.ok());
  CHECK(kept.checked > 0);

  ZTable broken(3, 1);
  broken.set(1, 3, 1, Direction::Dec);
  CHECK_FALSE(check_z_consistency(broken).ok());
  CHECK_FALSE(boundary_preservation_check(broken).ok());
}

TEST_CASE("critical points") {
  const HexColoring split = HexColoring::from_rows({{0, 1, 1}, {0, 1, 1}, {0, 1, 1}});
  const auto top = critical_points(split, only_line(split));
  REQUIRE(top.size() == 1);
  CHECK(top[0].point == DualVertex{2, 1, false});
  CHECK(top[0].base == split.at({2, 1}));

  const HexColoring low = HexColoring::from_rows({{0, 0, 0}, {0, 0, 0}, {1, 1, 1}});
  const auto bottom = critical_points(low, only_line(low));
  CHECK(bottom.size() == 3);
  for (const CriticalPoint& p : bottom) {
    CHECK(p.point.i == 3);
    CHECK_FALSE(p.point.plus);
    CHECK(p.base == Direction::Dec);
  }

  const HexColoring single = HexColoring::from_rows({{0}, {1}});
  const auto one = critical_points(single, only_line(single));
  REQUIRE(one.size() == 1);
  CHECK(one[0].point == DualVertex{2, 1, false});
  // On a one-row grid the remaining corner's base cell is off the grid.
  CHECK(critical_points(HexColoring::from_rows({{0, 1}}), only_line(HexColoring::from_rows({{0, 1}}))).empty());
}

TEST_CASE("critical constants") {
  CHECK(critical_constant(1) == 1u);
  CHECK(critical_constant(2) == 28u);
  CHECK(critical_constant(3) == 15372u);
  CHECK(critical_constant(4) == 7562778048u);
  CHECK_FALSE(critical_constant(5).has_value());
  CHECK(good_points_threshold(1) == 15372u);
  CHECK_FALSE(good_points_threshold(2).has_value());
}

TEST_CASE("good points") {
  // A long top boundary whose critical points all share one base.
  HexColoring stripe(3, 12, Direction::Dec);
  for (int j = 1; j <= 12; ++j) stripe.set({1, j}, Direction::Inc);
  const GoodPoints g = find_good_points(stripe, only_line(stripe), 3);
  CHECK(g.points.size() == 4);
  CHECK(g.pair_index.size() == 4);
  CHECK(g.verification.ok());
  for (const CriticalPoint& p : g.points) CHECK(p.base == Direction::Dec);

  const HexColoring pair = HexColoring::from_rows({{0}, {1}});
  CHECK_THROWS_AS(find_good_points(pair, only_line(pair), 1), precondition_error);

  // Random boundaries: either a verified witness or a refusal, nothing else.
  std::mt19937_64 rng(12);
  int found = 0, refused = 0;
  for (int t = 0; t < 200; ++t) {
    const HexColoring c = random_grid(rng, 5, 8);
    for (const DualWalk& w : boundary_subgraph(c).walks) {
      try {
        const GoodPoints r = find_good_points(c, to_boundary_line(c, w), 1);
        CHECK(r.verification.ok());
        CHECK(r.points.size() == 2);
        ++found;
      } catch (const precondition_error&) {
        ++refused;
      }
    }
  }
  CHECK(found > 0);
  CHECK(refused > 0);
}

TEST_CASE("cut points and the boundary forest") {
  CHECK(cut_points(HexColoring(2, 5)).empty());
  CHECK(cut_points(HexColoring::from_rows({{0, 1, 0, 1}})) == std::vector<int>{1, 2, 3});

  const HexColoring cap = HexColoring::from_rows({{0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0}});
  const BoundaryForest single = maximal_boundaries(cap);
  REQUIRE(single.boundaries.size() == 1);
  CHECK(single.boundaries[0].x == 2);
  CHECK(single.boundaries[0].y == 4);
  CHECK(single.maximal == std::vector<std::size_t>{0});

  const HexColoring nest = HexColoring::from_rows(
      {{0, 1, 0, 0, 1, 0, 0}, {0, 1, 1, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}});
  const BoundaryForest f = maximal_boundaries(nest);
  REQUIRE(f.boundaries.size() == 2);
  CHECK(f.contains.size() == 1);
  CHECK(f.maximal.size() == 1);
  const TopBoundary& outer = f.boundaries[f.contains[0].first];
  const TopBoundary& inner = f.boundaries[f.contains[0].second];
  CHECK(outer.x < inner.x);
  CHECK(inner.y < outer.y);
  CHECK(f.checks.ok());

  const HexColoring wall = HexColoring::from_rows({{0, 0, 1, 1}, {0, 0, 1, 1}});
  const BoundaryForest down = maximal_boundaries(wall);
  CHECK(down.boundaries.empty());
  CHECK(down.flagged == std::vector<int>{2});
}

TEST_CASE("top cells or a long boundary") {
  constexpr int s = 2, S = 3, n = S, m = 2 * (s + 2) * S + 2 * S;
  CHECK_THROWS_AS(top_or_long(HexColoring(n, m - 1), s, S), size_error);
  CHECK_THROWS_AS(top_or_long(HexColoring(n - 1, m), s, S), size_error);

  const TopOrLong flat = top_or_long(HexColoring(n, m), s, S);
  CHECK(flat.kind == TopOrLong::Kind::TopCells);
  CHECK(flat.top_cells.size() == s + 1);
  CHECK(flat.verification.ok());

  HexColoring stripes(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) stripes.set({i, j}, j % 2 ? Direction::Inc : Direction::Dec);
  }
  const TopOrLong deep = top_or_long(stripes, s, S);
  CHECK(deep.kind == TopOrLong::Kind::LongBoundary);
  REQUIRE(deep.boundary.has_value());
  CHECK(deep.boundary->length() >= static_cast<std::size_t>(S));
  CHECK(deep.verification.ok());

  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const TopOrLong w = top_or_long(random_grid(rng, n, m), s, S);
    CHECK(w.verification.ok());
    if (w.kind == TopOrLong::Kind::TopCells) {
      CHECK(w.top_cells.size() == s + 1);
      for (const Cell& c : w.top_cells) CHECK(c.i == 1);
    }
  }
}
