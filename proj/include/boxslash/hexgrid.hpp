#pragma once

// Hexagonal grids with the same three edge families as the product graph,
// their 2-colourings, the dual graph of hexagon corners, chromatic
// boundaries and the search procedures built on them.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxslash/ramsey_passes.hpp"
#include "boxslash/report.hpp"
#include "boxslash/sequences.hpp"

namespace boxslash {

/// Cell (i, j): depth i in [1, n], column j in [1, m].
struct Cell {
  int i{1};
  int j{1};
  std::string str() const;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Neighbours: (i±1, j), (i, j±1), (i+1, j-1), (i-1, j+1).
bool hex_adjacent(const Cell& a, const Cell& b) noexcept;
/// Kind of the H-edge between two adjacent cells.
EdgeKind hex_edge_kind(const Cell& a, const Cell& b);

/// Total 2-colouring of the n x m grid. INC is colour 0, DEC colour 1.
class HexColoring {
 public:
  HexColoring() = default;
  HexColoring(int n, int m, Direction fill = Direction::Inc);
  /// rows[i-1][j-1] in {0, 1}.
  static HexColoring from_rows(const std::vector<std::vector<int>>& rows);
  /// Bit (i-1)*m + (j-1) of code is the colour of (i, j).
  static HexColoring from_code(int n, int m, std::uint64_t code);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  bool contains(const Cell& c) const noexcept {
    return 1 <= c.i && c.i <= n_ && 1 <= c.j && c.j <= m_;
  }
  Direction at(const Cell& c) const;
  void set(const Cell& c, Direction d);
  std::vector<std::vector<int>> rows() const;
  std::vector<Cell> neighbours(const Cell& c) const;

  friend bool operator==(const HexColoring&, const HexColoring&) = default;

 private:
  int n_{0};
  int m_{0};
  std::vector<Direction> cells_;
};

/// Corner where three hexagons meet.
///   (i, j, -) meets (i, j), (i-1, j), (i-1, j+1)
///   (i, j, +) meets (i, j), (i, j+1), (i-1, j+1)
struct DualVertex {
  int i{1};
  int j{1};
  bool plus{false};

  std::vector<Cell> cells() const;
  std::string str() const;
  friend auto operator<=>(const DualVertex&, const DualVertex&) = default;
};

/// A dual edge and the H-edge it crosses.
struct DualEdge {
  DualVertex a;
  DualVertex b;
  Cell x;
  Cell y;
};

/// Dual vertices of the finite grid: corners touching at least two cells.
std::vector<DualVertex> dual_vertices(int n, int m);
/// The (up to three) dual edges at v whose crossed cells are both in the grid.
std::vector<DualEdge> dual_edges_at(const DualVertex& v, int n, int m);
/// Number of grid cells at the corner (2 on the border, 3 inside).
int cell_count(const DualVertex& v, int n, int m);

/// A walk in the boundary subgraph. Paths list k+1 vertices for k edges;
/// cycles list k vertices, the last joined back to the first.
struct DualWalk {
  std::vector<DualVertex> vertices;
  std::vector<DualEdge> edges;
  bool cycle{false};
};

struct BoundaryGraph {
  std::vector<DualEdge> edges;
  /// Degree in the boundary subgraph of every dual vertex of the grid.
  std::vector<std::pair<DualVertex, int>> degrees;
  std::vector<DualWalk> walks;
};

/// Dual edges separating unequal colours, split into paths and cycles.
BoundaryGraph boundary_subgraph(const HexColoring& coloring);

/// Interior corners have degree 0 or 2, border corners 0 or 1, and the walks
/// use every boundary edge exactly once.
CheckReport check_boundary_graph(const HexColoring& coloring, const BoundaryGraph& graph);

/// Cell-pair labelling of a boundary walk. A holds the INC side.
struct BoundaryLine {
  std::vector<Cell> a;
  std::vector<Cell> b;
  std::vector<DualVertex> walk;
  bool cycle{false};

  /// Measured in dual edges, i.e. the number of (a_i, b_i) pairs.
  std::size_t length() const noexcept { return a.size(); }
};

BoundaryLine to_boundary_line(const HexColoring& coloring, const DualWalk& walk);

/// The walk through start, beginning at start when start is an end of a
/// path (cycles are rotated to start there). input_error when start is not
/// on the boundary.
BoundaryLine trace_boundary(const HexColoring& coloring, const DualVertex& start);

/// The four conditions: one colour per side, H-edges, exactly one side moves
/// per step, distinct pairs.
CheckReport verify_boundary_line(const HexColoring& coloring, const BoundaryLine& line);

struct SpanningPath {
  std::vector<Cell> cells;
  Direction color{Direction::Inc};
  /// Whether a colour connects its pair of sides (INC: first to last
  /// column, DEC: first to last row).
  bool spans{false};
};

/// Hex-game winner via union-find, then a shortest path across inside the
/// winning component.
SpanningPath monochromatic_spanning_path(const HexColoring& coloring);

/// Same-colour connected components (cell lists in row-major order).
std::vector<std::vector<Cell>> monochromatic_components(const HexColoring& coloring);

/// Board i: cells (x, p) with x >= i coloured Z(i, x, p); local row r is
/// depth i + r - 1.
HexColoring z_board(const ZTable& z, int i);

/// Boundaries of board i (and their maximal sub-runs lying at depth >= i+1)
/// stay boundaries on board i+1; components of board i stay monochromatic
/// on board i-1.
CheckReport boundary_preservation_check(const ZTable& z);

struct CriticalPoint {
  DualVertex point;
  /// Colour of cell (i, j).
  Direction base{Direction::Inc};
  /// Index of the point in the boundary's walk.
  std::size_t walk_index{0};
};

/// Minimal-depth corners (i0, j, -) of the boundary, in walk order, after
/// trimming up to one vertex from each end of a path whose minimum is a
/// (i, j, +) corner.
std::vector<CriticalPoint> critical_points(const HexColoring& coloring, const BoundaryLine& line);

/// C_1 = 1, C_{k+1} = u (k+1) C_k with u = (k+1)(2 C_k + 5). nullopt on
/// 64-bit overflow.
std::optional<std::uint64_t> critical_constant(int k);
/// C_{2s+1}: boundaries at least this long hold s+1 pairwise good points.
std::optional<std::uint64_t> good_points_threshold(int s);

struct GoodPoints {
  std::vector<CriticalPoint> points;
  /// Index t of the vertical H-edge (a_t, b_t) = ((i, j), (i-1, j)) on the
  /// line for each point.
  std::vector<std::size_t> pair_index;
  std::optional<std::uint64_t> threshold;
  /// Literal re-check of the good-pair and depth conditions.
  CheckReport verification;
};

/// s+1 same-base critical points with no other-base critical point between
/// any two of them. precondition_error naming the threshold when none exist
/// on a short boundary; lemma_violation when none exist on a boundary at
/// least the threshold long.
GoodPoints find_good_points(const HexColoring& coloring, const BoundaryLine& line, int s);

/// Columns x with chi(1, x) != chi(1, x+1).
std::vector<int> cut_points(const HexColoring& coloring);

/// Boundary B(x, y) joining the top-row cut points x < y.
struct TopBoundary {
  int x{0};
  int y{0};
  BoundaryLine line;
};

struct BoundaryForest {
  std::vector<TopBoundary> boundaries;
  /// Cut points whose boundary leaves through a side other than the top.
  std::vector<int> flagged;
  /// (outer, inner) index pairs with outer.x < inner.x < inner.y < outer.y.
  std::vector<std::pair<std::size_t, std::size_t>> contains;
  std::vector<std::size_t> maximal;
  /// Non-crossing and the successor property of maximal boundaries.
  CheckReport checks;
};

BoundaryForest maximal_boundaries(const HexColoring& coloring);

struct TopOrLong {
  enum class Kind : std::uint8_t { TopCells, LongBoundary };
  Kind kind{Kind::TopCells};
  std::vector<Cell> top_cells;
  std::optional<BoundaryLine> boundary;
  /// Top cells found by chaining maximal boundaries from a central cut point.
  bool via_chain{false};
  CheckReport verification;
};

/// Needs m >= 2M + 2S and n >= S with M = (s+2)S (size_error otherwise).
/// Returns s+1 top-row cells in one monochromatic component or a boundary of
/// length >= S, re-verified.
TopOrLong top_or_long(const HexColoring& coloring, int s, int S);

}  // namespace boxslash
