#include "boxslash/hexgrid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "boxslash/errors.hpp"

namespace boxslash {

std::string Cell::str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

bool hex_adjacent(const Cell& a, const Cell& b) noexcept {
  const int di = b.i - a.i, dj = b.j - a.j;
  return (di == 0 && (dj == 1 || dj == -1)) || (dj == 0 && (di == 1 || di == -1)) ||
         (di == 1 && dj == -1) || (di == -1 && dj == 1);
}

EdgeKind hex_edge_kind(const Cell& a, const Cell& b) {
  if (!hex_adjacent(a, b)) throw input_error(a.str() + " and " + b.str() + " are not adjacent");
  if (a.i == b.i) return EdgeKind::Horizontal;
  if (a.j == b.j) return EdgeKind::Vertical;
  return EdgeKind::Diagonal;
}

HexColoring::HexColoring(int n, int m, Direction fill) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw input_error("grid needs n, m >= 1");
  if (fill == Direction::Either) throw input_error("cells are INC or DEC");
  cells_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(m), fill);
}

HexColoring HexColoring::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw input_error("empty colouring");
  HexColoring out(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw input_error("ragged colouring rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) throw input_error("cell colours must be 0 (INC) or 1 (DEC)");
      out.set({static_cast<int>(r) + 1, static_cast<int>(c) + 1},
              v == 0 ? Direction::Inc : Direction::Dec);
    }
  }
  return out;
}

HexColoring HexColoring::from_code(int n, int m, std::uint64_t code) {
  if (n * m > 64) throw size_error("colouring code holds at most 64 cells");
  HexColoring out(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int bit = (i - 1) * m + (j - 1);
      out.set({i, j}, (code >> bit) & 1u ? Direction::Dec : Direction::Inc);
    }
  }
  return out;
}

Direction HexColoring::at(const Cell& c) const {
  if (!contains(c)) throw input_error("cell " + c.str() + " outside the grid");
  return cells_[static_cast<std::size_t>((c.i - 1) * m_ + (c.j - 1))];
}

void HexColoring::set(const Cell& c, Direction d) {
  if (!contains(c)) throw input_error("cell " + c.str() + " outside the grid");
  if (d == Direction::Either) throw input_error("cells are INC or DEC");
  cells_[static_cast<std::size_t>((c.i - 1) * m_ + (c.j - 1))] = d;
}

std::vector<std::vector<int>> HexColoring::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= m_; ++j) out[static_cast<std::size_t>(i - 1)].push_back(at({i, j}) == Direction::Inc ? 0 : 1);
  }
  return out;
}

std::vector<Cell> HexColoring::neighbours(const Cell& c) const {
  std::vector<Cell> out;
  for (Cell d : {Cell{c.i - 1, c.j}, Cell{c.i + 1, c.j}, Cell{c.i, c.j - 1}, Cell{c.i, c.j + 1},
                 Cell{c.i + 1, c.j - 1}, Cell{c.i - 1, c.j + 1}}) {
    if (contains(d)) out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dual graph

std::vector<Cell> DualVertex::cells() const {
  if (plus) return {{i, j}, {i, j + 1}, {i - 1, j + 1}};
  return {{i, j}, {i - 1, j}, {i - 1, j + 1}};
}

std::string DualVertex::str() const {
  return "(" + std::to_string(i) + "," + std::to_string(j) + (plus ? ",+)" : ",-)");
}

namespace {

bool in_grid(const Cell& c, int n, int m) { return 1 <= c.i && c.i <= n && 1 <= c.j && c.j <= m; }

}  // namespace

int cell_count(const DualVertex& v, int n, int m) {
  int count = 0;
  for (const Cell& c : v.cells()) count += in_grid(c, n, m) ? 1 : 0;
  return count;
}

std::vector<DualVertex> dual_vertices(int n, int m) {
  std::vector<DualVertex> out;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = 0; j <= m; ++j) {
      for (bool plus : {false, true}) {
        const DualVertex v{i, j, plus};
        if (cell_count(v, n, m) >= 2) out.push_back(v);
      }
    }
  }
  return out;
}

std::vector<DualEdge> dual_edges_at(const DualVertex& v, int n, int m) {
  const int i = v.i, j = v.j;
  std::vector<DualEdge> all;
  if (!v.plus) {
    all.push_back({v, {i, j, true}, {i, j}, {i - 1, j + 1}});
    all.push_back({v, {i - 1, j, true}, {i - 1, j}, {i - 1, j + 1}});
    all.push_back({v, {i, j - 1, true}, {i, j}, {i - 1, j}});
  } else {
    all.push_back({{i, j, false}, v, {i, j}, {i - 1, j + 1}});
    all.push_back({{i + 1, j, false}, v, {i, j}, {i, j + 1}});
    all.push_back({{i, j + 1, false}, v, {i, j + 1}, {i - 1, j + 1}});
  }
  std::vector<DualEdge> out;
  for (const DualEdge& e : all) {
    if (in_grid(e.x, n, m) && in_grid(e.y, n, m)) out.push_back(e);
  }
  return out;
}

BoundaryGraph boundary_subgraph(const HexColoring& coloring) {
  const int n = coloring.n(), m = coloring.m();
  BoundaryGraph out;
  std::map<DualVertex, std::vector<std::size_t>> incident;
  const auto vertices = dual_vertices(n, m);
  for (const DualVertex& v : vertices) {
    incident[v];
    if (v.plus) continue;  // every dual edge has exactly one (i, j, -) end
    for (const DualEdge& e : dual_edges_at(v, n, m)) {
      if (coloring.at(e.x) == coloring.at(e.y)) continue;
      incident[e.a].push_back(out.edges.size());
      incident[e.b].push_back(out.edges.size());
      out.edges.push_back(e);
    }
  }
  for (const DualVertex& v : vertices) {
    out.degrees.emplace_back(v, static_cast<int>(incident[v].size()));
  }

  std::vector<bool> used(out.edges.size(), false);
  auto walk_from = [&](const DualVertex& start) {
    DualWalk w;
    w.vertices.push_back(start);
    DualVertex cur = start;
    while (true) {
      std::optional<std::size_t> next;
      for (std::size_t e : incident[cur]) {
        if (!used[e]) {
          next = e;
          break;
        }
      }
      if (!next) break;
      used[*next] = true;
      const DualEdge& e = out.edges[*next];
      cur = e.a == cur ? e.b : e.a;
      w.edges.push_back(e);
      if (cur == start) {
        w.cycle = true;
        break;
      }
      w.vertices.push_back(cur);
    }
    return w;
  };
  for (const DualVertex& v : vertices) {
    if (incident[v].size() == 1 && !used[incident[v].front()]) out.walks.push_back(walk_from(v));
  }
  for (const DualVertex& v : vertices) {
    while (std::any_of(incident[v].begin(), incident[v].end(), [&](std::size_t e) { return !used[e]; })) {
      out.walks.push_back(walk_from(v));
    }
  }
  return out;
}

CheckReport check_boundary_graph(const HexColoring& coloring, const BoundaryGraph& graph) {
  CheckReport report;
  const int n = coloring.n(), m = coloring.m();
  for (const auto& [v, degree] : graph.degrees) {
    ++report.checked;
    const int cells = cell_count(v, n, m);
    const bool ok = cells == 3 ? (degree == 0 || degree == 2) : (degree == 0 || degree == 1);
    if (!ok) {
      report.fail("corner " + v.str() + " touching " + std::to_string(cells) +
                  " cells has boundary degree " + std::to_string(degree));
    }
  }
  std::size_t covered = 0;
  std::set<std::pair<DualVertex, DualVertex>> seen;
  for (const DualWalk& w : graph.walks) {
    covered += w.edges.size();
    for (const DualEdge& e : w.edges) {
      if (!seen.insert({e.a, e.b}).second) report.fail("edge " + e.a.str() + "~" + e.b.str() + " walked twice");
    }
    const std::size_t expect = w.cycle ? w.edges.size() : w.edges.size() + 1;
    if (w.vertices.size() != expect) report.fail("walk vertex count does not match its edges");
    for (std::size_t k = 0; k < w.edges.size(); ++k) {
      const DualVertex& u = w.vertices[k];
      const DualVertex& v = w.vertices[(k + 1) % w.vertices.size()];
      const DualEdge& e = w.edges[k];
      if (!((e.a == u && e.b == v) || (e.a == v && e.b == u))) report.fail("walk is not connected");
    }
    if (!w.cycle && !w.vertices.empty()) {
      for (const DualVertex& end : {w.vertices.front(), w.vertices.back()}) {
        if (cell_count(end, n, m) != 2) report.fail("path ends at interior corner " + end.str());
      }
    }
  }
  if (covered != graph.edges.size()) report.fail("walks do not cover the boundary edges");
  return report;
}

BoundaryLine to_boundary_line(const HexColoring& coloring, const DualWalk& walk) {
  BoundaryLine line;
  line.walk = walk.vertices;
  line.cycle = walk.cycle;
  for (const DualEdge& e : walk.edges) {
    const bool x_inc = coloring.at(e.x) == Direction::Inc;
    line.a.push_back(x_inc ? e.x : e.y);
    line.b.push_back(x_inc ? e.y : e.x);
  }
  return line;
}

BoundaryLine trace_boundary(const HexColoring& coloring, const DualVertex& start) {
  const BoundaryGraph graph = boundary_subgraph(coloring);
  for (DualWalk w : graph.walks) {
    auto it = std::find(w.vertices.begin(), w.vertices.end(), start);
    if (it == w.vertices.end()) continue;
    if (w.cycle) {
      const auto shift = it - w.vertices.begin();
      std::rotate(w.vertices.begin(), it, w.vertices.end());
      std::rotate(w.edges.begin(), w.edges.begin() + shift, w.edges.end());
    } else if (start == w.vertices.back()) {
      std::reverse(w.vertices.begin(), w.vertices.end());
      std::reverse(w.edges.begin(), w.edges.end());
    }
    return to_boundary_line(coloring, w);
  }
  throw input_error("corner " + start.str() + " is not on any chromatic boundary");
}

CheckReport verify_boundary_line(const HexColoring& coloring, const BoundaryLine& line) {
  CheckReport report;
  const std::size_t k = line.a.size();
  if (line.b.size() != k) {
    report.fail("sides have different lengths");
    return report;
  }
  for (std::size_t t = 0; t < k; ++t) {
    if (!coloring.contains(line.a[t]) || !coloring.contains(line.b[t])) {
      report.fail("pair " + std::to_string(t) + " leaves the grid");
      return report;
    }
  }
  if (k == 0) return report;
  ++report.checked;
  const Direction ca = coloring.at(line.a[0]);
  for (std::size_t t = 0; t < k; ++t) {
    if (coloring.at(line.a[t]) != ca || coloring.at(line.b[t]) == ca) {
      report.fail("(1) pair " + std::to_string(t) + " breaks the side colours");
      break;
    }
  }
  for (std::size_t t = 0; t < k; ++t) {
    ++report.checked;
    if (!hex_adjacent(line.a[t], line.b[t])) {
      report.fail("(2) pair " + std::to_string(t) + " " + line.a[t].str() + "," +
                  line.b[t].str() + " is not an H-edge");
    }
  }
  for (std::size_t t = 0; t + 1 < k; ++t) {
    ++report.checked;
    const bool same_a = line.a[t] == line.a[t + 1];
    const bool same_b = line.b[t] == line.b[t + 1];
    if (same_a == same_b) report.fail("(3) step " + std::to_string(t) + " moves both or neither side");
  }
  std::set<std::pair<Cell, Cell>> pairs;
  for (std::size_t t = 0; t < k; ++t) {
    ++report.checked;
    if (!pairs.insert({line.a[t], line.b[t]}).second) {
      report.fail("(4) pair " + std::to_string(t) + " repeats");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Components and the hex lemma

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t cell_id(const HexColoring& c, const Cell& x) {
  return static_cast<std::size_t>((x.i - 1) * c.m() + (x.j - 1));
}

UnionFind same_colour_components(const HexColoring& coloring) {
  UnionFind uf(static_cast<std::size_t>(coloring.n() * coloring.m()));
  for (int i = 1; i <= coloring.n(); ++i) {
    for (int j = 1; j <= coloring.m(); ++j) {
      const Cell c{i, j};
      for (const Cell& d : coloring.neighbours(c)) {
        if (coloring.at(c) == coloring.at(d)) uf.unite(cell_id(coloring, c), cell_id(coloring, d));
      }
    }
  }
  return uf;
}

// Shortest path through cells of one colour from any source to any target.
std::vector<Cell> bfs_path(const HexColoring& coloring, Direction color,
                           const std::vector<Cell>& sources,
                           const std::function<bool(const Cell&)>& is_target) {
  std::map<Cell, Cell> from;
  std::deque<Cell> queue;
  for (const Cell& s : sources) {
    if (coloring.at(s) != color || from.count(s)) continue;
    from.emplace(s, s);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    if (is_target(c)) {
      std::vector<Cell> path{c};
      for (Cell x = c; !(from.at(x) == x); x = from.at(x)) path.push_back(from.at(x));
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const Cell& d : coloring.neighbours(c)) {
      if (coloring.at(d) == color && !from.count(d)) {
        from.emplace(d, c);
        queue.push_back(d);
      }
    }
  }
  return {};
}

}  // namespace

SpanningPath monochromatic_spanning_path(const HexColoring& coloring) {
  const int n = coloring.n(), m = coloring.m();
  SpanningPath out;
  std::vector<Cell> left, top;
  for (int i = 1; i <= n; ++i) left.push_back({i, 1});
  for (int j = 1; j <= m; ++j) top.push_back({1, j});
  auto inc = bfs_path(coloring, Direction::Inc, left, [&](const Cell& c) { return c.j == m; });
  if (!inc.empty()) {
    out.cells = std::move(inc);
    out.color = Direction::Inc;
    out.spans = true;
    return out;
  }
  auto dec = bfs_path(coloring, Direction::Dec, top, [&](const Cell& c) { return c.i == n; });
  if (!dec.empty()) {
    out.cells = std::move(dec);
    out.color = Direction::Dec;
    out.spans = true;
  }
  return out;
}

std::vector<std::vector<Cell>> monochromatic_components(const HexColoring& coloring) {
  UnionFind uf = same_colour_components(coloring);
  std::map<std::size_t, std::vector<Cell>> groups;
  for (int i = 1; i <= coloring.n(); ++i) {
    for (int j = 1; j <= coloring.m(); ++j) groups[uf.find(cell_id(coloring, {i, j}))].push_back({i, j});
  }
  std::vector<std::vector<Cell>> out;
  for (auto& [root, cells] : groups) out.push_back(std::move(cells));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Z boards

HexColoring z_board(const ZTable& z, int i) {
  if (i < 1 || i > z.n()) throw input_error("board index out of range");
  HexColoring out(z.n() - i + 1, z.m());
  for (int r = 1; r <= out.n(); ++r) {
    for (int p = 1; p <= z.m(); ++p) out.set({r, p}, z.at(i, i + r - 1, p));
  }
  return out;
}

CheckReport boundary_preservation_check(const ZTable& z) {
  CheckReport report;
  for (int i = 1; i < z.n(); ++i) {
    const HexColoring here = z_board(z, i);
    const HexColoring next = z_board(z, i + 1);
    const BoundaryGraph graph = boundary_subgraph(here);
    for (std::size_t w = 0; w < graph.walks.size(); ++w) {
      const BoundaryLine line = to_boundary_line(here, graph.walks[w]);
      // Local row r on board i is depth i + r - 1, row r - 1 on board i+1.
      std::size_t t = 0;
      while (t < line.length()) {
        if (line.a[t].i < 2 || line.b[t].i < 2) {
          ++t;
          continue;
        }
        BoundaryLine run;
        const std::size_t begin = t;
        while (t < line.length() && line.a[t].i >= 2 && line.b[t].i >= 2) {
          run.a.push_back({line.a[t].i - 1, line.a[t].j});
          run.b.push_back({line.b[t].i - 1, line.b[t].j});
          ++t;
        }
        const CheckReport sub = verify_boundary_line(next, run);
        ++report.checked;
        if (!sub.ok()) {
          report.fail("board " + std::to_string(i) + " boundary " + std::to_string(w) +
                      " pairs [" + std::to_string(begin) + "," + std::to_string(t) +
                      ") is not a boundary on board " + std::to_string(i + 1) + ": " +
                      sub.violations.front());
        }
      }
    }
  }
  for (int i = 2; i <= z.n(); ++i) {
    const HexColoring here = z_board(z, i);
    const HexColoring prev = z_board(z, i - 1);
    for (const auto& comp : monochromatic_components(here)) {
      ++report.checked;
      const Direction c0 = prev.at({comp.front().i + 1, comp.front().j});
      for (const Cell& c : comp) {
        if (prev.at({c.i + 1, c.j}) != c0) {
          report.fail("component of board " + std::to_string(i) + " at depth " +
                      std::to_string(comp.front().i + i - 1) + ", column " +
                      std::to_string(comp.front().j) + " is not monochromatic on board " +
                      std::to_string(i - 1));
          break;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Critical points and good points

std::vector<CriticalPoint> critical_points(const HexColoring& coloring, const BoundaryLine& line) {
  const auto& walk = line.walk;
  if (walk.empty()) return {};
  auto key = [](const DualVertex& v) { return std::pair{v.i, v.plus ? 1 : 0}; };
  std::size_t lo = 0, hi = walk.size() - 1;
  if (!line.cycle) {
    auto min_key = [&] {
      auto best = key(walk[lo]);
      for (std::size_t k = lo; k <= hi; ++k) best = std::min(best, key(walk[k]));
      return best;
    };
    const auto mk = min_key();
    if (mk.second == 1 && lo < hi) {
      // A lowest corner of sign + can only sit at an end of the path.
      const bool trim_front = key(walk[lo]) == mk;
      const bool trim_back = key(walk[hi]) == mk;
      if (trim_front) ++lo;
      if (trim_back && hi > lo) --hi;
    }
  }
  int depth = walk[lo].i;
  for (std::size_t k = lo; k <= hi; ++k) depth = std::min(depth, walk[k].i);
  std::vector<CriticalPoint> out;
  for (std::size_t k = lo; k <= hi; ++k) {
    const DualVertex& v = walk[k];
    if (v.plus || v.i != depth || !coloring.contains({v.i, v.j})) continue;
    out.push_back({v, coloring.at({v.i, v.j}), k});
  }
  return out;
}

std::optional<std::uint64_t> critical_constant(int k) {
  if (k < 1) throw input_error("critical constant index starts at 1");
  std::uint64_t c = 1;
  for (int step = 1; step < k; ++step) {
    const auto kk = static_cast<std::uint64_t>(step + 1);
    std::uint64_t twice = 0, u = 0, cu = 0, next = 0;
    if (__builtin_mul_overflow(c, std::uint64_t{2}, &twice) ||
        __builtin_add_overflow(twice, std::uint64_t{5}, &twice) ||
        __builtin_mul_overflow(kk, twice, &u) || __builtin_mul_overflow(u, kk, &cu) ||
        __builtin_mul_overflow(cu, c, &next)) {
      return std::nullopt;
    }
    c = next;
  }
  return c;
}

std::optional<std::uint64_t> good_points_threshold(int s) {
  if (s < 1) throw input_error("s must be positive");
  return critical_constant(2 * s + 1);
}

namespace {

std::optional<std::size_t> vertical_pair(const BoundaryLine& line, const DualVertex& v) {
  const Cell deep{v.i, v.j}, shallow{v.i - 1, v.j};
  for (std::size_t t = 0; t < line.length(); ++t) {
    if ((line.a[t] == deep && line.b[t] == shallow) || (line.b[t] == deep && line.a[t] == shallow)) {
      return t;
    }
  }
  return std::nullopt;
}

// Indices strictly between from and to walking forward (cyclically when the
// line is a cycle).
std::vector<std::size_t> forward_between(std::size_t from, std::size_t to, std::size_t size,
                                         bool cycle) {
  std::vector<std::size_t> out;
  if (!cycle && from > to) std::swap(from, to);
  for (std::size_t k = (from + 1) % size; k != to; k = (k + 1) % size) out.push_back(k);
  return out;
}

}  // namespace

GoodPoints find_good_points(const HexColoring& coloring, const BoundaryLine& line, int s) {
  if (s < 1) throw input_error("s must be positive");
  GoodPoints out;
  out.threshold = good_points_threshold(s);
  const auto crit = critical_points(coloring, line);
  const std::size_t need = static_cast<std::size_t>(s) + 1;
  const std::size_t c = crit.size();

  // Maximal runs of equal base in walk order; on a cycle a run may wrap.
  std::optional<std::vector<std::size_t>> chosen;
  if (c > 0) {
    std::size_t start = 0;
    if (line.cycle) {
      while (start < c && crit[start].base == crit[(start + c - 1) % c].base) ++start;
      if (start == c) start = 0;  // one base throughout
    }
    for (std::size_t k = 0; k < c && !chosen;) {
      const std::size_t first = (start + k) % c;
      std::vector<std::size_t> run;
      while (k < c && crit[(start + k) % c].base == crit[first].base) {
        if (vertical_pair(line, crit[(start + k) % c].point)) run.push_back((start + k) % c);
        ++k;
      }
      if (run.size() >= need) {
        run.resize(need);
        chosen = run;
      }
    }
  }
  if (!chosen) {
    const std::string limit = out.threshold ? std::to_string(*out.threshold) : "beyond 2^64";
    if (out.threshold && line.length() >= *out.threshold) {
      throw lemma_violation("boundary of length " + std::to_string(line.length()) +
                            " reaches the threshold " + limit + " without " +
                            std::to_string(need) + " good points");
    }
    throw precondition_error("no " + std::to_string(need) + " pairwise good critical points on a boundary of length " +
                             std::to_string(line.length()) + " (threshold " + limit + ")");
  }
  for (std::size_t idx : *chosen) {
    out.points.push_back(crit[idx]);
    out.pair_index.push_back(*vertical_pair(line, crit[idx].point));
  }

  // Literal re-check, pair by pair, in run order.
  const Direction base = out.points.front().base;
  for (std::size_t x = 0; x < out.points.size(); ++x) {
    for (std::size_t y = x + 1; y < out.points.size(); ++y) {
      ++out.verification.checked;
      for (std::size_t k : forward_between(out.points[x].walk_index, out.points[y].walk_index,
                                           line.walk.size(), line.cycle)) {
        const DualVertex& v = line.walk[k];
        const auto it = std::find_if(crit.begin(), crit.end(),
                                     [&](const CriticalPoint& p) { return p.walk_index == k; });
        if (it != crit.end() && it->base != base) {
          out.verification.fail("critical point " + v.str() + " between chosen points has the other base");
        }
      }
      const std::size_t tx = out.pair_index[x], ty = out.pair_index[y];
      const int floor_depth = std::min(out.points[x].point.i, out.points[y].point.i);
      for (std::size_t t : forward_between(tx, ty, line.length(), line.cycle)) {
        const Cell& side = coloring.at(line.a[t]) == base ? line.a[t] : line.b[t];
        if (side.i < floor_depth) {
          out.verification.fail("base-side cell " + side.str() + " between pairs " +
                                std::to_string(tx) + " and " + std::to_string(ty) +
                                " is shallower than " + std::to_string(floor_depth));
          break;
        }
      }
    }
  }
  for (std::size_t x = 0; x < out.points.size(); ++x) {
    const std::size_t t = out.pair_index[x];
    const Cell& side = coloring.at(line.a[t]) == base ? line.a[t] : line.b[t];
    const Cell& other = coloring.at(line.a[t]) == base ? line.b[t] : line.a[t];
    ++out.verification.checked;
    if (hex_edge_kind(side, other) != EdgeKind::Vertical || side.i != other.i + 1) {
      out.verification.fail("pair " + std::to_string(t) + " is not vertical with the base side deeper");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cut points, maximal boundaries, top-or-long

std::vector<int> cut_points(const HexColoring& coloring) {
  std::vector<int> out;
  for (int x = 1; x < coloring.m(); ++x) {
    if (coloring.at({1, x}) != coloring.at({1, x + 1})) out.push_back(x);
  }
  return out;
}

BoundaryForest maximal_boundaries(const HexColoring& coloring) {
  BoundaryForest forest;
  for (int x : cut_points(coloring)) {
    BoundaryLine line = trace_boundary(coloring, {1, x, true});
    const DualVertex& end = line.walk.back();
    if (!(end.plus && end.i == 1)) {
      forest.flagged.push_back(x);
      continue;
    }
    if (end.j > x) forest.boundaries.push_back({x, end.j, std::move(line)});
  }
  const auto& bs = forest.boundaries;
  for (std::size_t o = 0; o < bs.size(); ++o) {
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (o == i) continue;
      ++forest.checks.checked;
      if (bs[o].x < bs[i].x && bs[i].y < bs[o].y) forest.contains.emplace_back(o, i);
      if (bs[o].x < bs[i].x && bs[i].x < bs[o].y && bs[o].y < bs[i].y) {
        forest.checks.fail("B(" + std::to_string(bs[o].x) + "," + std::to_string(bs[o].y) +
                           ") crosses B(" + std::to_string(bs[i].x) + "," +
                           std::to_string(bs[i].y) + ")");
      }
    }
  }
  std::vector<bool> inner(bs.size(), false);
  for (const auto& [o, i] : forest.contains) inner[i] = true;
  for (std::size_t k = 0; k < bs.size(); ++k) {
    if (!inner[k]) forest.maximal.push_back(k);
  }

  // Successor: the next cut point after a maximal B(x, y) opens another
  // maximal boundary.
  const auto cuts = cut_points(coloring);
  for (std::size_t k : forest.maximal) {
    auto next = std::upper_bound(cuts.begin(), cuts.end(), bs[k].y);
    if (next == cuts.end()) continue;
    const int a = *next;
    if (std::find(forest.flagged.begin(), forest.flagged.end(), a) != forest.flagged.end()) continue;
    ++forest.checks.checked;
    std::optional<std::size_t> found;
    for (std::size_t q = 0; q < bs.size(); ++q) {
      if (bs[q].x == a || bs[q].y == a) found = q;
    }
    if (!found || bs[*found].x != a ||
        std::find(forest.maximal.begin(), forest.maximal.end(), *found) == forest.maximal.end()) {
      forest.checks.fail("cut point " + std::to_string(a) + " after maximal B(" +
                         std::to_string(bs[k].x) + "," + std::to_string(bs[k].y) +
                         ") does not open a maximal boundary");
    }
  }
  return forest;
}

namespace {

bool same_component(const HexColoring& coloring, const std::vector<Cell>& cells) {
  if (cells.empty()) return true;
  const Direction color = coloring.at(cells.front());
  std::set<Cell> reached{cells.front()};
  std::deque<Cell> queue{cells.front()};
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (const Cell& d : coloring.neighbours(c)) {
      if (coloring.at(d) == color && reached.insert(d).second) queue.push_back(d);
    }
  }
  return std::all_of(cells.begin(), cells.end(), [&](const Cell& c) { return reached.count(c) > 0; });
}

std::optional<std::vector<Cell>> chain_of_maximal(const HexColoring& coloring,
                                                  const BoundaryForest& forest, int s,
                                                  int centre) {
  const auto& bs = forest.boundaries;
  if (bs.empty()) return std::nullopt;
  const auto cuts = cut_points(coloring);
  int start = cuts.front();
  for (int x : cuts) {
    if (std::abs(x - centre) < std::abs(start - centre)) start = x;
  }
  std::optional<std::size_t> own;
  for (std::size_t q = 0; q < bs.size(); ++q) {
    if (bs[q].x == start || bs[q].y == start) own = q;
  }
  if (!own) return std::nullopt;
  auto is_max = [&](std::size_t q) {
    return std::find(forest.maximal.begin(), forest.maximal.end(), q) != forest.maximal.end();
  };
  std::size_t cur = *own;
  if (!is_max(cur)) {
    for (std::size_t q : forest.maximal) {
      if (bs[q].x < bs[cur].x && bs[cur].y < bs[q].y) {
        cur = q;
        break;
      }
    }
  }
  std::vector<Cell> points{{1, bs[cur].x}};
  for (int step = 0; step < s; ++step) {
    auto next = std::upper_bound(cuts.begin(), cuts.end(), bs[cur].y);
    if (next == cuts.end()) return std::nullopt;
    std::optional<std::size_t> q;
    for (std::size_t k = 0; k < bs.size(); ++k) {
      if (bs[k].x == *next) q = k;
    }
    if (!q || !is_max(*q)) return std::nullopt;
    cur = *q;
    points.push_back({1, bs[cur].x});
  }
  return points;
}

}  // namespace

TopOrLong top_or_long(const HexColoring& coloring, int s, int S) {
  if (s < 1 || S < 1) throw input_error("s and S must be positive");
  const long long M = static_cast<long long>(s + 2) * S;
  const long long width = 2 * M + 2LL * S;
  if (coloring.m() < width || coloring.n() < S) {
    throw size_error("grid " + std::to_string(coloring.n()) + "x" + std::to_string(coloring.m()) +
                     " too small: need at least " + std::to_string(S) + " rows and " +
                     std::to_string(width) + " columns (M = " + std::to_string(M) + ")");
  }
  TopOrLong out;
  const auto verify = [&](TopOrLong& r) {
    if (r.kind == TopOrLong::Kind::TopCells) {
      ++r.verification.checked;
      std::set<Cell> distinct(r.top_cells.begin(), r.top_cells.end());
      if (distinct.size() != static_cast<std::size_t>(s) + 1) r.verification.fail("need s+1 distinct top cells");
      for (const Cell& c : r.top_cells) {
        if (c.i != 1) r.verification.fail("cell " + c.str() + " is not on the top row");
      }
      if (!same_component(coloring, r.top_cells)) r.verification.fail("top cells are not in one monochromatic component");
    } else {
      r.verification.merge(verify_boundary_line(coloring, *r.boundary));
      ++r.verification.checked;
      if (r.boundary->length() < static_cast<std::size_t>(S)) r.verification.fail("boundary shorter than S");
    }
  };

  const BoundaryForest forest = maximal_boundaries(coloring);
  if (auto chain = chain_of_maximal(coloring, forest, s, static_cast<int>(M + S))) {
    out.kind = TopOrLong::Kind::TopCells;
    out.top_cells = std::move(*chain);
    out.via_chain = true;
    verify(out);
    if (!out.verification.ok()) {
      throw lemma_violation("chain of maximal boundaries gave unconnected top cells: " +
                            out.verification.violations.front());
    }
    return out;
  }

  for (const auto& comp : monochromatic_components(coloring)) {
    std::vector<Cell> top;
    for (const Cell& c : comp) {
      if (c.i == 1) top.push_back(c);
    }
    if (top.size() > static_cast<std::size_t>(s)) {
      top.resize(static_cast<std::size_t>(s) + 1);
      out.kind = TopOrLong::Kind::TopCells;
      out.top_cells = std::move(top);
      verify(out);
      return out;
    }
  }
  const BoundaryGraph graph = boundary_subgraph(coloring);
  const DualWalk* longest = nullptr;
  for (const DualWalk& w : graph.walks) {
    if (!longest || w.edges.size() > longest->edges.size()) longest = &w;
  }
  if (longest && longest->edges.size() >= static_cast<std::size_t>(S)) {
    out.kind = TopOrLong::Kind::LongBoundary;
    out.boundary = to_boundary_line(coloring, *longest);
    verify(out);
    return out;
  }
  throw lemma_violation("legal grid without s+1 connected top cells or a boundary of length S");
}

}  // namespace boxslash
