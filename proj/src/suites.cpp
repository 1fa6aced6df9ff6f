#include "boxslash/suites.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "boxslash/errors.hpp"
#include "boxslash/linear_layout.hpp"
#include "boxslash/ramsey_passes.hpp"

namespace boxslash {

namespace {

using Rng = std::mt19937_64;

SuiteResult timed(std::string name, const std::function<void(CheckReport&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult out{std::move(name), {}, 0};
  body(out.report);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

LinearOrder order_from_keys(const std::vector<double>& keys) {
  std::vector<Vertex> seq(keys.size());
  std::iota(seq.begin(), seq.end(), Vertex{0});
  std::stable_sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) { return keys[a] < keys[b]; });
  return LinearOrder::from_sequence(std::move(seq));
}

VertexSequence ids(Vertex first, int count) {
  VertexSequence out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), first);
  return out;
}

// +1 increasing, -1 decreasing, 0 a single element, 2 not monotone.
int rank_direction(SequenceView s, const LinearOrder& order) {
  if (s.size() <= 1) return 0;
  bool inc = true, dec = true;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (order.rank(s[i]) < order.rank(s[i + 1])) {
      dec = false;
    } else {
      inc = false;
    }
  }
  return inc ? 1 : dec ? -1 : 2;
}

bool compatible(int x, int y) { return x != 2 && y != 2 && x * y != -1; }

bool consistent(SequenceView a, SequenceView b, const LinearOrder& order) {
  bool all_below = true, all_above = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (order.rank(a[i]) < order.rank(b[i])) {
      all_above = false;
    } else {
      all_below = false;
    }
  }
  return all_below || all_above;
}

// Related pair whose adjacency is given by construction: kind from the two
// directions, nullopt when monotonicity or consistency fails.
std::optional<RelatedKind> naive_related(SequenceView a, SequenceView b, const LinearOrder& order) {
  const int da = rank_direction(a, order), db = rank_direction(b, order);
  if (da == 2 || db == 2 || !consistent(a, b, order)) return std::nullopt;
  return da * db == -1 ? RelatedKind::Rainbow : RelatedKind::Bundled;
}

// Keys for k A-slots and k B-slots laid out as in labels ('A' / 'B').
void place_labels(const std::string& labels, std::vector<double>& keys, Vertex a0, Vertex b0,
                  double scale) {
  int ia = 0, ib = 0;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const double key = scale * static_cast<double>(s + 1);
    if (labels[s] == 'A') {
      keys[a0 + static_cast<Vertex>(ia++)] = key;
    } else {
      keys[b0 + static_cast<Vertex>(ib++)] = key;
    }
  }
}

std::string random_labels(Rng& rng, int k) {
  std::string labels(static_cast<std::size_t>(k), 'A');
  labels.append(static_cast<std::size_t>(k), 'B');
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

std::string alternating(int k, bool a_first) {
  std::string labels;
  for (int i = 0; i < k; ++i) labels += a_first ? "AB" : "BA";
  return labels;
}

void add_extras(Rng& rng, std::vector<double>& keys, std::size_t from, double hi) {
  for (std::size_t v = from; v < keys.size(); ++v) keys[v] = uniform_real(rng, 0, hi);
}

void maybe_negate(Rng& rng, std::vector<double>& keys) {
  if (uniform(rng, 0, 1)) {
    for (double& k : keys) k = -k;
  }
}

struct Scene {
  Graph graph;
  EdgeColoring coloring;
  LinearOrder order;
};

Scene make_scene(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                 const std::vector<double>& keys) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : pairs) edges.push_back({u, v});
  Scene s{Graph(n, std::move(edges)), {}, order_from_keys(keys)};
  s.coloring.colors.assign(pairs.size(), 0);
  s.coloring.k = 1;
  return s;
}

std::vector<std::pair<Vertex, Vertex>> zip_pairs(SequenceView a, SequenceView b) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a[i], b[i]);
  return out;
}

bool any_cross(const std::vector<std::pair<Vertex, Vertex>>& pairs, const LinearOrder& order) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (oracle_cross(pairs[i].first, pairs[i].second, pairs[j].first, pairs[j].second, order)) {
        return true;
      }
    }
  }
  return false;
}

// A strongly interleaving partner for seq (increasing keys): one new key in
// each gap after (or before) every element.
std::vector<double> interleaved_keys(Rng& rng, const std::vector<double>& seq, bool after) {
  std::vector<double> out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double step = 1.0;
    if (after) {
      const double hi = i + 1 < seq.size() ? seq[i + 1] : seq[i] + step;
      out.push_back(uniform_real(rng, seq[i], hi));
    } else {
      const double lo = i > 0 ? seq[i - 1] : seq[i] - step;
      out.push_back(uniform_real(rng, lo, seq[i]));
    }
  }
  return out;
}

void check_crossing_pair(CheckReport& report, const CrossingPair& pair, const Scene& s,
                         const std::string& where) {
  const Edge& e1 = s.graph.edge(pair.first);
  const Edge& e2 = s.graph.edge(pair.second);
  if (!oracle_cross(e1.u, e1.v, e2.u, e2.v, s.order)) report.fail(where + ": returned edges do not cross");
  if (classify_pair(e1, e2, s.order) != PairRelation::Cross) report.fail(where + ": classify_pair disagrees");
  if (s.coloring.colors[pair.first] != s.coloring.colors[pair.second] ||
      s.coloring.colors[pair.first] != pair.color) {
    report.fail(where + ": colours differ");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Oracles

int oracle_max_interleave(SequenceView a, SequenceView b, const LinearOrder& order) {
  if (a.size() > 10 || b.size() > 10) throw size_error("interleave oracle handles at most 10 elements");
  if (a.empty() || b.empty()) return 0;
  if (!compatible(rank_direction(a, order), rank_direction(b, order))) return 0;
  auto pick = [](SequenceView s, unsigned mask) {
    VertexSequence out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask >> i & 1u) out.push_back(s[i]);
    }
    return out;
  };
  auto alternates = [&](const VertexSequence& x, const VertexSequence& y) {
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < x.size(); ++i) {
      ranks.push_back(order.rank(x[i]));
      ranks.push_back(order.rank(y[i]));
    }
    return std::is_sorted(ranks.begin(), ranks.end()) ||
           std::is_sorted(ranks.rbegin(), ranks.rend());
  };
  int best = 0;
  for (unsigned ma = 1; ma < (1u << a.size()); ++ma) {
    const int k = std::popcount(ma);
    if (k <= best) continue;
    const auto xa = pick(a, ma);
    for (unsigned mb = 1; mb < (1u << b.size()); ++mb) {
      if (std::popcount(mb) != k) continue;
      const auto xb = pick(b, mb);
      if (alternates(xa, xb) || alternates(xb, xa)) {
        best = k;
        break;
      }
    }
  }
  return best;
}

bool oracle_cross(Vertex a, Vertex b, Vertex c, Vertex d, const LinearOrder& order) {
  auto x1 = order.rank(a), x2 = order.rank(b), y1 = order.rank(c), y2 = order.rank(d);
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  return (x1 < y1 && y1 < x2 && x2 < y2) || (y1 < x1 && x1 < y2 && y2 < x2);
}

int naive_layout_number(const Graph& graph, LayoutKind kind) {
  const std::size_t n = graph.vertex_count();
  if (n > 7) throw size_error("naive permutation scan handles at most 7 vertices");
  const std::size_t m = graph.edge_count();
  if (m == 0) return 0;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::vector<std::size_t> rank(n);
  int best = static_cast<int>(m);
  do {
    for (std::size_t p = 0; p < n; ++p) rank[perm[p]] = p;
    std::vector<std::vector<bool>> conflict(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        auto x1 = rank[graph.edge(i).u], x2 = rank[graph.edge(i).v];
        auto y1 = rank[graph.edge(j).u], y2 = rank[graph.edge(j).v];
        if (x1 > x2) std::swap(x1, x2);
        if (y1 > y2) std::swap(y1, y2);
        if (x1 == y1 || x1 == y2 || x2 == y1 || x2 == y2) continue;
        const bool hit = kind == LayoutKind::Stack
                             ? (x1 < y1 && y1 < x2 && x2 < y2) || (y1 < x1 && x1 < y2 && y2 < x2)
                             : (x1 < y1 && y2 < x2) || (y1 < x1 && x2 < y2);
        conflict[i][j] = conflict[j][i] = hit;
      }
    }
    std::vector<int> color(m, -1);
    std::function<bool(std::size_t, int)> fill = [&](std::size_t e, int k) {
      if (e == m) return true;
      for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (std::size_t f = 0; f < e && ok; ++f) ok = !(conflict[e][f] && color[f] == c);
        if (!ok) continue;
        color[e] = c;
        if (fill(e + 1, k)) return true;
      }
      color[e] = -1;
      return false;
    };
    for (int k = 1; k < best; ++k) {
      if (fill(0, k)) {
        best = k;
        break;
      }
    }
  } while (best > 1 && std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CheckReport verify_spanning_path(const HexColoring& coloring, const SpanningPath& path,
                                 std::size_t min_cells) {
  CheckReport report;
  ++report.checked;
  if (!path.spans || path.cells.empty()) {
    report.fail("no spanning path");
    return report;
  }
  std::set<Cell> seen;
  bool first_side = false, second_side = false;
  for (std::size_t k = 0; k < path.cells.size(); ++k) {
    const Cell& c = path.cells[k];
    if (c.i < 1 || c.i > coloring.n() || c.j < 1 || c.j > coloring.m()) {
      report.fail("cell " + c.str() + " outside the grid");
      return report;
    }
    if (!seen.insert(c).second) report.fail("cell " + c.str() + " repeats");
    if (coloring.at(c) != path.color) report.fail("cell " + c.str() + " has the other colour");
    if (k > 0) {
      const int di = c.i - path.cells[k - 1].i, dj = c.j - path.cells[k - 1].j;
      const bool adjacent = (di == 0 && std::abs(dj) == 1) || (dj == 0 && std::abs(di) == 1) ||
                            (di == 1 && dj == -1) || (di == -1 && dj == 1);
      if (!adjacent) report.fail("step " + std::to_string(k) + " is not a hex move");
    }
    if (path.color == Direction::Inc) {
      first_side |= c.j == 1;
      second_side |= c.j == coloring.m();
    } else {
      first_side |= c.i == 1;
      second_side |= c.i == coloring.n();
    }
  }
  if (!first_side || !second_side) report.fail("path does not join its two sides");
  if (path.cells.size() < min_cells) {
    report.fail("path has " + std::to_string(path.cells.size()) + " cells, need " + std::to_string(min_cells));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Hex suites

namespace {

void hex_path_one(CheckReport& report, const HexColoring& c, const std::string& tag) {
  const CheckReport r = verify_spanning_path(c, monochromatic_spanning_path(c),
                                             static_cast<std::size_t>(std::min(c.n(), c.m())));
  ++report.checked;
  for (const auto& v : r.violations) report.fail(tag + ": " + v);
}

void boundary_one(CheckReport& report, const HexColoring& c, const std::string& tag) {
  const BoundaryGraph g = boundary_subgraph(c);
  CheckReport r = check_boundary_graph(c, g);
  for (const DualWalk& w : g.walks) r.merge(verify_boundary_line(c, to_boundary_line(c, w)));
  ++report.checked;
  for (const auto& v : r.violations) report.fail(tag + ": " + v);
}

HexColoring random_coloring(Rng& rng, int n, int m) {
  HexColoring c(n, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) c.set({i, j}, uniform(rng, 0, 1) ? Direction::Dec : Direction::Inc);
  }
  return c;
}

void for_all_colorings(int n, int m, const std::function<void(const HexColoring&, std::uint64_t)>& visit) {
  if (n * m > 20) throw size_error("exhaustive colourings limited to 20 cells");
  const std::uint64_t total = std::uint64_t{1} << (n * m);
  for (std::uint64_t code = 0; code < total; ++code) visit(HexColoring::from_code(n, m, code), code);
}

}  // namespace

SuiteResult hex_path_exhaustive(int n, int m) {
  return timed("hex path " + std::to_string(n) + "x" + std::to_string(m) + " exhaustive",
               [&](CheckReport& report) {
                 for_all_colorings(n, m, [&](const HexColoring& c, std::uint64_t code) {
                   hex_path_one(report, c, "code " + std::to_string(code));
                 });
               });
}

SuiteResult hex_path_random(int n, int m, int count, std::uint64_t seed) {
  return timed("hex path " + std::to_string(n) + "x" + std::to_string(m) + " random",
               [&](CheckReport& report) {
                 Rng rng(seed);
                 for (int t = 0; t < count; ++t) hex_path_one(report, random_coloring(rng, n, m), "sample " + std::to_string(t));
               });
}

SuiteResult boundary_exhaustive(int n, int m) {
  return timed("boundary decomposition " + std::to_string(n) + "x" + std::to_string(m) + " exhaustive",
               [&](CheckReport& report) {
                 for_all_colorings(n, m, [&](const HexColoring& c, std::uint64_t code) {
                   boundary_one(report, c, "code " + std::to_string(code));
                 });
               });
}

SuiteResult boundary_random(int n, int m, int count, std::uint64_t seed) {
  return timed("boundary decomposition " + std::to_string(n) + "x" + std::to_string(m) + " random",
               [&](CheckReport& report) {
                 Rng rng(seed);
                 for (int t = 0; t < count; ++t) boundary_one(report, random_coloring(rng, n, m), "sample " + std::to_string(t));
               });
}

// ---------------------------------------------------------------------------
// Erdős–Szekeres

SuiteResult es_permutations(int len, int n) {
  return timed("monotone subsequences of all permutations of " + std::to_string(len),
               [&](CheckReport& report) {
                 std::vector<long long> perm(static_cast<std::size_t>(len));
                 std::iota(perm.begin(), perm.end(), 1LL);
                 do {
                   ++report.checked;
                   std::string tag = "perm";
                   for (long long v : perm) tag += " " + std::to_string(v);
                   const auto sub = es_monotone_subsequence(perm, n);
                   if (!sub) {
                     report.fail(tag + ": none found");
                     continue;
                   }
                   // Subsequence: the values sit at increasing positions.
                   bool in_order = true;
                   long previous = -1;
                   for (long long v : *sub) {
                     const long at = std::find(perm.begin(), perm.end(), v) - perm.begin();
                     in_order = in_order && at < static_cast<long>(perm.size()) && at > previous;
                     previous = at;
                   }
                   const bool mono = std::is_sorted(sub->begin(), sub->end()) ||
                                     std::is_sorted(sub->rbegin(), sub->rend());
                   if (!in_order || !mono || static_cast<int>(sub->size()) < n) {
                     report.fail(tag + ": witness is not a monotone subsequence of length " + std::to_string(n));
                   }
                 } while (std::next_permutation(perm.begin(), perm.end()));
               });
}

SuiteResult lex_random(int count, int side, int dims, int n, std::uint64_t seed) {
  return timed("lex-monotone subarrays of random " + std::to_string(dims) + "-d arrays",
               [&](CheckReport& report) {
                 Rng rng(seed);
                 std::size_t total = 1;
                 for (int d = 0; d < dims; ++d) total *= static_cast<std::size_t>(side);
                 for (int t = 0; t < count; ++t) {
                   ++report.checked;
                   const std::string tag = "array " + std::to_string(t);
                   std::vector<long long> values(total);
                   std::iota(values.begin(), values.end(), 0LL);
                   std::shuffle(values.begin(), values.end(), rng);
                   const LexArray array(std::vector<int>(static_cast<std::size_t>(dims), side), values);
                   const auto w = lex_monotone_subarray(array, n);
                   if (!w) {
                     report.fail(tag + ": no subarray found");
                     continue;
                   }
                   // Independent check: walk all cells of the subarray and
                   // compare every pair by the first decisive axis.
                   bool shape = static_cast<int>(w->index_sets.size()) == dims &&
                                static_cast<int>(w->sigma.size()) == dims &&
                                static_cast<int>(w->signs.size()) == dims;
                   for (const auto& set : w->index_sets) {
                     shape = shape && static_cast<int>(set.size()) >= n &&
                             std::is_sorted(set.begin(), set.end()) &&
                             std::adjacent_find(set.begin(), set.end()) == set.end() &&
                             set.front() >= 0 && set.back() < side;
                   }
                   if (!shape) {
                     report.fail(tag + ": malformed witness");
                     continue;
                   }
                   std::vector<std::vector<int>> cells{{}};
                   for (int d = 0; d < dims; ++d) {
                     std::vector<std::vector<int>> next;
                     for (const auto& prefix : cells) {
                       for (int x : w->index_sets[static_cast<std::size_t>(d)]) {
                         auto c = prefix;
                         c.push_back(x);
                         next.push_back(std::move(c));
                       }
                     }
                     cells = std::move(next);
                   }
                   bool ok = true;
                   for (const auto& p : cells) {
                     for (const auto& q : cells) {
                       for (int r = 0; r < dims && ok; ++r) {
                         const auto axis = static_cast<std::size_t>(w->sigma[static_cast<std::size_t>(r)]);
                         if (p[axis] == q[axis]) continue;
                         const bool coord_less = p[axis] < q[axis];
                         const bool value_less = array.at(p) < array.at(q);
                         const bool inc = w->signs[static_cast<std::size_t>(r)] == Direction::Inc;
                         ok = (inc ? coord_less : !coord_less) == value_less;
                         break;
                       }
                     }
                   }
                   if (!ok) report.fail(tag + ": witness subarray is not lex-monotone");
                 }
               });
}

// ---------------------------------------------------------------------------
// Sequence suites

SuiteResult bundled_suite(int count, std::uint64_t seed) {
  return timed("bundled pairs strongly interleave", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int k = uniform(rng, 1, 7);
      const auto n = static_cast<std::size_t>(2 * k + uniform(rng, 0, 3));
      std::string labels = uniform(rng, 0, 1) ? random_labels(rng, k) : alternating(k, uniform(rng, 0, 1));
      for (int swaps = uniform(rng, 0, 2); swaps > 0; --swaps) {
        const auto s = static_cast<std::size_t>(uniform(rng, 0, 2 * k - 2));
        std::swap(labels[s], labels[s + 1]);
      }
      std::vector<double> keys(n);
      place_labels(labels, keys, 0, static_cast<Vertex>(k), 1.0);
      add_extras(rng, keys, static_cast<std::size_t>(2 * k), 2.0 * k + 1);
      maybe_negate(rng, keys);
      const auto a = ids(0, k), b = ids(static_cast<Vertex>(k), k);
      const Scene s = make_scene(n, zip_pairs(a, b), keys);

      const int lib = max_interleave(a, b, s.order), oracle = oracle_max_interleave(a, b, s.order);
      if (lib != oracle) report.fail(tag + ": max_interleave " + std::to_string(lib) + ", oracle " + std::to_string(oracle));
      const auto rel = naive_related(a, b, s.order);
      const bool expect = rel == RelatedKind::Bundled && !any_cross(zip_pairs(a, b), s.order);
      try {
        const BundledWitness w = check_bundled(a, b, s.graph, s.order, s.coloring);
        if (!expect) report.fail(tag + ": accepted an instance outside the hypotheses");
        if (oracle != k) report.fail(tag + ": oracle interleave " + std::to_string(oracle) + " < " + std::to_string(k));
        if (w.chain.size() != static_cast<std::size_t>(2 * k)) report.fail(tag + ": witness chain has the wrong length");
      } catch (const precondition_error&) {
        if (expect) report.fail(tag + ": rejected a bundled non-crossing pair");
      } catch (const lemma_violation& e) {
        report.fail(tag + ": " + e.what());
      }
    }
  });
}

SuiteResult rainbow_suite(int count, std::uint64_t seed) {
  return timed("rainbow pairs are totally separated", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int k = uniform(rng, 1, 7);
      const auto n = static_cast<std::size_t>(2 * k + uniform(rng, 0, 3));
      std::string labels;
      if (uniform(rng, 0, 9) < 7) {
        const bool a_low = uniform(rng, 0, 1);
        labels = std::string(static_cast<std::size_t>(k), a_low ? 'A' : 'B') +
                 std::string(static_cast<std::size_t>(k), a_low ? 'B' : 'A');
      } else {
        labels = random_labels(rng, k);
      }
      std::vector<double> keys(n);
      place_labels(labels, keys, 0, static_cast<Vertex>(k), 1.0);
      // A increasing in slot order; flip B to make it decreasing.
      std::reverse(keys.begin() + k, keys.begin() + 2 * k);
      add_extras(rng, keys, static_cast<std::size_t>(2 * k), 2.0 * k + 1);
      maybe_negate(rng, keys);
      const auto a = ids(0, k), b = ids(static_cast<Vertex>(k), k);
      const Scene s = make_scene(n, zip_pairs(a, b), keys);
      const bool expect = naive_related(a, b, s.order) == RelatedKind::Rainbow;
      try {
        const RainbowShape shape = check_rainbow(a, b, s.graph, s.order, s.coloring);
        if (!expect) report.fail(tag + ": accepted a non-rainbow");
        std::size_t a_max = 0, a_min = n, b_max = 0, b_min = n;
        for (int i = 0; i < k; ++i) {
          a_max = std::max(a_max, s.order.rank(a[static_cast<std::size_t>(i)]));
          a_min = std::min(a_min, s.order.rank(a[static_cast<std::size_t>(i)]));
          b_max = std::max(b_max, s.order.rank(b[static_cast<std::size_t>(i)]));
          b_min = std::min(b_min, s.order.rank(b[static_cast<std::size_t>(i)]));
        }
        const bool a_below = a_max < b_min, a_above = b_max < a_min;
        const bool a_inc = rank_direction(a, s.order) == 1;
        const RainbowShape want = a_inc ? (a_below ? RainbowShape::IncBelow : RainbowShape::IncAbove)
                                        : (a_below ? RainbowShape::DecBelow : RainbowShape::DecAbove);
        if (!(a_below || a_above) || shape != want) report.fail(tag + ": wrong or unseparated shape");
        VertexSequence rb(b.rbegin(), b.rend());
        if (oracle_max_interleave(a, rb, s.order) > 1) report.fail(tag + ": rainbow sides interleave");
      } catch (const precondition_error&) {
        if (expect) report.fail(tag + ": rejected a rainbow");
      } catch (const lemma_violation& e) {
        report.fail(tag + ": " + e.what());
      }
    }
  });
}

SuiteResult sub_inter_suite(int count, std::uint64_t seed) {
  return timed("subsequences of strong interleaves", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int k = uniform(rng, 1, 7);
      const auto n = static_cast<std::size_t>(2 * k + uniform(rng, 0, 3));
      std::vector<double> keys(n);
      place_labels(alternating(k, uniform(rng, 0, 1)), keys, 0, static_cast<Vertex>(k), 1.0);
      add_extras(rng, keys, static_cast<std::size_t>(2 * k), 2.0 * k + 1);
      maybe_negate(rng, keys);
      const LinearOrder order = order_from_keys(keys);
      const auto a = ids(0, k), b = ids(static_cast<Vertex>(k), k);
      if (!strongly_interleave(a, b, order)) report.fail(tag + ": base pair does not interleave");
      VertexSequence sa, sb;
      while (sa.empty()) {
        for (int i = 0; i < k; ++i) {
          if (uniform(rng, 0, 1)) {
            sa.push_back(a[static_cast<std::size_t>(i)]);
            sb.push_back(b[static_cast<std::size_t>(i)]);
          }
        }
      }
      if (!strongly_interleave(sa, sb, order) ||
          oracle_max_interleave(sa, sb, order) != static_cast<int>(sa.size())) {
        report.fail(tag + ": matching subsequences do not strongly interleave");
      }
    }
  });
}

SuiteResult interleave_oracle_suite(int count, std::uint64_t seed) {
  return timed("max_interleave against the subsequence oracle", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const int ka = uniform(rng, 1, 7), kb = uniform(rng, 1, 7);
      std::vector<double> keys(static_cast<std::size_t>(ka + kb));
      for (double& x : keys) x = uniform_real(rng, 0, 1);
      std::sort(keys.begin(), keys.begin() + ka);
      std::sort(keys.begin() + ka, keys.end());
      if (uniform(rng, 0, 1)) std::reverse(keys.begin(), keys.begin() + ka);
      if (uniform(rng, 0, 1)) std::reverse(keys.begin() + ka, keys.end());
      if (uniform(rng, 0, 4) == 0) std::shuffle(keys.begin(), keys.begin() + ka, rng);
      const LinearOrder order = order_from_keys(keys);
      const auto a = ids(0, ka), b = ids(static_cast<Vertex>(ka), kb);
      const int lib = max_interleave(a, b, order), oracle = oracle_max_interleave(a, b, order);
      if (lib != oracle) {
        report.fail("instance " + std::to_string(t) + ": " + std::to_string(lib) + " vs oracle " + std::to_string(oracle));
      }
      const auto w = interleave_witness(a, b, order);
      if (w.size() != lib) report.fail("instance " + std::to_string(t) + ": witness size differs");
    }
  });
}

SuiteResult half_inter_suite(int count, std::uint64_t seed) {
  return timed("interleave through one strong link", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int k = uniform(rng, 1, 7);
      std::vector<double> keys(static_cast<std::size_t>(3 * k));
      place_labels(random_labels(rng, k), keys, 0, static_cast<Vertex>(k), 1.0);
      const std::vector<double> bkeys(keys.begin() + k, keys.begin() + 2 * k);
      const auto ckeys = interleaved_keys(rng, bkeys, uniform(rng, 0, 1));
      std::copy(ckeys.begin(), ckeys.end(), keys.begin() + 2 * k);
      maybe_negate(rng, keys);
      const LinearOrder order = order_from_keys(keys);
      const auto a = ids(0, k), b = ids(static_cast<Vertex>(k), k), c = ids(static_cast<Vertex>(2 * k), k);
      if (!strongly_interleave(b, c, order)) report.fail(tag + ": B, C do not strongly interleave");
      const int kab = oracle_max_interleave(a, b, order), kac = oracle_max_interleave(a, c, order);
      if (kac < (kab + 1) / 2 - 1) {
        report.fail(tag + ": A,B " + std::to_string(kab) + "-interleave but A,C only " + std::to_string(kac));
      }
      if (max_interleave(a, c, order) != kac) report.fail(tag + ": max_interleave disagrees with the oracle");
    }
  });
}

SuiteResult chain_bound_suite(int count, std::uint64_t seed) {
  return timed("strong interleave chains", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int links = uniform(rng, 1, 3), k = uniform(rng, 1, 7);
      std::vector<std::vector<double>> seqs;
      std::vector<double> first(static_cast<std::size_t>(k));
      for (double& x : first) x = uniform_real(rng, 0, 100);
      std::sort(first.begin(), first.end());
      seqs.push_back(first);
      for (int l = 0; l < links; ++l) seqs.push_back(interleaved_keys(rng, seqs.back(), uniform(rng, 0, 1)));
      std::vector<double> keys;
      std::vector<VertexSequence> chain;
      for (const auto& s : seqs) {
        chain.push_back(ids(static_cast<Vertex>(keys.size()), k));
        keys.insert(keys.end(), s.begin(), s.end());
      }
      maybe_negate(rng, keys);
      const LinearOrder order = order_from_keys(keys);
      const int oracle = oracle_max_interleave(chain.front(), chain.back(), order);
      const int bound = chain_interleave_bound(k, links);
      if (oracle < bound) report.fail(tag + ": ends interleave " + std::to_string(oracle) + " < " + std::to_string(bound));
      try {
        const ChainBound cb = chain_interleave(chain, order);
        if (cb.actual != oracle || cb.bound != bound) report.fail(tag + ": chain_interleave disagrees with the oracle");
      } catch (const std::exception& e) {
        report.fail(tag + ": " + e.what());
      }
    }
  });
}

SuiteResult rainbow_transfer_suite(int count, std::uint64_t seed) {
  return timed("rainbows keep interleave up to 2", [&](CheckReport& report) {
    Rng rng(seed);
    for (int t = 0; t < count; ++t) {
      ++report.checked;
      const std::string tag = "instance " + std::to_string(t);
      const int k = uniform(rng, 1, 7);
      const auto ku = static_cast<std::size_t>(k);
      std::vector<double> keys(4 * ku);
      // A, B increasing inside (0, 1); C decreasing inside (2, 3).
      place_labels(random_labels(rng, k), keys, 0, static_cast<Vertex>(k), 1.0 / (2 * k + 1));
      for (std::size_t i = 0; i < ku; ++i) keys[2 * ku + i] = 3.0 - static_cast<double>(i + 1) / (k + 1);
      auto a_key = [&](std::size_t i) { return keys[i]; };
      auto c_key = [&](std::size_t i) { return keys[2 * ku + i]; };
      if (uniform(rng, 0, 4) == 0) {
        std::vector<double> d(ku);
        for (double& x : d) x = uniform_real(rng, 0, 3.5);
        std::sort(d.rbegin(), d.rend());
        std::copy(d.begin(), d.end(), keys.begin() + 3 * static_cast<long>(ku));
      } else {
        // d_i nests with the A-C edge around b_i: above c_{j+1} and below
        // c_j when a_j < b_i < a_{j+1}.
        std::map<std::size_t, std::vector<std::size_t>> gaps;
        for (std::size_t i = 0; i < ku; ++i) {
          std::size_t j = 0;
          while (j < ku && a_key(j) < keys[ku + i]) ++j;
          gaps[j].push_back(i);
        }
        for (const auto& [j, members] : gaps) {
          const double lo = j == ku ? 1.5 : c_key(j);
          const double hi = j == 0 ? 3.5 : c_key(j - 1);
          std::vector<double> d;
          for (std::size_t q = 0; q < members.size(); ++q) d.push_back(uniform_real(rng, lo, hi));
          std::sort(d.rbegin(), d.rend());
          for (std::size_t q = 0; q < members.size(); ++q) keys[3 * ku + members[q]] = d[q];
        }
      }
      maybe_negate(rng, keys);
      const auto a = ids(0, k), b = ids(static_cast<Vertex>(k), k);
      const auto c = ids(static_cast<Vertex>(2 * k), k), d = ids(static_cast<Vertex>(3 * k), k);
      auto pairs = zip_pairs(a, c);
      const auto bd = zip_pairs(b, d);
      pairs.insert(pairs.end(), bd.begin(), bd.end());
      const Scene s = make_scene(4 * ku, pairs, keys);
      const bool expect = naive_related(a, c, s.order) == RelatedKind::Rainbow &&
                          naive_related(b, d, s.order) == RelatedKind::Rainbow &&
                          !any_cross(pairs, s.order);
      const int before = oracle_max_interleave(a, b, s.order);
      try {
        const TransferResult r = rainbow_interleave_transfer(a, b, c, d, s.graph, s.order, s.coloring);
        if (!expect) report.fail(tag + ": accepted an instance outside the hypotheses");
        const int after = oracle_max_interleave(c, d, s.order);
        if (r.before != before || r.after != after) report.fail(tag + ": interleave values disagree with the oracle");
        if (after < before - 2) report.fail(tag + ": " + std::to_string(before) + " -> " + std::to_string(after));
        if (!validate_stack_layout(s.graph, s.order, s.coloring).valid) report.fail(tag + ": page is not valid");
      } catch (const precondition_error&) {
        if (expect) report.fail(tag + ": rejected a valid rainbow pair");
      } catch (const lemma_violation& e) {
        report.fail(tag + ": " + e.what());
      }
    }
  });
}

// ---------------------------------------------------------------------------
// Crossing derivations

SuiteResult fan_fan_exhaustive(int len) {
  return timed("fan-fan crossings, all orders of " + std::to_string(2 * len + 2) + " points",
               [&](CheckReport& report) {
                 const auto n = static_cast<std::size_t>(2 * len + 2);
                 const auto a = ids(0, len), b = ids(static_cast<Vertex>(len), len);
                 const Vertex apex_a = static_cast<Vertex>(2 * len), apex_b = apex_a + 1;
                 std::vector<std::pair<Vertex, Vertex>> pairs;
                 for (Vertex v : a) pairs.emplace_back(v, apex_a);
                 for (Vertex v : b) pairs.emplace_back(v, apex_b);
                 std::vector<Vertex> perm(n);
                 std::iota(perm.begin(), perm.end(), Vertex{0});
                 std::size_t applicable = 0;
                 do {
                   ++report.checked;
                   std::vector<double> keys(n);
                   for (std::size_t p = 0; p < n; ++p) keys[perm[p]] = static_cast<double>(p);
                   const Scene s = make_scene(n, pairs, keys);
                   const bool expect = oracle_max_interleave(a, b, s.order) >= 2;
                   std::string tag = "order";
                   for (Vertex v : perm) tag += " " + std::to_string(v);
                   try {
                     const CrossingPair cp = derive_fan_fan_crossing(a, apex_a, b, apex_b, s.graph, s.order, s.coloring);
                     if (!expect) report.fail(tag + ": accepted fans that do not 2-interleave");
                     ++applicable;
                     check_crossing_pair(report, cp, s, tag);
                   } catch (const precondition_error&) {
                     if (expect) report.fail(tag + ": rejected 2-interleaving fans");
                   } catch (const lemma_violation& e) {
                     report.fail(tag + ": " + e.what());
                   }
                 } while (std::next_permutation(perm.begin(), perm.end()));
                 if (applicable == 0) report.fail("no order met the hypotheses");
               });
}

SuiteResult fan_rainbow_exhaustive() {
  return timed("fan-rainbow crossings, all placements around a rainbow", [&](CheckReport& report) {
    constexpr int k = 3;
    const auto a = ids(0, k), b = ids(k, k), c = ids(2 * k, k);
    const Vertex apex = 3 * k;
    std::vector<std::pair<Vertex, Vertex>> pairs = zip_pairs(a, b);
    for (Vertex v : c) pairs.emplace_back(v, apex);
    std::size_t applicable = 0;
    for (bool a_below : {true, false}) {
      // Rainbow backbone: a_1 < a_2 < a_3 < b_3 < b_2 < b_1, or the B side
      // below (b_3 < b_2 < b_1 < a_1 < a_2 < a_3).
      const std::vector<Vertex> backbone = a_below ? std::vector<Vertex>{0, 1, 2, 5, 4, 3}
                                                   : std::vector<Vertex>{5, 4, 3, 0, 1, 2};
      constexpr std::size_t total = 10;
      for (unsigned mask = 0; mask < (1u << total); ++mask) {
        if (std::popcount(mask) != 4) continue;
        for (int apex_slot = 0; apex_slot < 4; ++apex_slot) {
          for (bool flip : {false, true}) {
            ++report.checked;
            std::vector<Vertex> seq;
            std::size_t next_backbone = 0;
            int next_c = 0, slot = 0;
            for (std::size_t p = 0; p < total; ++p) {
              if (mask >> p & 1u) {
                seq.push_back(slot++ == apex_slot ? apex : c[static_cast<std::size_t>(next_c++)]);
              } else {
                seq.push_back(backbone[next_backbone++]);
              }
            }
            std::vector<double> keys(total);
            for (std::size_t p = 0; p < total; ++p) keys[seq[p]] = flip ? -static_cast<double>(p) : static_cast<double>(p);
            const Scene s = make_scene(total, pairs, keys);
            const bool expect = oracle_max_interleave(a, c, s.order) >= 3;
            std::string tag = "placement";
            for (Vertex v : seq) tag += " " + std::to_string(v);
            if (flip) tag += " reversed";
            try {
              const CrossingPair cp = derive_fan_rainbow_crossing(a, b, c, apex, s.graph, s.order, s.coloring);
              if (!expect) report.fail(tag + ": accepted a fan that does not 3-interleave");
              ++applicable;
              check_crossing_pair(report, cp, s, tag);
            } catch (const precondition_error&) {
              if (expect) report.fail(tag + ": rejected a 3-interleaving fan");
            } catch (const lemma_violation& e) {
              report.fail(tag + ": " + e.what());
            }
          }
        }
      }
    }
    if (applicable == 0) report.fail("no placement met the hypotheses");
  });
}

SuiteResult three_queue_suite(const std::vector<std::vector<int>>& specs, const std::vector<int>& paths) {
  return timed("three-queue layouts validate", [&](CheckReport& report) {
    for (const auto& degrees : specs) {
      for (int m : paths) {
        ++report.checked;
        const ProductGraph pg(TreeSpec{degrees}, m);
        const Layout layout = three_queue_layout(pg);
        const LayoutReport r = validate_queue_layout(pg.graph(), layout.order, layout.coloring);
        std::string tag = "degrees";
        for (int d : degrees) tag += " " + std::to_string(d);
        tag += ", path " + std::to_string(m);
        if (!r.valid) report.fail(tag + ": " + std::to_string(r.violations.size()) + " nesting violations");
        if (layout.coloring.k > 3) report.fail(tag + ": uses more than three queues");
      }
    }
  });
}

SuiteResult crossing_characterisation() {
  return timed("crossing iff endpoints on different sides", [&](CheckReport& report) {
    std::vector<Vertex> perm{0, 1, 2, 3};
    const Edge e1{0, 1}, e2{2, 3};
    do {
      ++report.checked;
      std::vector<double> keys(4);
      for (std::size_t p = 0; p < 4; ++p) keys[perm[p]] = static_cast<double>(p);
      const LinearOrder order = order_from_keys(keys);
      const bool cross = classify_pair(e1, e2, order) == PairRelation::Cross;
      if (cross != !same_side(2, 3, e1, order)) report.fail("order mismatch for (c, d) around e1");
      if (cross != !same_side(0, 1, e2, order)) report.fail("order mismatch for (a, b) around e2");
      if (classify_pair(e1, e2, order) != classify_pair(e2, e1, order)) report.fail("classify_pair is not symmetric");
      if (cross != oracle_cross(0, 1, 2, 3, order)) report.fail("classify_pair disagrees with the rank test");
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
}

}  // namespace boxslash
