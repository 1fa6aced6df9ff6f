#include "boxslash/sequences.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "boxslash/errors.hpp"

namespace boxslash {

const char* to_string(Direction d) noexcept {
  switch (d) {
    case Direction::Inc: return "INC";
    case Direction::Dec: return "DEC";
    case Direction::Either: return "EITHER";
  }
  return "?";
}

Direction opposite(Direction d) noexcept {
  switch (d) {
    case Direction::Inc: return Direction::Dec;
    case Direction::Dec: return Direction::Inc;
    case Direction::Either: return Direction::Either;
  }
  return d;
}

bool same_direction(Direction a, Direction b) noexcept {
  return a == b || a == Direction::Either || b == Direction::Either;
}

const char* to_string(RelatedKind k) noexcept {
  return k == RelatedKind::Bundled ? "bundled" : "rainbow";
}

const char* to_string(RainbowShape s) noexcept {
  switch (s) {
    case RainbowShape::IncBelow: return "inc_below";
    case RainbowShape::IncAbove: return "inc_above";
    case RainbowShape::DecBelow: return "dec_below";
    case RainbowShape::DecAbove: return "dec_above";
  }
  return "?";
}

namespace {

void require_distinct(std::initializer_list<SequenceView> seqs,
                      std::initializer_list<Vertex> extra = {}) {
  std::set<Vertex> seen;
  for (SequenceView s : seqs) {
    for (Vertex v : s) {
      if (!seen.insert(v).second) {
        throw input_error("sequence elements must be distinct (vertex " + std::to_string(v) +
                          " repeated)");
      }
    }
  }
  for (Vertex v : extra) {
    if (!seen.insert(v).second) {
      throw precondition_error("apex " + std::to_string(v) +
                               " coincides with another element");
    }
  }
}

Direction direction_of(SequenceView s, const LinearOrder& order) {
  auto d = is_monotone(s, order);
  if (!d) throw precondition_error("sequence is not monotone");
  return *d;
}

std::vector<std::size_t> fan_edges(SequenceView a, Vertex apex, const Graph& graph) {
  std::vector<std::size_t> out;
  for (Vertex v : a) {
    auto e = graph.find_edge(v, apex);
    if (!e) throw precondition_error("fan edge missing");
    out.push_back(*e);
  }
  return out;
}

CrossingPair make_pair(std::size_t e1, std::size_t e2, const EdgeColoring& coloring) {
  return {std::min(e1, e2), std::max(e1, e2), coloring.colors.at(e1)};
}

bool crosses(std::size_t e1, std::size_t e2, const Graph& graph, const LinearOrder& order) {
  return classify_pair(graph.edge(e1), graph.edge(e2), order) == PairRelation::Cross;
}

}  // namespace

std::optional<Direction> is_monotone(SequenceView seq, const LinearOrder& order) {
  if (seq.empty()) throw input_error("is_monotone: empty sequence");
  require_distinct({seq});
  if (seq.size() == 1) return Direction::Either;
  bool inc = true, dec = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (order.less(seq[i], seq[i + 1])) {
      dec = false;
    } else {
      inc = false;
    }
  }
  if (inc) return Direction::Inc;
  if (dec) return Direction::Dec;
  return std::nullopt;
}

std::optional<Related> is_related(SequenceView a, SequenceView b, const Graph& graph,
                                  const LinearOrder& order, const EdgeColoring& coloring) {
  if (a.size() != b.size()) throw input_error("is_related: length mismatch");
  require_distinct({a, b});
  const auto da = is_monotone(a, order);
  const auto db = is_monotone(b, order);
  if (!da || !db) return std::nullopt;

  const bool below = order.less(a[0], b[0]);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (order.less(a[i], b[i]) != below) return std::nullopt;
  }
  std::optional<int> color;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto e = graph.find_edge(a[i], b[i]);
    if (!e) return std::nullopt;
    const int c = coloring.colors.at(*e);
    if (color && *color != c) return std::nullopt;
    color = c;
  }
  const RelatedKind kind = same_direction(*da, *db) ? RelatedKind::Bundled : RelatedKind::Rainbow;
  return Related{kind, *color};
}

bool strongly_interleave(SequenceView a, SequenceView b, const LinearOrder& order) {
  if (a.size() != b.size() || a.empty()) return false;
  const auto da = is_monotone(a, order);
  const auto db = is_monotone(b, order);
  if (!da || !db || !same_direction(*da, *db)) return false;
  const Direction dir = *da == Direction::Either ? *db : *da;
  const std::size_t k = a.size();

  // x_1 ? y_1 ? x_2 ? ... ? x_k ? y_k with ? = < (Inc) or > (Dec).
  auto chain = [&](SequenceView x, SequenceView y, bool ascending) {
    std::vector<Vertex> seq;
    for (std::size_t i = 0; i < k; ++i) {
      seq.push_back(x[i]);
      seq.push_back(y[i]);
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      if (order.less(seq[i], seq[i + 1]) != ascending) return false;
    }
    return true;
  };
  if (dir != Direction::Dec && (chain(a, b, true) || chain(b, a, true))) return true;
  if (dir != Direction::Inc && (chain(a, b, false) || chain(b, a, false))) return true;
  return false;
}

InterleaveWitness interleave_witness(SequenceView a, SequenceView b, const LinearOrder& order) {
  InterleaveWitness best;
  if (a.empty() || b.empty()) return best;
  const auto da = is_monotone(a, order);
  const auto db = is_monotone(b, order);
  if (!da || !db || !same_direction(*da, *db)) return best;

  // Tagged merge by rank; the alternation patterns ABAB.. and BABA.. cover
  // the four strong-interleave chains for both directions.
  struct Item {
    std::size_t rank;
    bool from_a;
    std::size_t index;
  };
  std::vector<Item> merged;
  for (std::size_t i = 0; i < a.size(); ++i) merged.push_back({order.rank(a[i]), true, i});
  for (std::size_t i = 0; i < b.size(); ++i) merged.push_back({order.rank(b[i]), false, i});
  std::sort(merged.begin(), merged.end(),
            [](const Item& x, const Item& y) { return x.rank < y.rank; });

  for (bool a_first : {true, false}) {
    InterleaveWitness w;
    w.a_first = a_first;
    std::optional<std::size_t> pending;
    for (const Item& item : merged) {
      if (!pending && item.from_a == a_first) {
        pending = item.index;
      } else if (pending && item.from_a != a_first) {
        const std::size_t other = item.index;
        w.a_index.push_back(a_first ? *pending : other);
        w.b_index.push_back(a_first ? other : *pending);
        pending.reset();
      }
    }
    if (w.size() > best.size()) best = std::move(w);
  }
  std::sort(best.a_index.begin(), best.a_index.end());
  std::sort(best.b_index.begin(), best.b_index.end());
  return best;
}

int max_interleave(SequenceView a, SequenceView b, const LinearOrder& order) {
  return interleave_witness(a, b, order).size();
}

std::vector<std::size_t> matching_edges(SequenceView a, SequenceView b, const Graph& graph) {
  if (a.size() != b.size()) throw input_error("matching_edges: length mismatch");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto e = graph.find_edge(a[i], b[i]);
    if (!e) throw precondition_error("missing edge between paired elements");
    out.push_back(*e);
  }
  return out;
}

std::optional<CrossingPair> find_crossing(std::span<const std::size_t> edges, const Graph& graph,
                                          const LinearOrder& order,
                                          const EdgeColoring& coloring) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges[i] == edges[j]) continue;
      if (coloring.colors.at(edges[i]) != coloring.colors.at(edges[j])) continue;
      if (crosses(edges[i], edges[j], graph, order)) {
        return make_pair(edges[i], edges[j], coloring);
      }
    }
  }
  return std::nullopt;
}

bool same_side(Vertex c, Vertex d, const Edge& e, const LinearOrder& order) {
  auto lo = order.rank(e.u), hi = order.rank(e.v);
  if (lo > hi) std::swap(lo, hi);
  auto side = [&](Vertex x) -> int {
    const auto r = order.rank(x);
    if (r == lo || r == hi) return -1;
    return lo < r && r < hi ? 1 : 0;
  };
  const int sc = side(c), sd = side(d);
  return sc >= 0 && sc == sd;
}

BundledWitness check_bundled(SequenceView a, SequenceView b, const Graph& graph,
                             const LinearOrder& order, const EdgeColoring& coloring) {
  const auto rel = is_related(a, b, graph, order, coloring);
  if (!rel || rel->kind != RelatedKind::Bundled) {
    throw precondition_error("check_bundled: sequences are not a bundled pair");
  }
  const auto edges = matching_edges(a, b, graph);
  if (find_crossing(edges, graph, order, coloring)) {
    throw precondition_error("check_bundled: matching edges cross");
  }
  if (!strongly_interleave(a, b, order)) {
    throw lemma_violation("bundled pair with non-crossing edges does not strongly interleave");
  }
  BundledWitness w;
  w.chain.assign(a.begin(), a.end());
  w.chain.insert(w.chain.end(), b.begin(), b.end());
  std::sort(w.chain.begin(), w.chain.end(),
            [&](Vertex x, Vertex y) { return order.less(x, y); });
  return w;
}

RainbowShape check_rainbow(SequenceView a, SequenceView b, const Graph& graph,
                           const LinearOrder& order, const EdgeColoring& coloring) {
  const auto rel = is_related(a, b, graph, order, coloring);
  if (!rel || rel->kind != RelatedKind::Rainbow) {
    throw precondition_error("check_rainbow: sequences are not a rainbow pair");
  }
  auto ascending = [&](const std::vector<Vertex>& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      if (!order.less(seq[i], seq[i + 1])) return false;
    }
    return true;
  };
  auto join = [&](bool a_rev, bool b_rev, bool a_first) {
    std::vector<Vertex> xa(a.begin(), a.end()), xb(b.begin(), b.end());
    if (a_rev) std::reverse(xa.begin(), xa.end());
    if (b_rev) std::reverse(xb.begin(), xb.end());
    std::vector<Vertex> out = a_first ? xa : xb;
    const auto& tail = a_first ? xb : xa;
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  };
  if (ascending(join(false, true, true))) return RainbowShape::IncBelow;
  if (ascending(join(false, true, false))) return RainbowShape::IncAbove;
  if (ascending(join(true, false, true))) return RainbowShape::DecBelow;
  if (ascending(join(true, false, false))) return RainbowShape::DecAbove;
  throw lemma_violation("rainbow pair is not totally separated");
}

std::optional<int> fan_check(SequenceView a, Vertex apex, const Graph& graph,
                             const EdgeColoring& coloring) {
  if (std::find(a.begin(), a.end(), apex) != a.end()) {
    throw input_error("fan_check: apex is an element of the sequence");
  }
  std::optional<int> color;
  for (Vertex v : a) {
    auto e = graph.find_edge(v, apex);
    if (!e) return std::nullopt;
    const int c = coloring.colors.at(*e);
    if (color && *color != c) return std::nullopt;
    color = c;
  }
  return color;
}

CrossingPair derive_fan_fan_crossing(SequenceView a, Vertex apex_a, SequenceView b, Vertex apex_b,
                                     const Graph& graph, const LinearOrder& order,
                                     const EdgeColoring& coloring) {
  require_distinct({a, b}, {apex_a, apex_b});
  const auto ca = fan_check(a, apex_a, graph, coloring);
  const auto cb = fan_check(b, apex_b, graph, coloring);
  if (!ca || !cb || *ca != *cb) {
    throw precondition_error("derive_fan_fan_crossing: sequences are not fanned in one colour");
  }
  const auto w = interleave_witness(a, b, order);
  if (w.size() < 2) {
    throw precondition_error("derive_fan_fan_crossing: sequences do not 2-interleave");
  }
  // Two consecutive alternation pairs: a1 < b1 < a2 < b2 up to symmetry.
  const Vertex a1 = a[w.a_index[0]], a2 = a[w.a_index[1]];
  const Vertex b1 = b[w.b_index[0]], b2 = b[w.b_index[1]];
  const std::size_t ea1 = *graph.find_edge(a1, apex_a), ea2 = *graph.find_edge(a2, apex_a);
  const std::size_t eb1 = *graph.find_edge(b1, apex_b), eb2 = *graph.find_edge(b2, apex_b);

  // b-fan edges keep b_j and apex_b on one side of each a-fan edge; if both
  // b_1 and b_2 share apex_b's side of (a_i, apex_a) for i = 1, 2, then
  // a_1, apex_a, a_2 share a side of (b_1, b_2), which the alternation rules out.
  for (std::size_t ea : {ea1, ea2}) {
    const Edge& e = graph.edge(ea);
    for (auto [bj, eb] : {std::pair{b1, eb1}, std::pair{b2, eb2}}) {
      if (!same_side(bj, apex_b, e, order) && crosses(ea, eb, graph, order)) {
        return make_pair(ea, eb, coloring);
      }
    }
  }
  const std::vector<std::size_t> all{ea1, ea2, eb1, eb2};
  if (auto hit = find_crossing(all, graph, order, coloring)) return *hit;
  throw lemma_violation("interleaving fans of one colour without a crossing");
}

CrossingPair derive_fan_rainbow_crossing(SequenceView a, SequenceView b, SequenceView fanned,
                                         Vertex apex, const Graph& graph,
                                         const LinearOrder& order,
                                         const EdgeColoring& coloring) {
  require_distinct({a, b, fanned}, {apex});
  const auto rel = is_related(a, b, graph, order, coloring);
  if (!rel || rel->kind != RelatedKind::Rainbow) {
    throw precondition_error("derive_fan_rainbow_crossing: (a, b) is not a rainbow");
  }
  const auto fan_color = fan_check(fanned, apex, graph, coloring);
  if (!fan_color || *fan_color != rel->color) {
    throw precondition_error("derive_fan_rainbow_crossing: fan colour differs from rainbow");
  }
  const auto w = interleave_witness(a, fanned, order);
  if (w.size() < 3) {
    throw precondition_error("derive_fan_rainbow_crossing: a and the fan do not 3-interleave");
  }
  // Three elements of a, by rank, with their rainbow partners.
  std::vector<std::size_t> idx(w.a_index.begin(), w.a_index.begin() + 3);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return order.less(a[x], a[y]); });
  const Vertex lo = a[idx[0]], mid = a[idx[1]], hi = a[idx[2]];
  const std::size_t rainbow_edge = *graph.find_edge(mid, b[idx[1]]);

  auto between = [&](Vertex x, Vertex y) -> std::optional<Vertex> {
    for (Vertex c : fanned) {
      if (order.less(x, c) && order.less(c, y)) return c;
    }
    return std::nullopt;
  };
  const auto c1 = between(lo, mid);
  const auto c2 = between(mid, hi);
  if (!c1 || !c2) throw lemma_violation("strong interleave without intermediate elements");

  // c1 and c2 lie on different sides of (mid, partner); apex cannot share a
  // side with both.
  const Edge& e = graph.edge(rainbow_edge);
  for (Vertex c : {*c1, *c2}) {
    const std::size_t fe = *graph.find_edge(c, apex);
    if (!same_side(c, apex, e, order) && crosses(rainbow_edge, fe, graph, order)) {
      return make_pair(rainbow_edge, fe, coloring);
    }
  }
  std::vector<std::size_t> all = matching_edges(a, b, graph);
  const auto fans = fan_edges(fanned, apex, graph);
  all.insert(all.end(), fans.begin(), fans.end());
  if (auto hit = find_crossing(all, graph, order, coloring)) return *hit;
  throw lemma_violation("interleaving fan and rainbow of one colour without a crossing");
}

TransferResult rainbow_interleave_transfer(SequenceView a, SequenceView b, SequenceView c,
                                           SequenceView d, const Graph& graph,
                                           const LinearOrder& order,
                                           const EdgeColoring& coloring) {
  require_distinct({a, b, c, d});
  const Direction da = direction_of(a, order), db = direction_of(b, order);
  if (!same_direction(da, db)) {
    throw precondition_error("rainbow_interleave_transfer: a and b differ in direction");
  }
  const auto rac = is_related(a, c, graph, order, coloring);
  const auto rbd = is_related(b, d, graph, order, coloring);
  if (!rac || !rbd || rac->kind != RelatedKind::Rainbow || rbd->kind != RelatedKind::Rainbow) {
    throw precondition_error("rainbow_interleave_transfer: (a, c) and (b, d) must be rainbows");
  }
  if (rac->color != rbd->color) {
    throw precondition_error("rainbow_interleave_transfer: rainbows differ in colour");
  }
  std::vector<std::size_t> edges = matching_edges(a, c, graph);
  const auto more = matching_edges(b, d, graph);
  edges.insert(edges.end(), more.begin(), more.end());
  if (find_crossing(edges, graph, order, coloring)) {
    throw precondition_error("rainbow_interleave_transfer: rainbow edges cross");
  }
  TransferResult out{max_interleave(a, b, order), max_interleave(c, d, order)};
  if (out.after < out.before - 2) {
    throw lemma_violation("rainbow transfer lost more than 2 interleave");
  }
  return out;
}

int chain_interleave_bound(int length, int steps) noexcept {
  if (steps <= 1) return length;
  return (length + steps - 1) / steps - 1;
}

ChainBound chain_interleave(std::span<const VertexSequence> chain, const LinearOrder& order) {
  if (chain.size() < 2) throw precondition_error("chain_interleave: need at least 2 sequences");
  const std::size_t k = chain[0].size();
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i + 1].size() != k) throw precondition_error("chain_interleave: length mismatch");
    if (!strongly_interleave(chain[i], chain[i + 1], order)) {
      throw precondition_error("chain_interleave: link " + std::to_string(i) +
                               " does not strongly interleave");
    }
  }
  ChainBound out;
  out.length = static_cast<int>(k);
  out.steps = static_cast<int>(chain.size() - 1);
  out.bound = chain_interleave_bound(out.length, out.steps);
  out.actual = max_interleave(chain.front(), chain.back(), order);
  if (out.actual < out.bound) throw lemma_violation("interleave chain bound violated");
  if (out.steps == 2 && out.actual < (out.length + 1) / 2 - 1) {
    throw lemma_violation("halving bound violated");
  }
  return out;
}

long long bundled_chain_length_bound(int k) noexcept { return 10LL << std::min(k, 40); }

long long related_chains_interleave_bound(int k) noexcept {
  return 10LL << std::min(2 * k, 56);
}

namespace {

// Fan colour of the fan end, checking the closing conditions shared by both
// chain lemmas. Returns the edges the ends contribute.
std::vector<std::size_t> check_ends(SequenceView first_seq, const ChainEnd& first,
                                    SequenceView last_seq, const ChainEnd& last,
                                    const Graph& graph, const LinearOrder& order,
                                    const EdgeColoring& coloring) {
  if (first.kind == ChainEnd::Kind::Rainbow && last.kind == ChainEnd::Kind::Rainbow) {
    throw precondition_error("at least one chain end must be a fan");
  }
  std::optional<int> color;
  std::vector<std::size_t> edges;
  for (auto [seq, end] : {std::pair{first_seq, &first}, std::pair{last_seq, &last}}) {
    int c = 0;
    if (end->kind == ChainEnd::Kind::Fan) {
      const auto fc = fan_check(seq, end->apex, graph, coloring);
      if (!fc) throw precondition_error("chain end is not fanned");
      c = *fc;
      const auto fe = fan_edges(seq, end->apex, graph);
      edges.insert(edges.end(), fe.begin(), fe.end());
    } else {
      const auto rel = is_related(seq, end->partner, graph, order, coloring);
      if (!rel || rel->kind != RelatedKind::Rainbow) {
        throw precondition_error("chain end is not a rainbow");
      }
      c = rel->color;
      const auto re = matching_edges(seq, end->partner, graph);
      edges.insert(edges.end(), re.begin(), re.end());
    }
    if (color && *color != c) throw precondition_error("chain ends differ in colour");
    color = c;
  }
  return edges;
}

std::optional<CrossingPair> close_ends(SequenceView first_seq, const ChainEnd& first,
                                       SequenceView last_seq, const ChainEnd& last,
                                       const Graph& graph, const LinearOrder& order,
                                       const EdgeColoring& coloring) {
  const int inter = max_interleave(first_seq, last_seq, order);
  if (first.kind == ChainEnd::Kind::Fan && last.kind == ChainEnd::Kind::Fan) {
    if (inter >= 2) {
      return derive_fan_fan_crossing(first_seq, first.apex, last_seq, last.apex, graph, order,
                                     coloring);
    }
    return std::nullopt;
  }
  if (inter < 3) return std::nullopt;
  if (first.kind == ChainEnd::Kind::Rainbow) {
    return derive_fan_rainbow_crossing(first_seq, first.partner, last_seq, last.apex, graph,
                                       order, coloring);
  }
  return derive_fan_rainbow_crossing(last_seq, last.partner, first_seq, first.apex, graph, order,
                                     coloring);
}

}  // namespace

std::optional<CrossingPair> derive_bundled_chain_crossing(
    std::span<const VertexSequence> chain, const ChainEnd& first, const ChainEnd& last,
    const Graph& graph, const LinearOrder& order, const EdgeColoring& coloring) {
  if (chain.size() < 2) throw precondition_error("bundled chain needs at least 2 sequences");
  std::vector<Vertex> apexes;
  for (const ChainEnd* end : {&first, &last}) {
    if (end->kind == ChainEnd::Kind::Fan) apexes.push_back(end->apex);
  }
  {
    std::vector<Vertex> all;
    for (const auto& s : chain) all.insert(all.end(), s.begin(), s.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      throw input_error("chain elements must be distinct");
    }
    for (Vertex apex : apexes) {
      if (std::binary_search(all.begin(), all.end(), apex)) {
        throw precondition_error("fan apex lies on the chain");
      }
    }
  }

  std::vector<std::size_t> hypothesis_edges =
      check_ends(chain.front(), first, chain.back(), last, graph, order, coloring);
  const Direction dir = direction_of(chain.front(), order);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto rel = is_related(chain[i], chain[i + 1], graph, order, coloring);
    if (!rel || rel->kind != RelatedKind::Bundled ||
        !same_direction(dir, direction_of(chain[i + 1], order))) {
      throw precondition_error("chain link " + std::to_string(i) + " is not bundled");
    }
    const auto link = matching_edges(chain[i], chain[i + 1], graph);
    hypothesis_edges.insert(hypothesis_edges.end(), link.begin(), link.end());
    // A bundled link that fails to alternate has crossing matching edges.
    if (!strongly_interleave(chain[i], chain[i + 1], order)) {
      if (auto hit = find_crossing(link, graph, order, coloring)) return hit;
      throw lemma_violation("bundled link neither alternates nor crosses");
    }
  }

  if (auto hit = close_ends(chain.front(), first, chain.back(), last, graph, order, coloring)) {
    return hit;
  }
  if (auto hit = find_crossing(hypothesis_edges, graph, order, coloring)) return hit;
  const long long len = static_cast<long long>(chain.front().size());
  if (len > bundled_chain_length_bound(static_cast<int>(chain.size()))) {
    throw lemma_violation("long bundled chain closed by fans without a crossing");
  }
  return std::nullopt;
}

std::optional<CrossingPair> derive_related_chains_crossing(
    std::span<const VertexSequence> a_chain, std::span<const VertexSequence> b_chain,
    const ChainEnd& a_end, const ChainEnd& b_end, const Graph& graph, const LinearOrder& order,
    const EdgeColoring& coloring) {
  if (a_chain.empty() || a_chain.size() != b_chain.size()) {
    throw precondition_error("related chains must be non-empty and of equal length");
  }
  const std::size_t k = a_chain.size();
  std::vector<std::size_t> hypothesis_edges =
      check_ends(a_chain.back(), a_end, b_chain.back(), b_end, graph, order, coloring);
  for (std::size_t p = 0; p < k; ++p) {
    if (!same_direction(direction_of(a_chain[p], order), direction_of(b_chain[p], order))) {
      throw precondition_error("A_p and B_p differ in direction");
    }
  }
  for (std::size_t p = 0; p + 1 < k; ++p) {
    const auto ra = is_related(a_chain[p], a_chain[p + 1], graph, order, coloring);
    const auto rb = is_related(b_chain[p], b_chain[p + 1], graph, order, coloring);
    if (!ra || !rb) throw precondition_error("chain link " + std::to_string(p) + " not related");
    const auto la = matching_edges(a_chain[p], a_chain[p + 1], graph);
    const auto lb = matching_edges(b_chain[p], b_chain[p + 1], graph);
    hypothesis_edges.insert(hypothesis_edges.end(), la.begin(), la.end());
    hypothesis_edges.insert(hypothesis_edges.end(), lb.begin(), lb.end());
    if (ra->kind == RelatedKind::Bundled) {
      for (const auto* link : {&la, &lb}) {
        const bool is_a = link == &la;
        const auto& x = is_a ? a_chain : b_chain;
        if (!strongly_interleave(x[p], x[p + 1], order)) {
          if (auto hit = find_crossing(*link, graph, order, coloring)) return hit;
          throw lemma_violation("bundled link neither alternates nor crosses");
        }
      }
    } else {
      // Interleave transfers across a pair of same-coloured rainbows only.
      if (ra->color != rb->color) {
        throw precondition_error("rainbow links at step " + std::to_string(p) +
                                 " differ in colour");
      }
      std::vector<std::size_t> both = la;
      both.insert(both.end(), lb.begin(), lb.end());
      if (auto hit = find_crossing(both, graph, order, coloring)) return hit;
    }
  }

  if (auto hit = close_ends(a_chain.back(), a_end, b_chain.back(), b_end, graph, order,
                            coloring)) {
    return hit;
  }
  if (auto hit = find_crossing(hypothesis_edges, graph, order, coloring)) return hit;
  if (max_interleave(a_chain.front(), b_chain.front(), order) >
      related_chains_interleave_bound(static_cast<int>(k))) {
    throw lemma_violation("related chains interleave beyond the bound without a crossing");
  }
  return std::nullopt;
}

}  // namespace boxslash
