#include "boxslash/ramsey_passes.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "boxslash/errors.hpp"

namespace boxslash {

// ---------------------------------------------------------------------------
// Erdős–Szekeres

namespace {

// Indices of a longest strictly increasing subsequence.
std::vector<std::size_t> longest_increasing(const std::vector<long long>& values) {
  std::vector<std::size_t> tails;  // index of the smallest tail per length
  std::vector<std::size_t> prev(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = std::lower_bound(tails.begin(), tails.end(), values[i],
                               [&](std::size_t t, long long v) { return values[t] < v; });
    if (it != tails.begin()) prev[i] = *(it - 1);
    if (it == tails.end()) {
      tails.push_back(i);
    } else {
      *it = i;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::size_t i = tails.back(); i != values.size(); i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

void require_distinct_values(const std::vector<long long>& values) {
  std::vector<long long> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw input_error("values must be distinct");
  }
}

}  // namespace

std::optional<std::vector<long long>> es_monotone_subsequence(const std::vector<long long>& values,
                                                              int n) {
  if (n < 1) throw input_error("target length must be positive");
  require_distinct_values(values);
  std::vector<long long> negated(values.size());
  std::transform(values.begin(), values.end(), negated.begin(), [](long long v) { return -v; });
  const auto inc = longest_increasing(values);
  const auto dec = longest_increasing(negated);
  const auto& best = inc.size() >= dec.size() ? inc : dec;
  if (static_cast<int>(best.size()) < n) return std::nullopt;
  std::vector<long long> out;
  for (std::size_t i : best) out.push_back(values[i]);
  return out;
}

// ---------------------------------------------------------------------------
// LexArray

LexArray::LexArray(std::vector<int> sides, std::vector<long long> values)
    : sides_(std::move(sides)), values_(std::move(values)) {
  std::size_t total = 1;
  for (int s : sides_) {
    if (s < 1) throw input_error("array sides must be positive");
    total *= static_cast<std::size_t>(s);
  }
  if (total != values_.size()) throw input_error("array value count does not match its sides");
}

std::size_t LexArray::flat(const std::vector<int>& coords) const {
  if (coords.size() != sides_.size()) throw input_error("coordinate dimension mismatch");
  std::size_t f = 0;
  for (std::size_t a = 0; a < sides_.size(); ++a) {
    if (coords[a] < 0 || coords[a] >= sides_[a]) throw input_error("coordinate out of range");
    f = f * static_cast<std::size_t>(sides_[a]) + static_cast<std::size_t>(coords[a]);
  }
  return f;
}

std::vector<int> LexArray::coords(std::size_t flat) const {
  std::vector<int> c(sides_.size());
  for (std::size_t a = sides_.size(); a-- > 0;) {
    c[a] = static_cast<int>(flat % static_cast<std::size_t>(sides_[a]));
    flat /= static_cast<std::size_t>(sides_[a]);
  }
  return c;
}

long long LexArray::at(const std::vector<int>& coords) const { return values_[flat(coords)]; }

LexArray LexArray::sub(const std::vector<std::vector<int>>& index_sets) const {
  if (index_sets.size() != sides_.size()) throw input_error("index set dimension mismatch");
  std::vector<int> sides;
  for (const auto& set : index_sets) {
    if (set.empty()) throw input_error("empty index set");
    sides.push_back(static_cast<int>(set.size()));
  }
  std::size_t total = 1;
  for (int s : sides) total *= static_cast<std::size_t>(s);
  std::vector<long long> values(total);
  std::vector<int> local(sides.size()), global(sides.size());
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rest = f;
    for (std::size_t a = sides.size(); a-- > 0;) {
      local[a] = static_cast<int>(rest % static_cast<std::size_t>(sides[a]));
      rest /= static_cast<std::size_t>(sides[a]);
      global[a] = index_sets[a][static_cast<std::size_t>(local[a])];
    }
    values[f] = at(global);
  }
  return LexArray(std::move(sides), std::move(values));
}

Direction LexMonotoneWitness::axis_direction(int axis) const {
  for (std::size_t r = 0; r < sigma.size(); ++r) {
    if (sigma[r] == axis) return signs.at(r);
  }
  throw input_error("axis not in witness");
}

bool LexMonotoneWitness::identity_sigma() const {
  for (std::size_t r = 0; r < sigma.size(); ++r) {
    if (sigma[r] != static_cast<int>(r)) return false;
  }
  return true;
}

namespace {

// The rule itself, on the whole array.
bool lex_rule_holds(const LexArray& a, const std::vector<int>& sigma,
                    const std::vector<Direction>& signs) {
  const std::size_t total = a.size();
  std::vector<std::vector<int>> coords(total);
  for (std::size_t f = 0; f < total; ++f) coords[f] = a.coords(f);
  for (std::size_t x = 0; x < total; ++x) {
    for (std::size_t y = x + 1; y < total; ++y) {
      std::size_t r = 0;
      while (coords[x][static_cast<std::size_t>(sigma[r])] ==
             coords[y][static_cast<std::size_t>(sigma[r])]) {
        ++r;
      }
      const auto axis = static_cast<std::size_t>(sigma[r]);
      const bool coord_less = coords[x][axis] < coords[y][axis];
      const bool want_less = signs[r] == Direction::Inc ? coord_less : !coord_less;
      if ((a.values()[x] < a.values()[y]) != want_less) return false;
    }
  }
  return true;
}

std::vector<Direction> signs_from_mask(int dims, unsigned mask) {
  std::vector<Direction> s(static_cast<std::size_t>(dims));
  for (int r = 0; r < dims; ++r) s[static_cast<std::size_t>(r)] = (mask >> r) & 1u ? Direction::Dec : Direction::Inc;
  return s;
}

}  // namespace

bool verify_lex_monotone(const LexArray& array, const LexMonotoneWitness& witness) {
  const int d = array.dims();
  if (static_cast<int>(witness.sigma.size()) != d || static_cast<int>(witness.signs.size()) != d ||
      static_cast<int>(witness.index_sets.size()) != d) {
    return false;
  }
  std::vector<int> perm = witness.sigma;
  std::sort(perm.begin(), perm.end());
  for (int a = 0; a < d; ++a) {
    if (perm[static_cast<std::size_t>(a)] != a) return false;
  }
  for (Direction s : witness.signs) {
    if (s == Direction::Either) return false;
  }
  for (int a = 0; a < d; ++a) {
    const auto& set = witness.index_sets[static_cast<std::size_t>(a)];
    if (set.empty()) return false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] < 0 || set[i] >= array.sides()[static_cast<std::size_t>(a)]) return false;
      if (i > 0 && set[i - 1] >= set[i]) return false;
    }
  }
  return lex_rule_holds(array.sub(witness.index_sets), witness.sigma, witness.signs);
}

std::optional<LexMonotoneWitness> lex_order_of(const LexArray& array) {
  const int d = array.dims();
  std::vector<int> sigma(static_cast<std::size_t>(d));
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      auto signs = signs_from_mask(d, mask);
      if (lex_rule_holds(array, sigma, signs)) {
        LexMonotoneWitness w{sigma, std::move(signs), {}};
        for (int side : array.sides()) {
          std::vector<int> all(static_cast<std::size_t>(side));
          std::iota(all.begin(), all.end(), 0);
          w.index_sets.push_back(std::move(all));
        }
        return w;
      }
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

namespace {

// Calls visit(combo) for each size-k subset of [0, n) in lexicographic order
// until it returns true.
template <class Visit>
bool for_each_combination(int n, int k, Visit&& visit) {
  if (k > n || k < 0) return false;
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    if (visit(c)) return true;
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

class SubarraySearch {
 public:
  SubarraySearch(const LexArray& array, int n, std::uint64_t budget)
      : a_(array), n_(n), budget_(budget) {}

  bool exhausted() const { return nodes_ >= budget_; }

  // With sigma fixed: choose index sets for the lower-priority axes by
  // enumeration, then pick n slices along the leading axis whose value
  // ranges are strictly ordered (longest chain).
  std::optional<LexMonotoneWitness> run(const std::vector<int>& sigma,
                                        const std::vector<Direction>& signs) {
    sigma_ = sigma;
    signs_ = signs;
    sets_.assign(static_cast<std::size_t>(a_.dims()), {});
    result_.reset();
    choose(1);
    return result_;
  }

 private:
  bool choose(std::size_t rank) {
    if (exhausted()) return true;
    if (rank == sigma_.size()) return resolve_leading();
    const int axis = sigma_[rank];
    return for_each_combination(a_.sides()[static_cast<std::size_t>(axis)], n_,
                                [&](const std::vector<int>& combo) {
                                  sets_[static_cast<std::size_t>(axis)] = combo;
                                  return choose(rank + 1);
                                });
  }

  bool resolve_leading() {
    ++nodes_;
    const int lead = sigma_[0];
    const int side = a_.sides()[static_cast<std::size_t>(lead)];
    std::vector<int> lower_sigma;
    for (std::size_t r = 1; r < sigma_.size(); ++r) {
      lower_sigma.push_back(sigma_[r] < lead ? sigma_[r] : sigma_[r] - 1);
    }
    const std::vector<Direction> lower_signs(signs_.begin() + 1, signs_.end());

    struct Slice {
      int index;
      long long lo, hi;
    };
    std::vector<Slice> ok;
    for (int idx = 0; idx < side; ++idx) {
      auto sets = sets_;
      sets[static_cast<std::size_t>(lead)] = {idx};
      const LexArray slice = a_.sub(sets);
      // Drop the singleton leading axis.
      std::vector<int> sides;
      for (int ax = 0; ax < slice.dims(); ++ax) {
        if (ax != lead) sides.push_back(slice.sides()[static_cast<std::size_t>(ax)]);
      }
      const LexArray flat(sides, slice.values());
      if (!lex_rule_holds(flat, lower_sigma, lower_signs)) continue;
      const auto [mn, mx] = std::minmax_element(flat.values().begin(), flat.values().end());
      ok.push_back({idx, *mn, *mx});
    }
    // Longest chain of slices with ordered ranges, in index order.
    const bool inc = signs_[0] == Direction::Inc;
    std::vector<int> len(ok.size(), 1), prev(ok.size(), -1);
    int best = -1;
    for (std::size_t i = 0; i < ok.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const bool ordered = inc ? ok[j].hi < ok[i].lo : ok[j].lo > ok[i].hi;
        if (ordered && len[j] + 1 > len[i]) {
          len[i] = len[j] + 1;
          prev[i] = static_cast<int>(j);
        }
      }
      if (len[i] >= n_) {
        best = static_cast<int>(i);
        break;
      }
    }
    if (best < 0) return false;
    std::vector<int> chosen;
    for (int i = best; i >= 0 && static_cast<int>(chosen.size()) < n_; i = prev[static_cast<std::size_t>(i)]) {
      chosen.push_back(ok[static_cast<std::size_t>(i)].index);
    }
    std::reverse(chosen.begin(), chosen.end());
    LexMonotoneWitness w{sigma_, signs_, sets_};
    w.index_sets[static_cast<std::size_t>(lead)] = chosen;
    result_ = std::move(w);
    return true;
  }

  const LexArray& a_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_{0};
  std::vector<int> sigma_;
  std::vector<Direction> signs_;
  std::vector<std::vector<int>> sets_;
  std::optional<LexMonotoneWitness> result_;
};

}  // namespace

std::optional<LexMonotoneWitness> lex_monotone_subarray(const LexArray& array, int n,
                                                        const LexSearchOptions& options) {
  const int d = array.dims();
  if (d < 1) throw input_error("array must have at least one axis");
  if (n < 1) throw input_error("target side must be positive");
  if (d > options.max_dims) throw size_error("lex-monotone search limited to " + std::to_string(options.max_dims) + " dimensions");
  for (int s : array.sides()) {
    if (s > options.max_side) throw size_error("lex-monotone search limited to side " + std::to_string(options.max_side));
  }
  require_distinct_values(array.values());
  for (int s : array.sides()) {
    if (s < n) return std::nullopt;
  }

  std::optional<LexMonotoneWitness> found;
  if (d == 1) {
    if (auto seq = es_monotone_subsequence(array.values(), n)) {
      std::vector<int> idx;
      for (long long v : *seq) {
        idx.push_back(static_cast<int>(
            std::find(array.values().begin(), array.values().end(), v) - array.values().begin()));
      }
      idx.resize(static_cast<std::size_t>(n));
      const Direction dir = n < 2 || (*seq)[0] < (*seq)[1] ? Direction::Inc : Direction::Dec;
      found = LexMonotoneWitness{{0}, {dir}, {idx}};
    }
  } else {
    SubarraySearch search(array, n, options.node_budget);
    std::vector<int> sigma(static_cast<std::size_t>(d));
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1u << d) && !found && !search.exhausted(); ++mask) {
        found = search.run(sigma, signs_from_mask(d, mask));
      }
    } while (!found && !search.exhausted() && std::next_permutation(sigma.begin(), sigma.end()));
  }
  if (found && !verify_lex_monotone(array, *found)) {
    throw lemma_violation("lex-monotone search produced an invalid witness");
  }
  return found;
}

// ---------------------------------------------------------------------------
// Instances

LayoutInstance LayoutInstance::make(ProductGraph graph, LinearOrder order, EdgeColoring coloring) {
  if (order.size() != graph.vertex_count()) throw input_error("order does not cover the graph");
  coloring.check(graph.graph());
  std::vector<NodeIndex> origin = graph.tree().nodes();
  return LayoutInstance{std::move(graph), std::move(order), std::move(coloring), std::move(origin)};
}

LayoutInstance restrict_instance(const LayoutInstance& instance, const ChildSelection& keep) {
  Restriction r = restrict_subtree(instance.graph, keep);
  const Graph& g = r.graph.graph();

  std::vector<Vertex> seq(g.vertex_count());
  std::iota(seq.begin(), seq.end(), Vertex{0});
  std::sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) {
    return instance.order.rank(r.new_to_old[a]) < instance.order.rank(r.new_to_old[b]);
  });

  EdgeColoring coloring;
  coloring.k = instance.coloring.k;
  for (const Edge& e : g.edges()) {
    const auto old = instance.graph.graph().find_edge(r.new_to_old[e.u], r.new_to_old[e.v]);
    coloring.colors.push_back(instance.coloring.colors.at(*old));
  }

  std::vector<NodeIndex> origin(r.graph.tree().size());
  for (const auto& [old_node, new_node] : r.node_map) {
    origin[*r.graph.tree().id_of(new_node)] =
        instance.origin.at(*instance.graph.tree().id_of(old_node));
  }
  return LayoutInstance{std::move(r.graph), LinearOrder::from_sequence(std::move(seq)),
                        std::move(coloring), std::move(origin)};
}

std::optional<ColorTable> color_table(const ProductGraph& graph, const EdgeColoring& coloring) {
  ColorTable table;
  const Graph& g = graph.graph();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const PVertex& a = graph.pvertex(g.edge(e).u);
    const PVertex& b = graph.pvertex(g.edge(e).v);
    const ColorKey key{std::max(a.node.depth(), b.node.depth()), std::min(a.pos, b.pos),
                       graph.kind(e)};
    const int c = coloring.colors.at(e);
    auto [it, inserted] = table.emplace(key, c);
    if (!inserted && it->second != c) return std::nullopt;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Passes

namespace {

std::vector<NodeIndex> nodes_at_depth(const Tree& tree, int depth) {
  std::vector<NodeIndex> out;
  for (const NodeIndex& node : tree.nodes()) {
    if (node.depth() == depth) out.push_back(node);
  }
  return out;
}

NodeIndex prefix(const NodeIndex& node, int len) {
  return NodeIndex(std::vector<int>(node.path.begin(), node.path.begin() + len));
}

std::vector<int> suffix(const NodeIndex& node, int from) {
  return std::vector<int>(node.path.begin() + from, node.path.end());
}

void check_targets(const ProductGraph& graph, const std::vector<int>& targets) {
  const auto& degrees = graph.spec().degrees;
  if (targets.size() != degrees.size()) {
    throw input_error("need one target degree per level (" + std::to_string(degrees.size()) +
                      "), got " + std::to_string(targets.size()));
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0) throw input_error("target degrees must be non-negative");
    if (targets[i] > degrees[i]) {
      throw pass_failure(static_cast<int>(i), "target " + std::to_string(targets[i]) +
                                                  " exceeds current degree " +
                                                  std::to_string(degrees[i]));
    }
  }
}

// Buckets children by signature and keeps, per node, the first `target`
// children of its largest bucket (ties: smallest child list). A target of 0
// keeps as many as every node at the level can afford.
template <class Signature>
ChildSelection bucket_children(const std::map<std::pair<NodeIndex, int>, Signature>& sigs,
                               const std::vector<NodeIndex>& parents, int degree, int level,
                               int target, const char* what) {
  std::map<NodeIndex, std::vector<int>> best;
  int afford = degree;
  for (const NodeIndex& parent : parents) {
    std::map<Signature, std::vector<int>> buckets;
    for (int c = 1; c <= degree; ++c) {
      auto it = sigs.find({parent, c});
      buckets[it == sigs.end() ? Signature{} : it->second].push_back(c);
    }
    const std::vector<int>* pick = nullptr;
    for (const auto& [sig, kids] : buckets) {
      if (!pick || kids.size() > pick->size() || (kids.size() == pick->size() && kids < *pick)) {
        pick = &kids;
      }
    }
    best[parent] = *pick;
    afford = std::min(afford, static_cast<int>(pick->size()));
    if (target > 0 && static_cast<int>(pick->size()) < target) {
      throw pass_failure(level, std::string("largest ") + what + " bucket at node " +
                                    parent.str() + " has " + std::to_string(pick->size()) +
                                    " of " + std::to_string(degree) + " children, need " +
                                    std::to_string(target));
    }
  }
  const int keep = target > 0 ? target : afford;
  ChildSelection selection;
  for (auto& [parent, kids] : best) {
    kids.resize(static_cast<std::size_t>(keep));
    selection[parent] = std::move(kids);
  }
  return selection;
}

// Edge key inside E_{A,c}: kind, whether it is a parent edge, the address
// of the deeper endpoint below A+c, and the smaller path position.
struct EdgeSlot {
  EdgeKind kind;
  bool parent_edge;
  std::vector<int> below;
  int pos;
  friend auto operator<=>(const EdgeSlot&, const EdgeSlot&) = default;
};

ChildSelection colour_selection(const LayoutInstance& inst, int level, int target) {
  const ProductGraph& pg = inst.graph;
  const Graph& g = pg.graph();
  std::map<std::pair<NodeIndex, int>, std::map<EdgeSlot, int>> slots;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const PVertex& a = pg.pvertex(g.edge(e).u);
    const PVertex& b = pg.pvertex(g.edge(e).v);
    const NodeIndex& deep = a.node.depth() >= b.node.depth() ? a.node : b.node;
    const NodeIndex& shallow = a.node.depth() >= b.node.depth() ? b.node : a.node;
    const int pos = std::min(a.pos, b.pos);
    const int c = inst.coloring.colors[e];
    if (shallow.depth() >= level + 1) {
      slots[{prefix(shallow, level), shallow.path[static_cast<std::size_t>(level)]}]
           [{pg.kind(e), false, suffix(deep, level + 1), pos}] = c;
    } else if (shallow.depth() == level && deep.depth() == level + 1) {
      slots[{shallow, deep.path.back()}][{pg.kind(e), true, {}, pos}] = c;
    }
  }
  std::map<std::pair<NodeIndex, int>, std::vector<int>> sigs;
  for (const auto& [key, m] : slots) {
    auto& sig = sigs[key];
    for (const auto& [slot, colour] : m) sig.push_back(colour);
  }
  return bucket_children(sigs, nodes_at_depth(pg.tree(), level),
                         pg.spec().degrees[static_cast<std::size_t>(level)], level, target,
                         "colour");
}

using OrderSignature = std::vector<std::pair<std::vector<int>, int>>;

ChildSelection order_selection(const LayoutInstance& inst, int level, int target) {
  const ProductGraph& pg = inst.graph;
  std::map<std::pair<NodeIndex, int>, std::vector<std::pair<std::size_t, std::pair<std::vector<int>, int>>>> ranked;
  for (Vertex v = 0; v < pg.vertex_count(); ++v) {
    const PVertex& pv = pg.pvertex(v);
    if (pv.node.depth() < level + 1) continue;
    ranked[{prefix(pv.node, level), pv.node.path[static_cast<std::size_t>(level)]}].push_back(
        {inst.order.rank(v), {suffix(pv.node, level + 1), pv.pos}});
  }
  std::map<std::pair<NodeIndex, int>, OrderSignature> sigs;
  for (auto& [key, items] : ranked) {
    std::sort(items.begin(), items.end());
    auto& sig = sigs[key];
    for (auto& item : items) sig.push_back(std::move(item.second));
  }
  return bucket_children(sigs, nodes_at_depth(pg.tree(), level),
                         pg.spec().degrees[static_cast<std::size_t>(level)], level, target,
                         "order");
}

template <class Select>
LayoutInstance bottom_up(const LayoutInstance& instance, const std::vector<int>& targets,
                         Select&& select) {
  check_targets(instance.graph, targets);
  LayoutInstance cur = instance;
  for (int level = instance.graph.spec().height() - 1; level >= 0; --level) {
    const ChildSelection keep = select(cur, level, targets[static_cast<std::size_t>(level)]);
    cur = restrict_instance(cur, keep);
  }
  return cur;
}

}  // namespace

ColourPassResult pass_colour(const LayoutInstance& instance, const std::vector<int>& targets) {
  ColourPassResult out;
  out.instance = bottom_up(instance, targets, colour_selection);
  out.degrees = out.instance.graph.spec().degrees;
  auto table = color_table(out.instance.graph, out.instance.coloring);
  if (!table) throw lemma_violation("colour pass left a colouring that is not determined by (depth, position, kind)");
  out.table = std::move(*table);
  return out;
}

OrderPassResult pass_order(const LayoutInstance& instance, const std::vector<int>& targets) {
  OrderPassResult out;
  out.instance = bottom_up(instance, targets, order_selection);
  out.degrees = out.instance.graph.spec().degrees;
  out.transfer = verify_order_transfer(out.instance);
  if (!out.transfer.ok()) {
    throw lemma_violation("order pass left a violation: " + out.transfer.violations.front());
  }
  return out;
}

CheckReport verify_order_transfer(const LayoutInstance& instance) {
  CheckReport report;
  const ProductGraph& pg = instance.graph;
  const int m = pg.path_len();
  for (int len = 1; len <= pg.spec().height(); ++len) {
    const auto bases = nodes_at_depth(pg.tree(), len);
    // Descendant suffixes X (including the empty one) common to all bases.
    std::vector<std::vector<int>> below;
    for (const NodeIndex& node : pg.tree().nodes()) {
      if (node.depth() >= len && prefix(node, len) == bases.front()) below.push_back(suffix(node, len));
    }
    auto sorted_items = [&](const NodeIndex& base) {
      std::vector<std::pair<std::size_t, std::pair<std::vector<int>, int>>> items;
      for (const auto& x : below) {
        NodeIndex node = base;
        node.path.insert(node.path.end(), x.begin(), x.end());
        for (int p = 1; p <= m; ++p) {
          items.push_back({instance.order.rank(pg.vertex({node, p})), {x, p}});
        }
      }
      std::sort(items.begin(), items.end());
      return items;
    };
    const auto reference = sorted_items(bases.front());
    const std::size_t pairs = reference.size() * (reference.size() - 1) / 2;
    for (std::size_t b = 1; b < bases.size(); ++b) {
      const auto items = sorted_items(bases[b]);
      report.checked += pairs;
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (items[k].second != reference[k].second) {
          auto show = [](const std::pair<std::vector<int>, int>& xi) {
            return "(" + NodeIndex(xi.first).str() + "," + std::to_string(xi.second) + ")";
          };
          report.fail("suffixes " + show(reference[k].second) + " and " + show(items[k].second) +
                      " compare differently under " + bases.front().str() + " and " +
                      bases[b].str());
          break;
        }
      }
    }
  }
  return report;
}

namespace {

LexArray level_array(const LayoutInstance& inst, int len, int pos,
                     const std::vector<int>& last_axis) {
  const ProductGraph& pg = inst.graph;
  std::vector<int> sides(pg.spec().degrees.begin(), pg.spec().degrees.begin() + len);
  sides.back() = static_cast<int>(last_axis.size());
  std::size_t total = 1;
  for (int s : sides) total *= static_cast<std::size_t>(s);
  std::vector<long long> values(total);
  LexArray shape(sides, std::vector<long long>(total, 0));
  for (std::size_t f = 0; f < total; ++f) {
    std::vector<int> c = shape.coords(f);
    NodeIndex node;
    for (int a = 0; a < len; ++a) {
      const int idx = c[static_cast<std::size_t>(a)];
      node.path.push_back(a == len - 1 ? last_axis[static_cast<std::size_t>(idx)] + 1 : idx + 1);
    }
    values[f] = static_cast<long long>(inst.order.rank(pg.vertex({node, pos})));
  }
  return LexArray(std::move(sides), std::move(values));
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

LexPassResult pass_lex(const LayoutInstance& instance, const std::vector<int>& targets) {
  check_targets(instance.graph, targets);
  LayoutInstance cur = instance;
  const int n = instance.graph.spec().height();
  const int m = instance.graph.path_len();
  for (int len = 1; len <= n; ++len) {
    const int degree = cur.graph.spec().degrees[static_cast<std::size_t>(len - 1)];
    const int target = targets[static_cast<std::size_t>(len - 1)] > 0
                           ? targets[static_cast<std::size_t>(len - 1)]
                           : degree;
    std::optional<std::vector<int>> chosen;
    std::uint64_t tried = 0;
    for_each_combination(degree, target, [&](const std::vector<int>& combo) {
      if (++tried > 2'000'000) throw size_error("lex pass: too many child subsets at level " + std::to_string(len - 1));
      for (int p = 1; p <= m; ++p) {
        if (!lex_order_of(level_array(cur, len, p, combo))) return false;
      }
      chosen = combo;
      return true;
    });
    if (!chosen) {
      throw pass_failure(len - 1, "no " + std::to_string(target) + "-subset of children makes every length-" +
                                      std::to_string(len) + " array lex-monotone");
    }
    if (static_cast<int>(chosen->size()) < degree) {
      ChildSelection keep;
      std::vector<int> kids;
      for (int c : *chosen) kids.push_back(c + 1);
      for (const NodeIndex& parent : nodes_at_depth(cur.graph.tree(), len - 1)) keep[parent] = kids;
      cur = restrict_instance(cur, keep);
    }
  }

  LexPassResult out;
  for (int len = 1; len <= n; ++len) {
    for (int p = 1; p <= m; ++p) {
      const int side = cur.graph.spec().degrees[static_cast<std::size_t>(len - 1)];
      const LexArray array = level_array(cur, len, p, iota_vec(side));
      auto w = lex_order_of(array);
      if (!w || !verify_lex_monotone(array, *w)) {
        throw lemma_violation("lex pass: array at length " + std::to_string(len) + ", position " +
                              std::to_string(p) + " is no longer lex-monotone");
      }
      out.arrays.push_back({len, p, std::move(*w)});
    }
  }
  out.degrees = cur.graph.spec().degrees;
  out.instance = std::move(cur);
  return out;
}

// ---------------------------------------------------------------------------
// Z table

ZTable::ZTable(int n, int m, Direction fill) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw input_error("Z table needs n, m >= 1");
  cells_.assign(static_cast<std::size_t>(n * n * m), fill);
}

bool ZTable::contains(int i, int j, int p) const noexcept {
  return 1 <= i && i <= j && j <= n_ && 1 <= p && p <= m_;
}

std::size_t ZTable::index(int i, int j, int p) const {
  if (!contains(i, j, p)) {
    throw input_error("Z(" + std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(p) + ") is outside the table");
  }
  return static_cast<std::size_t>(((i - 1) * n_ + (j - 1)) * m_ + (p - 1));
}

Direction ZTable::at(int i, int j, int p) const { return cells_[index(i, j, p)]; }

void ZTable::set(int i, int j, int p, Direction d) {
  if (d == Direction::Either) throw input_error("Z entries are INC or DEC");
  cells_[index(i, j, p)] = d;
}

ZTable extract_Z(const LayoutInstance& instance) {
  const ProductGraph& pg = instance.graph;
  const int n = pg.spec().height();
  const int m = pg.path_len();
  ZTable z(n, m);
  for (int j = 1; j <= n; ++j) {
    const auto nodes = nodes_at_depth(pg.tree(), j);
    for (int i = 1; i <= j; ++i) {
      const int d = pg.spec().degrees[static_cast<std::size_t>(i - 1)];
      for (int p = 1; p <= m; ++p) {
        std::optional<Direction> dir;
        std::string first_witness;
        for (const NodeIndex& base : nodes) {
          if (base.path[static_cast<std::size_t>(i - 1)] != 1) continue;
          VertexSequence seq;
          NodeIndex node = base;
          for (int c = 1; c <= d; ++c) {
            node.path[static_cast<std::size_t>(i - 1)] = c;
            seq.push_back(pg.vertex({node, p}));
          }
          const auto got = is_monotone(seq, instance.order);
          if (!got) {
            throw inconsistency_error("sequence through " + base.str() + " at position " +
                                      std::to_string(p) + ", coordinate " + std::to_string(i) +
                                      " is not monotone");
          }
          if (*got == Direction::Either) continue;
          if (dir && *dir != *got) {
            throw inconsistency_error("Z(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(p) + "): " + first_witness + " is " +
                                      to_string(*dir) + " but " + base.str() + " is " +
                                      to_string(*got));
          }
          if (!dir) first_witness = base.str();
          dir = got;
        }
        if (!dir) {
          throw precondition_error("Z(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(p) + ") undetermined: level " +
                                   std::to_string(i - 1) + " has a single child");
        }
        z.set(i, j, p, *dir);
      }
    }
  }
  return z;
}

namespace {

// Same depth and position assumed.
bool z_less(const NodeIndex& a, const NodeIndex& b, int pos, const ZTable& z) {
  std::size_t i = 0;
  while (a.path[i] == b.path[i]) ++i;
  const bool coord_less = a.path[i] < b.path[i];
  return z.at(static_cast<int>(i) + 1, a.depth(), pos) == Direction::Inc ? coord_less : !coord_less;
}

}  // namespace

LinearOrder lex_structured_order(const ProductGraph& graph, const ZTable& z) {
  if (z.n() != graph.spec().height() || z.m() != graph.path_len()) {
    throw input_error("Z table shape does not match the graph");
  }
  std::vector<Vertex> seq(graph.vertex_count());
  std::iota(seq.begin(), seq.end(), Vertex{0});
  std::sort(seq.begin(), seq.end(), [&](Vertex x, Vertex y) {
    const PVertex& a = graph.pvertex(x);
    const PVertex& b = graph.pvertex(y);
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.node.depth() != b.node.depth()) return a.node.depth() < b.node.depth();
    if (a.node == b.node) return false;
    return z_less(a.node, b.node, a.pos, z);
  });
  return LinearOrder::from_sequence(std::move(seq));
}

CheckReport check_identity_permutation(const LayoutInstance& instance) {
  CheckReport report;
  ZTable z;
  try {
    z = extract_Z(instance);
  } catch (const std::runtime_error& e) {
    report.fail(std::string("Z table unavailable: ") + e.what());
    return report;
  }
  const ProductGraph& pg = instance.graph;
  constexpr std::size_t kMaxListed = 50;
  std::size_t failures = 0;
  for (int len = 1; len <= pg.spec().height(); ++len) {
    const auto nodes = nodes_at_depth(pg.tree(), len);
    for (int p = 1; p <= pg.path_len(); ++p) {
      for (std::size_t x = 0; x < nodes.size(); ++x) {
        for (std::size_t y = x + 1; y < nodes.size(); ++y) {
          ++report.checked;
          const bool actual = instance.order.less(pg.vertex({nodes[x], p}), pg.vertex({nodes[y], p}));
          if (actual == z_less(nodes[x], nodes[y], p, z)) continue;
          if (++failures <= kMaxListed) {
            report.fail("(" + nodes[x].str() + "," + std::to_string(p) + ") vs (" +
                        nodes[y].str() + "," + std::to_string(p) +
                        ") not decided by the first differing coordinate");
          }
        }
      }
    }
  }
  if (failures > kMaxListed) {
    report.fail(std::to_string(failures - kMaxListed) + " further violations not listed");
  }
  return report;
}

CheckReport check_z_consistency(const ZTable& z) {
  CheckReport report;
  auto tag = [](char which, int k, int i, int p) {
    return std::string("(") + which + ") k=" + std::to_string(k) + " i=" + std::to_string(i) +
           " p=" + std::to_string(p);
  };
  for (int p = 1; p <= z.m(); ++p) {
    for (int k = 2; k <= z.n(); ++k) {
      for (int i = k; i <= z.n(); ++i) {
        if (i + 1 <= z.n()) {
          ++report.checked;
          if (z.at(k, i + 1, p) == z.at(k, i, p) && z.at(k - 1, i + 1, p) != z.at(k - 1, i, p)) {
            report.fail(tag('a', k, i, p));
          }
        }
        if (i + 1 <= z.n() && p + 1 <= z.m()) {
          ++report.checked;
          if (z.at(k, i + 1, p) == z.at(k, i, p + 1) &&
              z.at(k - 1, i + 1, p) != z.at(k - 1, i, p + 1)) {
            report.fail(tag('b', k, i, p));
          }
        }
        if (p + 1 <= z.m()) {
          ++report.checked;
          if (z.at(k, i, p) == z.at(k, i, p + 1) && z.at(k - 1, i, p) != z.at(k - 1, i, p + 1)) {
            report.fail(tag('c', k, i, p));
          }
        }
      }
    }
  }
  return report;
}

CheckReport check_main_related(const LayoutInstance& instance) {
  CheckReport report;
  const ProductGraph& pg = instance.graph;
  const auto table = color_table(pg, instance.coloring);
  if (!table) {
    report.fail("colouring is not determined by (depth, position, kind)");
    return report;
  }
  const int n = pg.spec().height();
  const int m = pg.path_len();

  // The *-sequence through base with the star at coordinate a, optionally
  // extended by v, at position p.
  auto star = [&](const NodeIndex& base, int a, int v, int p) {
    VertexSequence seq;
    NodeIndex node = base;
    if (v > 0) node.path.push_back(v);
    for (int c = 1; c <= pg.spec().degrees[static_cast<std::size_t>(a)]; ++c) {
      node.path[static_cast<std::size_t>(a)] = c;
      seq.push_back(pg.vertex({node, p}));
    }
    return seq;
  };
  auto expect = [&](const VertexSequence& s1, const VertexSequence& s2, ColorKey key,
                    const std::string& label) {
    ++report.checked;
    const auto rel = is_related(s1, s2, pg.graph(), instance.order, instance.coloring);
    if (!rel) {
      report.fail(label + ": not related");
    } else if (rel->color != table->at(key)) {
      report.fail(label + ": colour " + std::to_string(rel->color) + ", table says " +
                  std::to_string(table->at(key)));
    }
  };

  for (int len = 1; len <= n; ++len) {  // len = |A| + 1 + |Y|
    for (const NodeIndex& base : nodes_at_depth(pg.tree(), len)) {
      for (int a = 0; a < len; ++a) {
        if (base.path[static_cast<std::size_t>(a)] != 1) continue;
        std::string where = base.str() + " star@" + std::to_string(a + 1);
        for (int p = 1; p <= m; ++p) {
          if (len < n) {
            for (int v = 1; v <= pg.spec().degrees[static_cast<std::size_t>(len)]; ++v) {
              expect(star(base, a, v, p), star(base, a, 0, p), {len + 1, p, EdgeKind::Vertical},
                     "vertical " + where + "+" + std::to_string(v) + " p=" + std::to_string(p));
              if (p < m) {
                expect(star(base, a, v, p), star(base, a, 0, p + 1),
                       {len + 1, p, EdgeKind::Diagonal},
                       "diagonal " + where + "+" + std::to_string(v) + " p=" + std::to_string(p));
              }
            }
          }
          if (p < m) {
            expect(star(base, a, 0, p), star(base, a, 0, p + 1), {len, p, EdgeKind::Horizontal},
                   "horizontal " + where + " p=" + std::to_string(p));
          }
        }
      }
    }
  }
  return report;
}

PipelineResult run_passes(const LayoutInstance& instance, const std::vector<int>& targets) {
  const std::vector<int> keep_max(targets.size(), 0);
  ColourPassResult colour = pass_colour(instance, keep_max);
  OrderPassResult order = pass_order(colour.instance, keep_max);
  LexPassResult lex = pass_lex(order.instance, targets);

  PipelineResult out;
  out.instance = std::move(lex.instance);
  out.arrays = std::move(lex.arrays);
  auto table = color_table(out.instance.graph, out.instance.coloring);
  if (!table) throw lemma_violation("colour uniformity lost after later passes");
  out.table = std::move(*table);
  out.transfer = verify_order_transfer(out.instance);
  out.z = extract_Z(out.instance);
  out.identity = check_identity_permutation(out.instance);
  out.consistency = check_z_consistency(out.z);
  out.related = check_main_related(out.instance);
  return out;
}

}  // namespace boxslash
