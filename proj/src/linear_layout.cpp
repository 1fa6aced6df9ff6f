#include "boxslash/linear_layout.hpp"

#include <algorithm>
#include <numeric>

#include "boxslash/errors.hpp"

namespace boxslash {

//
// LinearOrder / EdgeColoring
//

LinearOrder LinearOrder::from_sequence(std::vector<Vertex> seq) {
  LinearOrder out;
  out.rank_.assign(seq.size(), seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Vertex v = seq[k];
    if (v >= seq.size() || out.rank_[v] != seq.size()) {
      throw input_error("linear order is not a permutation of the vertex set");
    }
    out.rank_[v] = k;
  }
  out.sequence_ = std::move(seq);
  return out;
}

LinearOrder LinearOrder::identity(std::size_t n) {
  std::vector<Vertex> seq(n);
  std::iota(seq.begin(), seq.end(), Vertex{0});
  return from_sequence(std::move(seq));
}

LinearOrder LinearOrder::reversed() const {
  return from_sequence(std::vector<Vertex>(sequence_.rbegin(), sequence_.rend()));
}

void EdgeColoring::check(const Graph& graph) const {
  if (colors.size() != graph.edge_count()) {
    throw input_error("colouring covers " + std::to_string(colors.size()) + " of " +
                      std::to_string(graph.edge_count()) + " edges");
  }
  for (int c : colors) {
    if (c < 0 || c >= k) {
      throw input_error("colour " + std::to_string(c) + " outside [0, " + std::to_string(k) +
                        ")");
    }
  }
}

//
// Pair relations and validation
//

const char* to_string(PairRelation rel) noexcept {
  switch (rel) {
    case PairRelation::Separated: return "separated";
    case PairRelation::Nest: return "nest";
    case PairRelation::Cross: return "cross";
    case PairRelation::SharesEndpoint: return "shares_endpoint";
  }
  return "?";
}

PairRelation classify_pair(const Edge& e1, const Edge& e2, const LinearOrder& order) {
  if (e1.u == e1.v || e2.u == e2.v) throw input_error("classify_pair: self-loop");
  if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) {
    return PairRelation::SharesEndpoint;
  }
  auto a = order.rank(e1.u), b = order.rank(e1.v);
  auto c = order.rank(e2.u), d = order.rank(e2.v);
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) {
    std::swap(a, c);
    std::swap(b, d);
  }
  // a is now the leftmost endpoint.
  if (b < c) return PairRelation::Separated;
  if (d < b) return PairRelation::Nest;
  return PairRelation::Cross;
}

namespace {

LayoutReport validate(const Graph& graph, const LinearOrder& order,
                      const EdgeColoring& coloring, PairRelation forbidden) {
  coloring.check(graph);
  if (order.size() != graph.vertex_count()) {
    throw input_error("order size does not match vertex count");
  }
  LayoutReport report;
  const auto& edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (coloring.colors[i] != coloring.colors[j]) continue;
      if (classify_pair(edges[i], edges[j], order) == forbidden) {
        report.violations.push_back({i, j, forbidden, coloring.colors[i]});
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

}  // namespace

LayoutReport validate_stack_layout(const Graph& graph, const LinearOrder& order,
                                   const EdgeColoring& coloring) {
  return validate(graph, order, coloring, PairRelation::Cross);
}

LayoutReport validate_queue_layout(const Graph& graph, const LinearOrder& order,
                                   const EdgeColoring& coloring) {
  return validate(graph, order, coloring, PairRelation::Nest);
}

//
// Product order and the 3-queue layout
//

bool product_order_less(const PVertex& a, const PVertex& b) {
  if (a.pos != b.pos) return a.pos < b.pos;
  if (a.node.depth() != b.node.depth()) return a.node.depth() < b.node.depth();
  return a.node.path < b.node.path;
}

LinearOrder product_order(const ProductGraph& graph) {
  std::vector<Vertex> seq(graph.vertex_count());
  std::iota(seq.begin(), seq.end(), Vertex{0});
  std::sort(seq.begin(), seq.end(), [&](Vertex a, Vertex b) {
    return product_order_less(graph.pvertex(a), graph.pvertex(b));
  });
  return LinearOrder::from_sequence(std::move(seq));
}

Layout three_queue_layout(const ProductGraph& graph) {
  Layout out{product_order(graph), {}};
  out.coloring.k = 3;
  out.coloring.colors.reserve(graph.edge_count());
  for (EdgeKind kind : graph.kinds()) out.coloring.colors.push_back(static_cast<int>(kind));
  return out;
}

//
// Conflict graphs and colouring
//

std::vector<std::vector<std::size_t>> conflict_graph(const Graph& graph,
                                                     const LinearOrder& order,
                                                     PairRelation relation) {
  const auto& edges = graph.edges();
  std::vector<std::vector<std::size_t>> adj(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (classify_pair(edges[i], edges[j], order) == relation) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  return adj;
}

namespace {

class DsaturSearch {
 public:
  DsaturSearch(const std::vector<std::vector<std::size_t>>& adj, int k, std::uint64_t* nodes)
      : adj_(adj), k_(k), nodes_(nodes), color_(adj.size(), -1),
        forbidden_(adj.size(), std::vector<int>(static_cast<std::size_t>(std::max(k, 0)), 0)),
        saturation_(adj.size(), 0) {}

  std::optional<std::vector<int>> run() {
    if (adj_.empty()) return color_;
    if (k_ <= 0) return std::nullopt;
    if (!extend(0)) return std::nullopt;
    return color_;
  }

 private:
  std::size_t pick() const {
    std::size_t best = adj_.size();
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (color_[v] >= 0) continue;
      if (best == adj_.size() || saturation_[v] > saturation_[best] ||
          (saturation_[v] == saturation_[best] && adj_[v].size() > adj_[best].size())) {
        best = v;
      }
    }
    return best;
  }

  void assign(std::size_t v, int c, int delta) {
    color_[v] = delta > 0 ? c : -1;
    for (std::size_t w : adj_[v]) {
      int& f = forbidden_[w][c];
      if (delta > 0 && f++ == 0) ++saturation_[w];
      if (delta < 0 && --f == 0) --saturation_[w];
    }
  }

  bool extend(std::size_t colored) {
    if (colored == adj_.size()) return true;
    if (nodes_) ++*nodes_;
    const std::size_t v = pick();
    // Colours above the highest used so far are interchangeable; try only one.
    int used = 0;
    for (int c : color_) used = std::max(used, c + 1);
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (forbidden_[v][c]) continue;
      assign(v, c, +1);
      if (extend(colored + 1)) return true;
      assign(v, c, -1);
    }
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  int k_;
  std::uint64_t* nodes_;
  std::vector<int> color_;
  std::vector<std::vector<int>> forbidden_;
  std::vector<int> saturation_;
};

std::vector<std::vector<std::size_t>> components(
    const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> seen(adj.size(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (std::size_t w : adj[comp[i]]) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<int> greedy_color(const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<int> color(adj.size(), -1);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    std::vector<char> used(adj.size() + 1, 0);
    for (std::size_t w : adj[v]) {
      if (color[w] >= 0) used[static_cast<std::size_t>(color[w])] = 1;
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
  }
  return color;
}

}  // namespace

std::optional<std::vector<int>> k_color(const std::vector<std::vector<std::size_t>>& adjacency,
                                        int k, std::uint64_t* nodes) {
  return DsaturSearch(adjacency, k, nodes).run();
}

ColorCount stack_pages_for_order(const Graph& graph, const LinearOrder& order,
                                 std::size_t exact_limit) {
  const auto adj = conflict_graph(graph, order, PairRelation::Cross);
  ColorCount out;
  out.coloring.colors.assign(graph.edge_count(), 0);
  for (const auto& comp : components(adj)) {
    // Relabel the component onto 0..size-1.
    std::vector<std::vector<std::size_t>> local(comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (std::size_t w : adj[comp[i]]) {
        local[i].push_back(static_cast<std::size_t>(
            std::lower_bound(comp.begin(), comp.end(), w) - comp.begin()));
      }
    }
    std::vector<int> colors;
    if (comp.size() <= exact_limit) {
      for (int k = 1;; ++k) {
        if (auto found = k_color(local, k)) {
          colors = std::move(*found);
          break;
        }
      }
    } else {
      colors = greedy_color(local);
      out.exact = false;
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      out.coloring.colors[comp[i]] = colors[i];
      out.count = std::max(out.count, colors[i] + 1);
    }
  }
  out.coloring.k = out.count;
  return out;
}

ColorCount queues_for_order(const Graph& graph, const LinearOrder& order) {
  const auto& edges = graph.edges();
  struct Span {
    std::size_t lo, hi, index;
  };
  std::vector<Span> spans;
  spans.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto a = order.rank(edges[i].u), b = order.rank(edges[i].v);
    if (a > b) std::swap(a, b);
    spans.push_back({a, b, i});
  }
  // An edge nested inside another has strictly smaller span, so processing
  // by span length sees every inner edge first.
  std::sort(spans.begin(), spans.end(), [](const Span& x, const Span& y) {
    return x.hi - x.lo < y.hi - y.lo;
  });
  ColorCount out;
  out.coloring.colors.assign(edges.size(), 0);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    int depth = 0;
    for (std::size_t j = 0; j < i; ++j) {
      if (spans[i].lo < spans[j].lo && spans[j].hi < spans[i].hi) {
        depth = std::max(depth, out.coloring.colors[spans[j].index] + 1);
      }
    }
    out.coloring.colors[spans[i].index] = depth;
    out.count = std::max(out.count, depth + 1);
  }
  out.coloring.k = out.count;
  return out;
}

std::vector<std::size_t> max_rainbow(const Graph& graph, const LinearOrder& order) {
  const auto depth = queues_for_order(graph, order);
  if (depth.count == 0) return {};
  // Follow depth down from an outermost edge of maximum depth.
  const auto& edges = graph.edges();
  auto span = [&](std::size_t i) {
    auto a = order.rank(edges[i].u), b = order.rank(edges[i].v);
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  std::vector<std::size_t> chain;
  std::size_t current = edges.size();
  for (int level = depth.count - 1; level >= 0; --level) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (depth.coloring.colors[i] != level) continue;
      if (current != edges.size()) {
        auto [olo, ohi] = span(current);
        auto [lo, hi] = span(i);
        if (!(olo < lo && hi < ohi)) continue;
      }
      chain.push_back(i);
      current = i;
      break;
    }
  }
  return chain;
}

}  // namespace boxslash
