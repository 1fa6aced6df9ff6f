#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "boxslash/graph_core.hpp"

namespace boxslash {

/// Total order on vertices 0..n-1, stored both ways.
class LinearOrder {
 public:
  LinearOrder() = default;
  /// seq[k] is the vertex at position k. Throws input_error unless seq is a
  /// permutation of 0..seq.size()-1.
  static LinearOrder from_sequence(std::vector<Vertex> seq);
  static LinearOrder identity(std::size_t n);

  std::size_t size() const noexcept { return sequence_.size(); }
  std::size_t rank(Vertex v) const { return rank_.at(v); }
  Vertex at(std::size_t position) const { return sequence_.at(position); }
  bool less(Vertex a, Vertex b) const { return rank_.at(a) < rank_.at(b); }
  const std::vector<Vertex>& sequence() const noexcept { return sequence_; }
  const std::vector<std::size_t>& ranks() const noexcept { return rank_; }
  LinearOrder reversed() const;

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) {
    return a.sequence_ == b.sequence_;
  }

 private:
  std::vector<Vertex> sequence_;
  std::vector<std::size_t> rank_;
};

/// Colour per edge index, colours drawn from [0, k).
struct EdgeColoring {
  std::vector<int> colors;
  int k{0};

  /// Throws input_error unless the colouring is total on graph's edges and
  /// every colour lies in [0, k).
  void check(const Graph& graph) const;
};

enum class PairRelation : std::uint8_t { Separated, Nest, Cross, SharesEndpoint };

const char* to_string(PairRelation rel) noexcept;

/// Relation of two edges under order. Throws input_error on a self-loop.
PairRelation classify_pair(const Edge& e1, const Edge& e2, const LinearOrder& order);

struct Violation {
  std::size_t first{0};
  std::size_t second{0};
  PairRelation relation{PairRelation::Cross};
  int color{0};
};

struct LayoutReport {
  bool valid{true};
  std::vector<Violation> violations;
};

/// Every same-coloured crossing pair.
LayoutReport validate_stack_layout(const Graph& graph, const LinearOrder& order,
                                   const EdgeColoring& coloring);
/// Every same-coloured nesting pair.
LayoutReport validate_queue_layout(const Graph& graph, const LinearOrder& order,
                                   const EdgeColoring& coloring);

/// The product's canonical vertex order: path position first, then depth,
/// then lexicographic node address.
bool product_order_less(const PVertex& a, const PVertex& b);
LinearOrder product_order(const ProductGraph& graph);

struct Layout {
  LinearOrder order;
  EdgeColoring coloring;
};

/// product_order with one queue per edge kind (vertical 0, horizontal 1,
/// diagonal 2).
Layout three_queue_layout(const ProductGraph& graph);

struct ColorCount {
  int count{0};
  EdgeColoring coloring;
  bool exact{true};
};

inline constexpr std::size_t kDefaultExactLimit = 24;

/// Minimum number of stack pages for a fixed order: chromatic number of the
/// crossing-conflict graph. Exact (DSATUR backtracking) while the largest
/// connected component of the conflict graph has at most exact_limit
/// vertices; otherwise a greedy bound with exact = false.
ColorCount stack_pages_for_order(const Graph& graph, const LinearOrder& order,
                                 std::size_t exact_limit = kDefaultExactLimit);

/// Minimum number of queues for a fixed order: size of the largest rainbow.
/// The witness colours each edge by the depth of nesting below it.
ColorCount queues_for_order(const Graph& graph, const LinearOrder& order);

/// Largest set of pairwise nesting edges (edge indices, outermost first).
std::vector<std::size_t> max_rainbow(const Graph& graph, const LinearOrder& order);

/// Adjacency lists of the conflict graph whose vertices are edges and whose
/// adjacency is the given relation.
std::vector<std::vector<std::size_t>> conflict_graph(const Graph& graph,
                                                     const LinearOrder& order,
                                                     PairRelation relation);

/// Proper k-colouring of an arbitrary graph by DSATUR-ordered backtracking,
/// or nullopt when none exists. nodes counts search nodes when given.
std::optional<std::vector<int>> k_color(const std::vector<std::vector<std::size_t>>& adjacency,
                                        int k, std::uint64_t* nodes = nullptr);

}  // namespace boxslash
