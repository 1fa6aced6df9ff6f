#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace boxslash {

using Vertex = std::uint32_t;

/// Construction refuses product graphs with more vertices than this.
inline constexpr std::size_t kMaxVertices = 1'000'000;

/// Undirected edge between two vertex ids. Endpoint order is the stored
/// (canonical) order; it carries no meaning for the layout relations.
struct Edge {
  Vertex u{0};
  Vertex v{0};

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over vertices 0..n-1 with optional display names.
/// Rejects self-loops, out-of-range endpoints and duplicate edges.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::vector<std::string> names = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  /// Display name; falls back to the decimal id.
  std::string name(Vertex v) const;
  bool has_names() const noexcept { return !names_.empty(); }
  std::optional<Vertex> find_vertex(const std::string& name) const;

  /// Index of the edge joining u and v (either orientation).
  std::optional<std::size_t> find_edge(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ &&
           a.names_ == b.names_;
  }

 private:
  static std::uint64_t key(Vertex u, Vertex v) noexcept;

  std::size_t vertex_count_{0};
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
  std::unordered_map<std::uint64_t, std::size_t> edge_lookup_;
  std::unordered_map<std::string, Vertex> name_lookup_;
};

// Small named families used by the exact solver and its probes.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// K_{1,leaves}; vertex 0 is the centre.
Graph star_graph(std::size_t leaves);

/// Degree sequence (d_0, ..., d_{n-1}) of a balanced rooted tree: every node
/// at depth i has exactly d_i children.
struct TreeSpec {
  std::vector<int> degrees;

  int height() const noexcept { return static_cast<int>(degrees.size()); }
  /// 1 + d_0 + d_0 d_1 + ...; throws size_error past kMaxVertices.
  std::size_t node_count() const;
  /// Number of nodes at the given depth (0..height).
  std::size_t level_size(int depth) const;
  /// Throws input_error on an empty sequence or a degree below 1, and
  /// size_error when the node count exceeds kMaxVertices.
  void validate() const;

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

/// Address of a tree node: the 1-indexed child choices from the root.
/// The root is the empty path.
struct NodeIndex {
  std::vector<int> path;

  NodeIndex() = default;
  explicit NodeIndex(std::vector<int> p) : path(std::move(p)) {}
  NodeIndex(std::initializer_list<int> p) : path(p) {}

  int depth() const noexcept { return static_cast<int>(path.size()); }
  bool is_root() const noexcept { return path.empty(); }
  int operator[](std::size_t i) const { return path.at(i); }
  NodeIndex parent() const;
  /// Renders "1.2.2"; the root renders as "r".
  std::string str() const;

  friend auto operator<=>(const NodeIndex&, const NodeIndex&) = default;
  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

/// a + b. Throws size_error when the result is deeper than max_depth
/// (pass a negative max_depth to skip the check).
NodeIndex concat(const NodeIndex& a, const NodeIndex& b, int max_depth = -1);
/// a + [v].
NodeIndex concat(const NodeIndex& a, int v, int max_depth = -1);

/// Vertex (A, i) of T ⊠̸ P: tree node plus 1-based path position.
struct PVertex {
  NodeIndex node;
  int pos{1};

  /// "1.2.2@3", or "r@3" for the root.
  std::string str() const;
  static PVertex parse(const std::string& text);

  friend auto operator<=>(const PVertex&, const PVertex&) = default;
  friend bool operator==(const PVertex&, const PVertex&) = default;
};

/// Balanced rooted tree with nodes enumerated breadth-first (depth, then
/// lexicographic), so node 0 is the root.
class Tree {
 public:
  explicit Tree(TreeSpec spec);

  const TreeSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<NodeIndex>& nodes() const noexcept { return nodes_; }
  const NodeIndex& node(std::size_t id) const { return nodes_.at(id); }
  std::optional<std::size_t> id_of(const NodeIndex& node) const;
  bool contains(const NodeIndex& node) const;
  std::optional<std::size_t> parent(std::size_t id) const;
  std::vector<std::size_t> children(std::size_t id) const;

 private:
  TreeSpec spec_;
  std::vector<NodeIndex> nodes_;
  std::map<NodeIndex, std::size_t> ids_;
};

enum class EdgeKind : std::uint8_t { Vertical = 0, Horizontal = 1, Diagonal = 2 };

const char* to_string(EdgeKind kind) noexcept;

/// T ⊠̸ P_m for a balanced tree T. Vertex ids are position-major:
/// id = (pos - 1) * |V(T)| + tree node id.
///
/// Stored edges (a, b) follow the convention that a has the larger depth or
/// the smaller path position:
///   vertical    (A+v, i) ~ (A, i)
///   horizontal  (A, i)   ~ (A, i+1)
///   diagonal    (A+v, i) ~ (A, i+1)
class ProductGraph {
 public:
  /// The single-edge product of tree (1) with a one-vertex path.
  ProductGraph() : ProductGraph(TreeSpec{{1}}, 1) {}
  ProductGraph(const TreeSpec& spec, int path_len);

  const Tree& tree() const noexcept { return tree_; }
  const TreeSpec& spec() const noexcept { return tree_.spec(); }
  int path_len() const noexcept { return path_len_; }
  const Graph& graph() const noexcept { return graph_; }

  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }
  EdgeKind kind(std::size_t edge) const { return kinds_.at(edge); }
  const std::vector<EdgeKind>& kinds() const noexcept { return kinds_; }
  std::size_t count(EdgeKind kind) const;

  const PVertex& pvertex(Vertex v) const { return pvertices_.at(v); }
  std::optional<Vertex> vertex_of(const PVertex& pv) const;
  /// Throws input_error when pv is not a vertex of this graph.
  Vertex vertex(const PVertex& pv) const;

 private:
  Tree tree_;
  int path_len_;
  Graph graph_;
  std::vector<EdgeKind> kinds_;
  std::vector<PVertex> pvertices_;
};

ProductGraph boxslash_product(const TreeSpec& spec, int path_len);

/// Child selection for restrict_subtree: node (old address) -> kept child
/// indices (old numbering). Nodes without an entry keep all children.
using ChildSelection = std::map<NodeIndex, std::vector<int>>;

struct Restriction {
  ProductGraph graph;
  /// Old address -> new address for every surviving tree node.
  std::map<NodeIndex, NodeIndex> node_map;
  /// New vertex id -> vertex id in the source graph.
  std::vector<Vertex> new_to_old;
};

/// Induced ⊠̸ product on the subtree selected by keep. Kept children are
/// renumbered 1..d_i' in increasing old index. Throws shape_error when a
/// selection is empty, out of range, or the kept counts differ within a level.
Restriction restrict_subtree(const ProductGraph& graph, const ChildSelection& keep);

/// Graphviz rendering; kind=vertical|horizontal|diagonal with colours
/// black/orange/blue.
std::string to_dot(const ProductGraph& graph);
std::string to_dot(const Graph& graph);

}  // namespace boxslash
