#include "boxslash/graph_core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "boxslash/errors.hpp"

namespace boxslash {

//
// Graph
//

std::uint64_t Graph::key(Vertex u, Vertex v) noexcept {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges,
             std::vector<std::string> names)
    : vertex_count_(vertex_count), edges_(std::move(edges)), names_(std::move(names)) {
  if (!names_.empty() && names_.size() != vertex_count_) {
    throw input_error("graph: name count does not match vertex count");
  }
  edge_lookup_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw input_error("graph: edge endpoint out of range");
    }
    if (e.u == e.v) throw input_error("graph: self-loop at vertex " + std::to_string(e.u));
    if (!edge_lookup_.emplace(key(e.u, e.v), i).second) {
      throw input_error("graph: duplicate edge " + std::to_string(e.u) + "--" +
                        std::to_string(e.v));
    }
  }
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (!name_lookup_.emplace(names_[v], static_cast<Vertex>(v)).second) {
      throw input_error("graph: duplicate vertex name " + names_[v]);
    }
  }
}

std::string Graph::name(Vertex v) const {
  if (names_.empty()) return std::to_string(v);
  return names_.at(v);
}

std::optional<Vertex> Graph::find_vertex(const std::string& name) const {
  if (names_.empty()) {
    Vertex v{};
    const auto* end = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(name.data(), end, v);
    if (ec != std::errc{} || ptr != end || v >= vertex_count_) return std::nullopt;
    return v;
  }
  auto it = name_lookup_.find(name);
  if (it == name_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Graph::find_edge(Vertex u, Vertex v) const {
  auto it = edge_lookup_.find(key(u, v));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw input_error("cycle_graph: need at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph(leaves + 1, std::move(edges));
}

//
// TreeSpec / NodeIndex / PVertex
//

std::size_t TreeSpec::level_size(int depth) const {
  if (depth < 0 || depth > height()) throw input_error("level_size: depth out of range");
  std::size_t count = 1;
  for (int i = 0; i < depth; ++i) {
    count *= static_cast<std::size_t>(degrees[i]);
    if (count > kMaxVertices) throw size_error("tree level exceeds vertex limit");
  }
  return count;
}

std::size_t TreeSpec::node_count() const {
  std::size_t total = 1;
  std::size_t level = 1;
  for (int d : degrees) {
    if (d < 1) throw input_error("tree degree must be >= 1");
    level *= static_cast<std::size_t>(d);
    total += level;
    if (level > kMaxVertices || total > kMaxVertices) {
      throw size_error("tree has more than " + std::to_string(kMaxVertices) + " nodes");
    }
  }
  return total;
}

void TreeSpec::validate() const {
  if (degrees.empty()) throw input_error("tree degree sequence must be non-empty");
  for (int d : degrees) {
    if (d < 1) throw input_error("tree degree must be >= 1");
  }
  (void)node_count();
}

NodeIndex NodeIndex::parent() const {
  if (path.empty()) throw input_error("root has no parent");
  return NodeIndex(std::vector<int>(path.begin(), path.end() - 1));
}

std::string NodeIndex::str() const {
  if (path.empty()) return "r";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

NodeIndex concat(const NodeIndex& a, const NodeIndex& b, int max_depth) {
  if (max_depth >= 0 && a.depth() + b.depth() > max_depth) {
    throw size_error("concat: result deeper than tree height");
  }
  std::vector<int> out = a.path;
  out.insert(out.end(), b.path.begin(), b.path.end());
  return NodeIndex(std::move(out));
}

NodeIndex concat(const NodeIndex& a, int v, int max_depth) {
  return concat(a, NodeIndex{v}, max_depth);
}

std::string PVertex::str() const { return node.str() + "@" + std::to_string(pos); }

namespace {

int parse_int(std::string_view text, const std::string& whole) {
  int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw input_error("bad vertex id '" + whole + "'");
  }
  return value;
}

}  // namespace

PVertex PVertex::parse(const std::string& text) {
  const auto at = text.find('@');
  if (at == std::string::npos || at == 0) throw input_error("bad vertex id '" + text + "'");
  PVertex out;
  out.pos = parse_int(std::string_view(text).substr(at + 1), text);
  const std::string_view node = std::string_view(text).substr(0, at);
  if (node != "r") {
    std::size_t start = 0;
    while (true) {
      const auto dot = node.find('.', start);
      out.node.path.push_back(parse_int(node.substr(start, dot - start), text));
      if (dot == std::string_view::npos) break;
      start = dot + 1;
    }
  }
  return out;
}

//
// Tree
//

Tree::Tree(TreeSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  nodes_.reserve(spec_.node_count());
  nodes_.emplace_back();
  std::size_t level_begin = 0;
  for (int depth = 0; depth < spec_.height(); ++depth) {
    const std::size_t level_end = nodes_.size();
    for (std::size_t id = level_begin; id < level_end; ++id) {
      for (int c = 1; c <= spec_.degrees[depth]; ++c) {
        nodes_.push_back(concat(nodes_[id], c));
      }
    }
    level_begin = level_end;
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) ids_.emplace(nodes_[id], id);
}

std::optional<std::size_t> Tree::id_of(const NodeIndex& node) const {
  auto it = ids_.find(node);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool Tree::contains(const NodeIndex& node) const { return ids_.count(node) != 0; }

std::optional<std::size_t> Tree::parent(std::size_t id) const {
  const NodeIndex& n = nodes_.at(id);
  if (n.is_root()) return std::nullopt;
  return ids_.at(n.parent());
}

std::vector<std::size_t> Tree::children(std::size_t id) const {
  const NodeIndex& n = nodes_.at(id);
  std::vector<std::size_t> out;
  if (n.depth() >= spec_.height()) return out;
  for (int c = 1; c <= spec_.degrees[n.depth()]; ++c) out.push_back(ids_.at(concat(n, c)));
  return out;
}

//
// ProductGraph
//

const char* to_string(EdgeKind kind) noexcept {
  switch (kind) {
    case EdgeKind::Vertical: return "vertical";
    case EdgeKind::Horizontal: return "horizontal";
    case EdgeKind::Diagonal: return "diagonal";
  }
  return "?";
}

ProductGraph::ProductGraph(const TreeSpec& spec, int path_len)
    : tree_(spec), path_len_(path_len) {
  if (path_len < 1) throw input_error("path length must be >= 1");
  const std::size_t tree_size = tree_.size();
  if (tree_size * static_cast<std::size_t>(path_len) > kMaxVertices) {
    throw size_error("product graph has more than " + std::to_string(kMaxVertices) +
                     " vertices");
  }
  const std::size_t n = tree_size * static_cast<std::size_t>(path_len);
  pvertices_.reserve(n);
  std::vector<std::string> names;
  names.reserve(n);
  for (int pos = 1; pos <= path_len; ++pos) {
    for (const NodeIndex& node : tree_.nodes()) {
      pvertices_.push_back({node, pos});
      names.push_back(pvertices_.back().str());
    }
  }
  auto id = [&](std::size_t node, int pos) {
    return static_cast<Vertex>((pos - 1) * tree_size + node);
  };
  std::vector<Edge> edges;
  for (int pos = 1; pos <= path_len; ++pos) {
    for (std::size_t child = 1; child < tree_size; ++child) {
      edges.push_back({id(child, pos), id(*tree_.parent(child), pos)});
      kinds_.push_back(EdgeKind::Vertical);
    }
  }
  for (int pos = 1; pos < path_len; ++pos) {
    for (std::size_t node = 0; node < tree_size; ++node) {
      edges.push_back({id(node, pos), id(node, pos + 1)});
      kinds_.push_back(EdgeKind::Horizontal);
    }
  }
  for (int pos = 1; pos < path_len; ++pos) {
    for (std::size_t child = 1; child < tree_size; ++child) {
      edges.push_back({id(child, pos), id(*tree_.parent(child), pos + 1)});
      kinds_.push_back(EdgeKind::Diagonal);
    }
  }
  graph_ = Graph(n, std::move(edges), std::move(names));
}

std::size_t ProductGraph::count(EdgeKind kind) const {
  return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), kind));
}

std::optional<Vertex> ProductGraph::vertex_of(const PVertex& pv) const {
  if (pv.pos < 1 || pv.pos > path_len_) return std::nullopt;
  auto node = tree_.id_of(pv.node);
  if (!node) return std::nullopt;
  return static_cast<Vertex>((pv.pos - 1) * tree_.size() + *node);
}

Vertex ProductGraph::vertex(const PVertex& pv) const {
  auto v = vertex_of(pv);
  if (!v) throw input_error("not a vertex of this product: " + pv.str());
  return *v;
}

ProductGraph boxslash_product(const TreeSpec& spec, int path_len) {
  return ProductGraph(spec, path_len);
}

//
// restrict_subtree
//

Restriction restrict_subtree(const ProductGraph& graph, const ChildSelection& keep) {
  const Tree& tree = graph.tree();
  const TreeSpec& spec = tree.spec();

  for (const auto& [node, kids] : keep) {
    if (!tree.contains(node)) throw shape_error("selection names unknown node " + node.str());
    if (node.depth() >= spec.height()) {
      throw shape_error("selection on leaf node " + node.str());
    }
  }

  // Walk surviving nodes level by level, assigning new addresses.
  std::map<NodeIndex, NodeIndex> node_map;
  node_map.emplace(NodeIndex{}, NodeIndex{});
  std::vector<NodeIndex> frontier{NodeIndex{}};
  TreeSpec new_spec;
  for (int depth = 0; depth < spec.height(); ++depth) {
    std::optional<int> level_degree;
    std::vector<NodeIndex> next;
    for (const NodeIndex& old_node : frontier) {
      std::vector<int> kids;
      if (auto it = keep.find(old_node); it != keep.end()) {
        kids = it->second;
        std::sort(kids.begin(), kids.end());
        if (std::adjacent_find(kids.begin(), kids.end()) != kids.end()) {
          throw shape_error("duplicate child in selection at " + old_node.str());
        }
      } else {
        for (int c = 1; c <= spec.degrees[depth]; ++c) kids.push_back(c);
      }
      if (kids.empty()) throw shape_error("empty child selection at " + old_node.str());
      for (int c : kids) {
        if (c < 1 || c > spec.degrees[depth]) {
          throw shape_error("child " + std::to_string(c) + " out of range at " +
                            old_node.str());
        }
      }
      const int kept = static_cast<int>(kids.size());
      if (level_degree && *level_degree != kept) {
        throw shape_error("non-uniform degree at depth " + std::to_string(depth) + ": " +
                          std::to_string(*level_degree) + " vs " + std::to_string(kept));
      }
      level_degree = kept;
      const NodeIndex& new_parent = node_map.at(old_node);
      for (int i = 0; i < kept; ++i) {
        NodeIndex old_child = concat(old_node, kids[i]);
        node_map.emplace(old_child, concat(new_parent, i + 1));
        next.push_back(std::move(old_child));
      }
    }
    new_spec.degrees.push_back(*level_degree);
    frontier = std::move(next);
  }

  ProductGraph out(new_spec, graph.path_len());
  std::vector<Vertex> new_to_old(out.vertex_count());
  for (const auto& [old_node, new_node] : node_map) {
    for (int pos = 1; pos <= graph.path_len(); ++pos) {
      new_to_old[out.vertex({new_node, pos})] = graph.vertex({old_node, pos});
    }
  }
  return Restriction{std::move(out), std::move(node_map), std::move(new_to_old)};
}

//
// DOT
//

namespace {

const char* dot_colour(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Vertical: return "black";
    case EdgeKind::Horizontal: return "orange";
    case EdgeKind::Diagonal: return "blue";
  }
  return "gray";
}

}  // namespace

std::string to_dot(const ProductGraph& graph) {
  const Graph& g = graph.graph();
  std::ostringstream out;
  out << "graph boxslash {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  \"" << g.name(v) << "\";\n";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    out << "  \"" << g.name(e.u) << "\" -- \"" << g.name(e.v) << "\" [kind="
        << to_string(graph.kind(i)) << ", color=" << dot_colour(graph.kind(i)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph g {\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  \"" << g.name(v) << "\";\n";
  for (const Edge& e : g.edges()) {
    out << "  \"" << g.name(e.u) << "\" -- \"" << g.name(e.v) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace boxslash
