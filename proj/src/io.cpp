#include "boxslash/io.hpp"

#include "boxslash/errors.hpp"

namespace boxslash {

namespace {

template <class T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw input_error(std::string("missing field \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw input_error(std::string("field \"") + key + "\" has the wrong type");
  }
}

Vertex vertex_named(const Graph& graph, const std::string& name) {
  const auto v = graph.find_vertex(name);
  if (!v) throw input_error("unknown vertex " + name);
  return *v;
}

}  // namespace

LoadedGraph graph_from_json(const Json& doc) {
  if (!doc.is_object()) throw input_error("graph document must be an object");
  if (doc.contains("tree_degrees")) {
    TreeSpec spec{field<std::vector<int>>(doc, "tree_degrees")};
    const int m = field<int>(doc, "path_len");
    ProductGraph pg(spec, m);
    Json descriptor{{"tree_degrees", spec.degrees}, {"path_len", m}};
    Graph g = pg.graph();
    return {std::move(g), std::move(pg), std::move(descriptor)};
  }
  const auto n = field<std::size_t>(doc, "n");
  const auto pairs = field<std::vector<std::vector<Vertex>>>(doc, "edges");
  std::vector<Edge> edges;
  for (const auto& p : pairs) {
    if (p.size() != 2) throw input_error("edges are [u, v] pairs");
    edges.push_back({p[0], p[1]});
  }
  std::vector<std::string> names;
  if (doc.contains("names")) names = field<std::vector<std::string>>(doc, "names");
  Graph g(n, std::move(edges), std::move(names));
  return {g, std::nullopt, graph_to_json(g)};
}

Json graph_to_json(const ProductGraph& graph) {
  Json doc{{"tree_degrees", graph.spec().degrees}, {"path_len", graph.path_len()}};
  Json vertices = Json::array();
  for (Vertex v = 0; v < graph.vertex_count(); ++v) vertices.push_back(graph.graph().name(v));
  Json edges = Json::array();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.graph().edge(e);
    edges.push_back({graph.graph().name(ed.u), graph.graph().name(ed.v), to_string(graph.kind(e))});
  }
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  return doc;
}

Json graph_to_json(const Graph& graph) {
  Json edges = Json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v});
  Json doc{{"n", graph.vertex_count()}, {"edges", std::move(edges)}};
  if (graph.has_names()) {
    Json names = Json::array();
    for (Vertex v = 0; v < graph.vertex_count(); ++v) names.push_back(graph.name(v));
    doc["names"] = std::move(names);
  }
  return doc;
}

std::string edge_key(const Graph& graph, std::size_t edge) {
  const Edge& e = graph.edge(edge);
  return graph.name(e.u) + "--" + graph.name(e.v);
}

Json layout_to_json(const Graph& graph, const LinearOrder& order, const EdgeColoring& coloring,
                    const Json& descriptor) {
  Json names = Json::array();
  for (Vertex v : order.sequence()) names.push_back(graph.name(v));
  Json colors = Json::object();
  for (std::size_t e = 0; e < graph.edge_count(); ++e) colors[edge_key(graph, e)] = coloring.colors.at(e);
  Json doc{{"order", std::move(names)}, {"colors", std::move(colors)}, {"k", coloring.k}};
  if (!descriptor.is_null()) doc["graph"] = descriptor;
  return doc;
}

Layout layout_from_json(const Json& doc, const Graph& graph) {
  std::vector<Vertex> seq;
  for (const auto& name : field<std::vector<std::string>>(doc, "order")) {
    seq.push_back(vertex_named(graph, name));
  }
  if (seq.size() != graph.vertex_count()) throw input_error("order does not list every vertex");
  Layout out{LinearOrder::from_sequence(std::move(seq)), {}};
  out.coloring.k = field<int>(doc, "k");
  out.coloring.colors.assign(graph.edge_count(), -1);
  const Json colors = field<Json>(doc, "colors");
  if (!colors.is_object()) throw input_error("\"colors\" must be an object");
  for (const auto& [key, value] : colors.items()) {
    const auto sep = key.find("--");
    if (sep == std::string::npos) throw input_error("edge key " + key + " is not u--v");
    const Vertex u = vertex_named(graph, key.substr(0, sep));
    const Vertex v = vertex_named(graph, key.substr(sep + 2));
    const auto e = graph.find_edge(u, v);
    if (!e) throw input_error("edge key " + key + " is not an edge");
    if (!value.is_number_integer()) throw input_error("colour of " + key + " is not an integer");
    out.coloring.colors[*e] = value.get<int>();
  }
  out.coloring.check(graph);
  return out;
}

Json report_to_json(const Graph& graph, const LayoutReport& report) {
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"first", edge_key(graph, v.first)},
                          {"second", edge_key(graph, v.second)},
                          {"relation", to_string(v.relation)},
                          {"color", v.color}});
  }
  return {{"valid", report.valid}, {"violations", std::move(violations)}};
}

Json solve_result_to_json(const Graph& graph, const SolveResult& result, LayoutKind kind) {
  return {{"kind", kind == LayoutKind::Stack ? "stack" : "queue"},
          {"value", result.value},
          {"lower_bound", result.lower_bound},
          {"exact", result.exact},
          {"limit_exceeded", result.limit_exceeded},
          {"nodes_explored", result.nodes_explored},
          {"layout", layout_to_json(graph, result.order, result.coloring)}};
}

Json check_report_to_json(const CheckReport& report) {
  return {{"ok", report.ok()}, {"checked", report.checked}, {"violations", report.violations}};
}

Json color_table_to_json(const ColorTable& table) {
  Json rows = Json::array();
  for (const auto& [key, color] : table) {
    rows.push_back({{"depth", key.depth}, {"pos", key.pos}, {"kind", to_string(key.kind)}, {"color", color}});
  }
  return rows;
}

Json z_table_to_json(const ZTable& z) {
  Json rows = Json::array();
  for (int i = 1; i <= z.n(); ++i) {
    for (int j = i; j <= z.n(); ++j) {
      Json dirs = Json::array();
      for (int p = 1; p <= z.m(); ++p) dirs.push_back(to_string(z.at(i, j, p)));
      rows.push_back({{"i", i}, {"j", j}, {"p", std::move(dirs)}});
    }
  }
  return {{"n", z.n()}, {"m", z.m()}, {"entries", std::move(rows)}};
}

Json pipeline_to_json(const PipelineResult& result) {
  const ProductGraph& pg = result.instance.graph;
  Json origin = Json::array();
  for (const NodeIndex& node : result.instance.origin) origin.push_back(node.str());
  Json arrays = Json::array();
  for (const LexEntry& entry : result.arrays) {
    Json signs = Json::array();
    for (Direction d : entry.witness.signs) signs.push_back(to_string(d));
    arrays.push_back({{"length", entry.length},
                      {"pos", entry.pos},
                      {"sigma", entry.witness.sigma},
                      {"signs", std::move(signs)}});
  }
  return {{"degrees", pg.spec().degrees},
          {"path_len", pg.path_len()},
          {"origin", std::move(origin)},
          {"layout", layout_to_json(pg.graph(), result.instance.order, result.instance.coloring)},
          {"color_table", color_table_to_json(result.table)},
          {"z", z_table_to_json(result.z)},
          {"lex_arrays", std::move(arrays)},
          {"checks",
           {{"order_transfer", check_report_to_json(result.transfer)},
            {"identity_permutation", check_report_to_json(result.identity)},
            {"z_consistency", check_report_to_json(result.consistency)},
            {"main_related", check_report_to_json(result.related)}}}};
}

HexColoring coloring_from_json(const Json& doc) {
  const int n = field<int>(doc, "n");
  const int m = field<int>(doc, "m");
  const auto chi = field<std::vector<std::vector<int>>>(doc, "chi");
  if (static_cast<int>(chi.size()) != n) throw input_error("\"chi\" needs n rows");
  for (const auto& row : chi) {
    if (static_cast<int>(row.size()) != m) throw input_error("\"chi\" rows need m entries");
  }
  return HexColoring::from_rows(chi);
}

Json coloring_to_json(const HexColoring& coloring) {
  return {{"n", coloring.n()}, {"m", coloring.m()}, {"chi", coloring.rows()}};
}

Json cell_to_json(const Cell& c) { return Json::array({c.i, c.j}); }

Json boundary_line_to_json(const BoundaryLine& line) {
  Json pairs = Json::array();
  for (std::size_t t = 0; t < line.length(); ++t) {
    pairs.push_back({cell_to_json(line.a[t]), cell_to_json(line.b[t])});
  }
  Json walk = Json::array();
  for (const DualVertex& v : line.walk) walk.push_back(v.str());
  return {{"length", line.length()}, {"cycle", line.cycle}, {"pairs", std::move(pairs)}, {"walk", std::move(walk)}};
}

Json good_points_to_json(const GoodPoints& points) {
  Json list = Json::array();
  for (std::size_t k = 0; k < points.points.size(); ++k) {
    list.push_back({{"point", points.points[k].point.str()},
                    {"base", to_string(points.points[k].base)},
                    {"pair_index", points.pair_index[k]}});
  }
  return {{"points", std::move(list)},
          {"threshold", points.threshold ? Json(*points.threshold) : Json(nullptr)},
          {"verification", check_report_to_json(points.verification)}};
}

Json top_or_long_to_json(const TopOrLong& witness) {
  Json doc{{"kind", witness.kind == TopOrLong::Kind::TopCells ? "top_cells" : "long_boundary"},
           {"via_chain", witness.via_chain},
           {"verification", check_report_to_json(witness.verification)}};
  if (witness.kind == TopOrLong::Kind::TopCells) {
    Json cells = Json::array();
    for (const Cell& c : witness.top_cells) cells.push_back(cell_to_json(c));
    doc["top_cells"] = std::move(cells);
  } else {
    doc["boundary"] = boundary_line_to_json(*witness.boundary);
  }
  return doc;
}

}  // namespace boxslash
