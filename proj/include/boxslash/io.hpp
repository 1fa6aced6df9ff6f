#pragma once

// JSON encodings for graphs, layouts, solver results, pass outputs and hex
// witnesses.

#include <optional>
#include <string>

#include "json.hpp"

#include "boxslash/exact_solver.hpp"
#include "boxslash/graph_core.hpp"
#include "boxslash/hexgrid.hpp"
#include "boxslash/linear_layout.hpp"
#include "boxslash/ramsey_passes.hpp"

namespace boxslash {

using Json = nlohmann::json;

/// A graph read from JSON: either a product descriptor
/// {"tree_degrees":[..],"path_len":m} or a plain edge list
/// {"n":4,"edges":[[0,1],..],"names":[..]}.
struct LoadedGraph {
  Graph graph;
  std::optional<ProductGraph> product;
  /// The descriptor to embed in derived documents.
  Json descriptor;
};

/// input_error on malformed documents.
LoadedGraph graph_from_json(const Json& doc);

/// Descriptor plus the explicit vertex names and (u, v, kind) edge list.
Json graph_to_json(const ProductGraph& graph);
Json graph_to_json(const Graph& graph);

/// Edge key "u--v" with u the stored endpoint.
std::string edge_key(const Graph& graph, std::size_t edge);

/// {"order":[names],"colors":{"u--v":c},"k":k}, plus "graph" when given.
Json layout_to_json(const Graph& graph, const LinearOrder& order, const EdgeColoring& coloring,
                    const Json& descriptor = nullptr);
/// Inverse of layout_to_json; input_error on unknown names, missing edges or
/// colours outside [0, k).
Layout layout_from_json(const Json& doc, const Graph& graph);

Json report_to_json(const Graph& graph, const LayoutReport& report);
Json solve_result_to_json(const Graph& graph, const SolveResult& result, LayoutKind kind);
Json check_report_to_json(const CheckReport& report);

Json color_table_to_json(const ColorTable& table);
Json z_table_to_json(const ZTable& z);
Json pipeline_to_json(const PipelineResult& result);

/// {"n":3,"m":5,"chi":[[0,1,..],..]} with 0 = INC, 1 = DEC.
HexColoring coloring_from_json(const Json& doc);
Json coloring_to_json(const HexColoring& coloring);
Json cell_to_json(const Cell& c);
Json boundary_line_to_json(const BoundaryLine& line);
Json good_points_to_json(const GoodPoints& points);
Json top_or_long_to_json(const TopOrLong& witness);

}  // namespace boxslash
