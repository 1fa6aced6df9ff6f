#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "boxslash/graph_core.hpp"
#include "boxslash/linear_layout.hpp"

namespace boxslash {

enum class LayoutKind : std::uint8_t { Stack, Queue };

struct SolveOptions {
  /// Largest colour count tried; negative means the edge count.
  int upper_limit{-1};
  /// Abort with exact = false once exceeded.
  std::optional<std::chrono::milliseconds> budget;
  /// Skip an order when its reversal is enumerated instead.
  bool prune_reversals{true};
  /// Stack search only: pin vertex 0 to the first position (rotations
  /// preserve crossings). Ignored for queues, where rotation does not
  /// preserve nesting.
  bool fix_first_vertex{true};
  /// Worker threads; the result does not depend on this.
  unsigned jobs{1};
  /// Exhaustive search refuses larger graphs with size_error.
  std::size_t max_vertices{10};
};

struct SolveResult {
  /// Colours used by the witness; the minimum when exact.
  int value{0};
  /// Proven lower bound; equals value when exact.
  int lower_bound{0};
  LinearOrder order;
  EdgeColoring coloring;
  /// True only when every smaller colour count was refuted exhaustively.
  bool exact{false};
  /// True when no layout with at most upper_limit colours exists; the
  /// witness is then a fallback from the identity order.
  bool limit_exceeded{false};
  std::uint64_t nodes_explored{0};
};

/// Minimum over all vertex orders of the stack pages needed, by iterative
/// deepening on the page count. The witness is the first order (in
/// enumeration order) admitting the minimum.
SolveResult stack_number(const Graph& graph, const SolveOptions& options = {});

/// Same for queues (minimum over orders of the largest rainbow).
SolveResult queue_number(const Graph& graph, const SolveOptions& options = {});

SolveResult solve(const Graph& graph, LayoutKind kind, const SolveOptions& options = {});

struct NamedGraph {
  std::string name;
  Graph graph;
};

struct ProbeReport {
  /// True when some instance had queue number above the threshold.
  bool exceeded{false};
  std::size_t examined{0};
  std::optional<std::string> name;
  std::optional<SolveResult> result;
};

/// Streams instances through queue_number until one exceeds q; the
/// generator signals exhaustion by returning nullopt.
ProbeReport probe_queue_lower_bound(const std::function<std::optional<NamedGraph>()>& next,
                                    int q, const SolveOptions& options = {});

}  // namespace boxslash
