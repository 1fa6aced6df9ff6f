#pragma once

// Subtree passes that make a stack layout of a product graph uniform
// (colour by depth/position/kind, child-symmetric order, lex-monotone
// levels), Erdős–Szekeres style extraction, and the Z direction table.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "boxslash/graph_core.hpp"
#include "boxslash/linear_layout.hpp"
#include "boxslash/report.hpp"
#include "boxslash/sequences.hpp"

namespace boxslash {

// ---------------------------------------------------------------------------
// Erdős–Szekeres and lex-monotone arrays

/// Longest increasing or decreasing subsequence (patience sorting); returns
/// the values of one of length >= n, or nullopt. input_error on duplicates.
std::optional<std::vector<long long>> es_monotone_subsequence(const std::vector<long long>& values,
                                                              int n);

/// Dense d-dimensional array, row-major, first axis slowest.
class LexArray {
 public:
  LexArray() = default;
  LexArray(std::vector<int> sides, std::vector<long long> values);

  int dims() const noexcept { return static_cast<int>(sides_.size()); }
  const std::vector<int>& sides() const noexcept { return sides_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<long long>& values() const noexcept { return values_; }

  long long at(const std::vector<int>& coords) const;
  std::vector<int> coords(std::size_t flat) const;
  std::size_t flat(const std::vector<int>& coords) const;
  /// The subarray on the given per-axis index sets (0-based, increasing).
  LexArray sub(const std::vector<std::vector<int>>& index_sets) const;

 private:
  std::vector<int> sides_;
  std::vector<long long> values_;
};

struct LexMonotoneWitness {
  /// sigma[r] is the axis compared r-th (0-based).
  std::vector<int> sigma;
  /// signs[r] is the direction used when axis sigma[r] decides.
  std::vector<Direction> signs;
  /// Kept indices (0-based) per axis.
  std::vector<std::vector<int>> index_sets;

  /// Direction of every *-sequence along the given axis.
  Direction axis_direction(int axis) const;
  bool identity_sigma() const;
};

/// Full pairwise check of the lex-monotone rule on the subarray selected by
/// the witness. No shortcuts.
bool verify_lex_monotone(const LexArray& array, const LexMonotoneWitness& witness);

/// (sigma, signs) under which the whole array is lex-monotone, trying sigma
/// in lexicographic order and signs from all-INC; index sets are full.
std::optional<LexMonotoneWitness> lex_order_of(const LexArray& array);

struct LexSearchOptions {
  int max_dims{3};
  int max_side{12};
  std::uint64_t node_budget{50'000'000};
};

/// An n x ... x n lex-monotone subarray. Distinct values required
/// (input_error); size_error beyond the desk-scale caps; nullopt when none
/// exists or the node budget runs out. Every returned witness is verified.
std::optional<LexMonotoneWitness> lex_monotone_subarray(const LexArray& array, int n,
                                                        const LexSearchOptions& options = {});

// ---------------------------------------------------------------------------
// Layouts on a product graph and the passes

struct LayoutInstance {
  ProductGraph graph;
  LinearOrder order;
  EdgeColoring coloring;
  /// Address in the original tree of every node, by tree node id.
  std::vector<NodeIndex> origin;

  static LayoutInstance make(ProductGraph graph, LinearOrder order, EdgeColoring coloring);
};

/// Restricts the tree and carries the order and colouring along.
LayoutInstance restrict_instance(const LayoutInstance& instance, const ChildSelection& keep);

/// Colour lookup key. depth = larger endpoint depth, pos = smaller path
/// position.
struct ColorKey {
  int depth{0};
  int pos{0};
  EdgeKind kind{EdgeKind::Vertical};
  friend auto operator<=>(const ColorKey&, const ColorKey&) = default;
};

using ColorTable = std::map<ColorKey, int>;

/// The table when every edge's colour depends only on its key.
std::optional<ColorTable> color_table(const ProductGraph& graph, const EdgeColoring& coloring);

struct PassResult {
  LayoutInstance instance;
  std::vector<int> degrees;
};

struct ColourPassResult : PassResult {
  ColorTable table;
};

struct OrderPassResult : PassResult {
  CheckReport transfer;
};

struct LexEntry {
  int length{0};
  int pos{0};
  LexMonotoneWitness witness;
};

struct LexPassResult : PassResult {
  std::vector<LexEntry> arrays;
};

/// Per level, bottom level first: bucket the children of each node by the
/// colours of the edges they control, keep the first targets[level]
/// children of the largest bucket. pass_failure when a bucket is too small.
ColourPassResult pass_colour(const LayoutInstance& instance, const std::vector<int>& targets);

/// Same bucketing, keyed by the induced order on each child's descendants.
OrderPassResult pass_order(const LayoutInstance& instance, const std::vector<int>& targets);

/// Exhaustive check that (A+X,i) < (A+Y,j) iff (B+X,i) < (B+Y,j) for all
/// |A| = |B|.
CheckReport verify_order_transfer(const LayoutInstance& instance);

/// For each length top-down, keeps targets[length-1] indices of the new
/// axis so that every array L([*,...,*], p) becomes lex-monotone at once.
LexPassResult pass_lex(const LayoutInstance& instance, const std::vector<int>& targets);

// ---------------------------------------------------------------------------
// Z table

class ZTable {
 public:
  ZTable() = default;
  ZTable(int n, int m, Direction fill = Direction::Inc);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  /// 1 <= i <= j <= n, 1 <= p <= m.
  Direction at(int i, int j, int p) const;
  void set(int i, int j, int p, Direction d);
  bool contains(int i, int j, int p) const noexcept;
  friend bool operator==(const ZTable&, const ZTable&) = default;

 private:
  std::size_t index(int i, int j, int p) const;
  int n_{0};
  int m_{0};
  std::vector<Direction> cells_;
};

/// Reads Z(i,j,p) off every sequence (A+*+B,p). inconsistency_error when two
/// such sequences disagree or one is not monotone; precondition_error when an
/// entry is undetermined (a level of degree 1).
ZTable extract_Z(const LayoutInstance& instance);

/// Order on a product graph by position, then depth, then the first
/// differing coordinate i, ascending or descending by Z(i, depth, pos).
LinearOrder lex_structured_order(const ProductGraph& graph, const ZTable& z);

/// Same-length addresses at one position compare by their first differing
/// coordinate as Z dictates.
CheckReport check_identity_permutation(const LayoutInstance& instance);

/// The implications (a) vertical, (b) diagonal, (c) horizontal.
CheckReport check_z_consistency(const ZTable& z);

/// All vertical, diagonal and horizontal *-sequence pairs are related with
/// the colour the table gives.
CheckReport check_main_related(const LayoutInstance& instance);

struct PipelineResult {
  LayoutInstance instance;
  ColorTable table;
  ZTable z;
  CheckReport transfer;
  CheckReport identity;
  CheckReport consistency;
  CheckReport related;
  std::vector<LexEntry> arrays;
};

/// colour -> order -> lex, then every check re-run on the final subtree.
PipelineResult run_passes(const LayoutInstance& instance, const std::vector<int>& targets);

}  // namespace boxslash
