#pragma once

// Independent oracles and the seeded property suites shared by `selftest`,
// the acceptance binary and the unit tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxslash/exact_solver.hpp"
#include "boxslash/hexgrid.hpp"
#include "boxslash/report.hpp"
#include "boxslash/sequences.hpp"

namespace boxslash {

struct SuiteResult {
  std::string name;
  CheckReport report;
  double seconds{0};
  bool ok() const noexcept { return report.ok(); }
};

// ---------------------------------------------------------------------------
// Oracles. Written straight from the definitions, sharing no code with the
// library routines they check.

/// Largest k such that some length-k subsequences of a and b alternate
/// strictly (either sequence first, ascending or descending), by trying
/// every pair of index subsets. 0 when a or b is not monotone or their
/// directions differ. size_error beyond 10 elements per side.
int oracle_max_interleave(SequenceView a, SequenceView b, const LinearOrder& order);

/// Rank-based crossing test a < c < b < d for two vertex pairs.
bool oracle_cross(Vertex a, Vertex b, Vertex c, Vertex d, const LinearOrder& order);

/// Minimum colours over every vertex permutation, each colouring found by
/// plain backtracking over edges in index order. size_error above 7
/// vertices.
int naive_layout_number(const Graph& graph, LayoutKind kind);

/// Path of cells: distinct, consecutive cells adjacent, one colour, joining
/// the sides that colour connects, at least min_cells long.
CheckReport verify_spanning_path(const HexColoring& coloring, const SpanningPath& path,
                                 std::size_t min_cells);

// ---------------------------------------------------------------------------
// Suites

/// Hex lemma on all 2^(n m) colourings (n m <= 20).
SuiteResult hex_path_exhaustive(int n, int m);
/// Hex lemma on random n x m colourings.
SuiteResult hex_path_random(int n, int m, int count, std::uint64_t seed);
/// Boundary subgraph degrees and path/cycle decomposition, all colourings.
SuiteResult boundary_exhaustive(int n, int m);
SuiteResult boundary_random(int n, int m, int count, std::uint64_t seed);

/// Every permutation of 1..len has a verified monotone subsequence of
/// length n.
SuiteResult es_permutations(int len, int n);
/// Random d-dimensional arrays with distinct entries; every witness passes
/// an independent pairwise check.
SuiteResult lex_random(int count, int side, int dims, int n, std::uint64_t seed);

SuiteResult bundled_suite(int count, std::uint64_t seed);
SuiteResult rainbow_suite(int count, std::uint64_t seed);
SuiteResult sub_inter_suite(int count, std::uint64_t seed);
SuiteResult half_inter_suite(int count, std::uint64_t seed);
SuiteResult chain_bound_suite(int count, std::uint64_t seed);
SuiteResult rainbow_transfer_suite(int count, std::uint64_t seed);
/// max_interleave against the oracle on random monotone pairs.
SuiteResult interleave_oracle_suite(int count, std::uint64_t seed);

/// All orders of two fanned sequences of length len and their apexes.
SuiteResult fan_fan_exhaustive(int len);
/// All placements of a fanned length-3 sequence and its apex around a
/// length-3 rainbow, in all four rainbow arrangements.
SuiteResult fan_rainbow_exhaustive();

/// three_queue_layout validates for every spec x path length.
SuiteResult three_queue_suite(const std::vector<std::vector<int>>& specs,
                              const std::vector<int>& paths);

/// Classify every pair of disjoint edges on 4 points in every order and
/// compare with the same-side characterisation.
SuiteResult crossing_characterisation();

}  // namespace boxslash
