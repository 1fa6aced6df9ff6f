#pragma once

// Monotone vertex sequences under a fixed linear order, and the
// constructive side of the non-crossing arguments built on them: every
// derive_* function returns a concrete pair of same-coloured crossing edges.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "boxslash/graph_core.hpp"
#include "boxslash/linear_layout.hpp"

namespace boxslash {

/// Monotone direction. Either is reserved for length-1 sequences, which are
/// both increasing and decreasing.
enum class Direction : std::uint8_t { Inc = 0, Dec = 1, Either = 2 };

const char* to_string(Direction d) noexcept;
Direction opposite(Direction d) noexcept;
/// Equal, or at least one is Either.
bool same_direction(Direction a, Direction b) noexcept;

using VertexSequence = std::vector<Vertex>;
using SequenceView = std::span<const Vertex>;

/// Throws input_error on an empty sequence or repeated elements.
std::optional<Direction> is_monotone(SequenceView seq, const LinearOrder& order);

enum class RelatedKind : std::uint8_t { Bundled, Rainbow };

const char* to_string(RelatedKind k) noexcept;

struct Related {
  RelatedKind kind{RelatedKind::Bundled};
  int color{0};
};

/// Related = both monotone, order consistent, and uniformly adjacent in a
/// single colour. Bundled when the directions agree (a length-1 side agrees
/// with anything), rainbow otherwise. Throws input_error on a length
/// mismatch or when the 2|A| elements are not distinct.
std::optional<Related> is_related(SequenceView a, SequenceView b, const Graph& graph,
                                  const LinearOrder& order, const EdgeColoring& coloring);

/// Perfect alternation, in either of the two orders, for same-direction
/// monotone sequences of equal length.
bool strongly_interleave(SequenceView a, SequenceView b, const LinearOrder& order);

/// Indices into a and b of strongly interleaving subsequences of maximum
/// length.
struct InterleaveWitness {
  std::vector<std::size_t> a_index;
  std::vector<std::size_t> b_index;
  /// Whether the alternation starts (in the order) with an element of a.
  bool a_first{true};

  int size() const noexcept { return static_cast<int>(a_index.size()); }
};

/// Largest k such that a and b k-interleave; 0 when the directions differ
/// or either sequence is not monotone.
int max_interleave(SequenceView a, SequenceView b, const LinearOrder& order);
InterleaveWitness interleave_witness(SequenceView a, SequenceView b, const LinearOrder& order);

/// Edge indices of the pairs (a_i, b_i); throws precondition_error when one
/// is missing.
std::vector<std::size_t> matching_edges(SequenceView a, SequenceView b, const Graph& graph);

/// Same-coloured crossing pair of edges, as edge indices.
struct CrossingPair {
  std::size_t first{0};
  std::size_t second{0};
  int color{0};
};

/// First crossing pair among the given edges that share a colour.
std::optional<CrossingPair> find_crossing(std::span<const std::size_t> edges, const Graph& graph,
                                          const LinearOrder& order,
                                          const EdgeColoring& coloring);

/// Points c, d lie on the same side of edge e (both strictly inside or both
/// outside). Points equal to an endpoint of e count as neither.
bool same_side(Vertex c, Vertex d, const Edge& e, const LinearOrder& order);

struct BundledWitness {
  /// The elements of a and b in alternation order.
  VertexSequence chain;
};

/// Checks that a bundled pair whose matching edges do not cross strongly
/// interleaves. precondition_error when the pair is not bundled or its
/// matching edges cross; lemma_violation if the conclusion fails.
BundledWitness check_bundled(SequenceView a, SequenceView b, const Graph& graph,
                             const LinearOrder& order, const EdgeColoring& coloring);

/// The four totally separated arrangements of a rainbow pair.
enum class RainbowShape : std::uint8_t {
  IncBelow,  // a_1 < ... < a_n < b_n < ... < b_1
  IncAbove,  // b_n < ... < b_1 < a_1 < ... < a_n
  DecBelow,  // a_n < ... < a_1 < b_1 < ... < b_n
  DecAbove,  // b_1 < ... < b_n < a_n < ... < a_1
};

const char* to_string(RainbowShape s) noexcept;

/// Arrangement of a rainbow pair. precondition_error when not a rainbow;
/// lemma_violation if none of the four arrangements holds.
RainbowShape check_rainbow(SequenceView a, SequenceView b, const Graph& graph,
                           const LinearOrder& order, const EdgeColoring& coloring);

/// Colour c when every apex-a_i edge exists with colour c.
std::optional<int> fan_check(SequenceView a, Vertex apex, const Graph& graph,
                             const EdgeColoring& coloring);

/// a and b 2-interleave and are fanned in one colour at distinct apexes:
/// returns two fan edges that cross.
CrossingPair derive_fan_fan_crossing(SequenceView a, Vertex apex_a, SequenceView b, Vertex apex_b,
                                     const Graph& graph, const LinearOrder& order,
                                     const EdgeColoring& coloring);

/// (a, b) is a rainbow of colour c, a and fanned c 3-interleave, and fanned
/// is fanned in colour c at apex: returns a rainbow edge and a fan edge that
/// cross.
CrossingPair derive_fan_rainbow_crossing(SequenceView a, SequenceView b, SequenceView fanned,
                                         Vertex apex, const Graph& graph,
                                         const LinearOrder& order,
                                         const EdgeColoring& coloring);

struct TransferResult {
  int before{0};  // max_interleave(a, b)
  int after{0};   // max_interleave(c, d)
};

/// a, b interleave; (a, c) and (b, d) are rainbows of one colour whose
/// edges do not cross. Asserts max_interleave(c, d) >= max_interleave(a, b) - 2.
TransferResult rainbow_interleave_transfer(SequenceView a, SequenceView b, SequenceView c,
                                           SequenceView d, const Graph& graph,
                                           const LinearOrder& order,
                                           const EdgeColoring& coloring);

struct ChainBound {
  int length{0};  // common sequence length k
  int steps{0};   // n, the number of links
  int bound{0};   // guaranteed interleave of the chain ends
  int actual{0};  // max_interleave of the chain ends
};

/// Guaranteed interleave of the ends of a strongly interleaving chain with
/// n links of length-k sequences: k for n = 1, ceil(k / n) - 1 otherwise.
int chain_interleave_bound(int length, int steps) noexcept;

/// Consecutive sequences strongly interleave, share a direction and a
/// length. Asserts the end-to-end bound; precondition_error when the chain is
/// malformed.
ChainBound chain_interleave(std::span<const VertexSequence> chain, const LinearOrder& order);

/// How a chain of sequences is closed off at one end.
struct ChainEnd {
  enum class Kind : std::uint8_t { Fan, Rainbow };
  Kind kind{Kind::Fan};
  Vertex apex{0};                // Fan
  VertexSequence partner;        // Rainbow: the sequence forming the rainbow

  static ChainEnd fan(Vertex apex) { return {Kind::Fan, apex, {}}; }
  static ChainEnd rainbow(VertexSequence partner) {
    return {Kind::Rainbow, 0, std::move(partner)};
  }
};

/// Length above which a bundled chain of k sequences closed by two fans, or
/// by a fan and a rainbow of its colour, cannot sit in a stack layout:
/// 10 * 2^k.
long long bundled_chain_length_bound(int k) noexcept;
/// Interleave above which two related chains of k sequences closed by fans
/// (or a fan and a rainbow) cannot sit in a stack layout: 10 * 4^k.
long long related_chains_interleave_bound(int k) noexcept;

/// Bundled chain A_1 ~ ... ~ A_k closed at both ends (at least one end a
/// fan, the other a fan or a rainbow of the fan colour). Follows the
/// interleave propagation and returns a same-coloured crossing among the
/// chain's matching edges, fan edges and rainbow edges, or nullopt when none
/// exists. Throws lemma_violation if none exists although the sequences are
/// longer than bundled_chain_length_bound(k).
std::optional<CrossingPair> derive_bundled_chain_crossing(
    std::span<const VertexSequence> chain, const ChainEnd& first, const ChainEnd& last,
    const Graph& graph, const LinearOrder& order, const EdgeColoring& coloring);

/// Two related chains A_1..A_k and B_1..B_k (A_p, B_p same direction; the
/// links A_p~A_{p+1} and B_p~B_{p+1} related) closed at A_k, B_k by fans, or
/// by a fan and a rainbow of the fan colour. Returns a same-coloured
/// crossing or nullopt; lemma_violation when none exists although A_1, B_1
/// interleave beyond related_chains_interleave_bound(k).
std::optional<CrossingPair> derive_related_chains_crossing(
    std::span<const VertexSequence> a_chain, std::span<const VertexSequence> b_chain,
    const ChainEnd& a_end, const ChainEnd& b_end, const Graph& graph, const LinearOrder& order,
    const EdgeColoring& coloring);

}  // namespace boxslash
