#ifndef GAPCM_HEURISTICS_HPP
#define GAPCM_HEURISTICS_HPP

#include <span>

#include "gapcm/core.hpp"
#include "gapcm/rational.hpp"

namespace gapcm {

enum class HeuristicKind { median, barycenter };

enum class DegreeParity { odd, even };

/**
 * @brief per-node sort key of the median / barycenter heuristics.
 *
 * median: pi1 position of the left median neighbor (sorted index (deg-1)/2).
 * barycenter: mean pi1 position of the neighbors, kept exact.
 * Isolated nodes get key -1.
 */
struct KeyedNode {
    NodeId id = 0;
    Rational key;
    DegreeParity degree_parity = DegreeParity::even;
};

KeyedNode heuristic_key(const InstanceView& view, std::size_t top_index, HeuristicKind kind);

/**
 * @brief orders `subset` ascending by heuristic key.
 *
 * Ties: odd degree before even degree, then ascending id. Keys only depend on
 * pi1 and the node's own neighborhood, so the result is dummy-independent.
 * Throws InputError for ids that are not top nodes.
 */
Permutation heuristic_order(const InstanceView& view, std::span<const NodeId> subset, HeuristicKind kind);
Permutation heuristic_order(const BipartiteInstance& inst, std::span<const NodeId> subset, HeuristicKind kind);

/// Orders the real top nodes of `inst` with the heuristic.
Permutation heuristic_real_order(const BipartiteInstance& inst, HeuristicKind kind);

/// Runs the heuristic on G[V1 ∪ V2r] and on G and checks that both agree on V2r.
bool is_dummy_independent_witness(const BipartiteInstance& inst, HeuristicKind kind);

}  // namespace gapcm

#endif  // GAPCM_HEURISTICS_HPP
