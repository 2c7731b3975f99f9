#ifndef GAPCM_GAP_PLACEMENT_HPP
#define GAPCM_GAP_PLACEMENT_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "gapcm/core.hpp"
#include "gapcm/heuristics.hpp"

namespace gapcm {

/**
 * @brief the fixed order of the top dummies.
 *
 * Dummies sorted ascending by the pi1 position of their unique neighbor,
 * equal neighbors by ascending id. Under this order no two dummy edges cross,
 * and every solver in this library keeps it.
 */
struct CanonicalDummyOrder {
    Permutation order;
    std::unordered_map<NodeId, std::size_t> neighbor_pos;
};

CanonicalDummyOrder canonical_dummy_order(const InstanceView& view);
CanonicalDummyOrder canonical_dummy_order(const BipartiteInstance& inst);

/**
 * @brief prefix sums of mixed crossing costs for a fixed real order and the
 * canonical dummy order.
 *
 * With R = |real_order| and D = |dummy_order|, `placement(i, t)` is the number
 * of crossings of dummy t's edge with real edges when the dummy sits at
 * boundary i (after the first i reals). prefix(i, j) sums placement(i, t) over
 * t < j, so that block(i, j0, j) = prefix(i, j) - prefix(i, j0) is
 * cr(reals[0:i), dummies[j0:j)) + cr(dummies[j0:j), reals[i:R)).
 */
class BlockCostTables {
public:
    BlockCostTables(const InstanceView& view, const Permutation& real_order, const Permutation& dummy_order);

    std::size_t real_count() const { return reals_; }
    std::size_t dummy_count() const { return dummies_; }

    Count placement(std::size_t boundary, std::size_t dummy) const {
        return prefix(boundary, dummy + 1) - prefix(boundary, dummy);
    }
    Count prefix(std::size_t boundary, std::size_t j) const { return prefix_[boundary * (dummies_ + 1) + j]; }
    Count block(std::size_t boundary, std::size_t from, std::size_t to) const {
        return prefix(boundary, to) - prefix(boundary, from);
    }

private:
    std::size_t reals_;
    std::size_t dummies_;
    std::vector<Count> prefix_;
};

/**
 * @brief optimal side-gap merge of `real_order` with the canonical dummy order.
 *
 * A dummy goes left of all reals iff the real-edge mass strictly left of its
 * neighbor is smaller than the mass strictly right of it; these dummies form a
 * prefix of the canonical order, located by binary search over prefix sums.
 * Throws InputError unless `real_order` is a permutation of the real top nodes.
 */
Permutation side_gap_merge(const InstanceView& view, const Permutation& real_order);
Permutation side_gap_merge(const BipartiteInstance& inst, const Permutation& real_order);

/// Saturating "no solution" value of the merge table; larger than any crossing count of the instance.
inline constexpr Count kUnreachable = std::numeric_limits<Count>::max() / 4;

/**
 * @brief DP over merges of the real order with the dummy order using at most g gaps.
 *
 * value(g, i, j) is the minimum number of mixed crossings when the first j
 * dummies are placed into at most g blocks, each at a boundary in 0..i.
 */
class MergeTable {
public:
    enum class Step : std::uint8_t { none, advance, block };

    MergeTable(const BlockCostTables& costs, int max_gaps);

    int max_gaps() const { return max_gaps_; }
    std::size_t real_count() const { return reals_; }
    std::size_t dummy_count() const { return dummies_; }

    Count value(int g, std::size_t i, std::size_t j) const { return dp_[cell(g, i, j)]; }
    Step step(int g, std::size_t i, std::size_t j) const { return step_[cell(g, i, j)]; }
    /// Start index j' of the last block when step(g, i, j) == Step::block.
    std::size_t block_start(int g, std::size_t i, std::size_t j) const { return from_[cell(g, i, j)]; }

    /// Boundary index (0..R) of every dummy in an optimal merge with at most max_gaps() gaps.
    std::vector<std::size_t> backtrack() const;

private:
    std::size_t cell(int g, std::size_t i, std::size_t j) const {
        return (static_cast<std::size_t>(g) * (reals_ + 1) + i) * (dummies_ + 1) + j;
    }

    int max_gaps_;
    std::size_t reals_;
    std::size_t dummies_;
    std::vector<Count> dp_;
    std::vector<Step> step_;
    std::vector<std::size_t> from_;
};

struct KGapMerge {
    Permutation permutation;
    Count mixed_crossings = 0;
};

/**
 * @brief merge of `real_order` with the canonical dummy order minimizing mixed
 * crossings subject to at most k gaps.
 *
 * Throws InputError for k < 1 or when `real_order` is not a permutation of the reals.
 */
KGapMerge k_gap_merge(const InstanceView& view, const Permutation& real_order, int k);
KGapMerge k_gap_merge(const BipartiteInstance& inst, const Permutation& real_order, int k);

enum class BaseAlgorithm { median, barycenter, exact };

inline constexpr std::chrono::duration<double> kDefaultTimeBudget{300.0};

/// Base order on G[V1 ∪ V2r] followed by side_gap_merge. Always a side-gap permutation.
Permutation solve_sidegaps(const BipartiteInstance& inst, BaseAlgorithm base,
                           std::chrono::duration<double> exact_budget = kDefaultTimeBudget);

/// Heuristic order on the reals followed by k_gap_merge; the result has at most k gaps.
Permutation solve_kgaps(const BipartiteInstance& inst, HeuristicKind base, int k);

}  // namespace gapcm

#endif  // GAPCM_GAP_PLACEMENT_HPP
