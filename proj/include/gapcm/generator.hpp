#ifndef GAPCM_GENERATOR_HPP
#define GAPCM_GENERATOR_HPP

#include <cstdint>

#include "gapcm/core.hpp"
#include "gapcm/rational.hpp"

namespace gapcm {

struct GenParams {
    std::int64_t n = 40;             ///< nodes per layer
    Rational f_dm{1, 5};             ///< dummy fraction in [0, 1]
    Rational deg_avg{3};             ///< average real degree, > 0
    std::uint64_t seed = 1;
};

/// Throws InputError unless n >= 1, 0 <= f_dm <= 1 and deg_avg > 0.
void validate_params(const GenParams& params);

/// floor(n * f_dm) dummies per layer.
std::int64_t dummy_count(const GenParams& params);
/// floor(n_r * min(n_r, deg_avg)) real-real edges.
std::int64_t real_edge_count(const GenParams& params);

/**
 * @brief seeded random two-layer instance.
 *
 * Ids: bottom reals 0..n_r-1, bottom dummies n_r..n-1, top reals n..n+n_r-1,
 * top dummies n+n_r..2n-1. Random draws, in order, from std::mt19937_64(seed)
 * with rejection sampling for bounded integers:
 *   1. the real edges, by partial Fisher-Yates over the n_r * n_r pair indices
 *      (pair index = bottom * n_r + top);
 *   2. one uniform real bottom neighbor per top dummy;
 *   3. one uniform real top neighbor per bottom dummy;
 *   4. pi1, a Fisher-Yates shuffle of the bottom ids in generation order.
 * When n_r = 0 there are no real targets, and steps 2-3 become a random
 * matching of top dummies to bottom dummies (one shuffle of the top dummies).
 */
BipartiteInstance generate(const GenParams& params);

}  // namespace gapcm

#endif  // GAPCM_GENERATOR_HPP
