#ifndef GAPCM_DRAWING_HPP
#define GAPCM_DRAWING_HPP

#include <string>

#include "gapcm/core.hpp"

namespace gapcm {

/**
 * @brief straight-line SVG drawing of the two layers.
 *
 * Bottom row in pi1 order, top row in `pi2` order, unit spacing. Real nodes are
 * circles, dummies violet squares, and every gap of `pi2` gets a dashed
 * rectangle. Throws InputError if `pi2` is not a permutation of the top layer.
 */
std::string render_drawing(const BipartiteInstance& inst, const Permutation& pi2);

}  // namespace gapcm

#endif  // GAPCM_DRAWING_HPP
