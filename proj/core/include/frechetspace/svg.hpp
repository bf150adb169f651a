#pragma once

#include "frechetspace/morph.hpp"

#include <string>

namespace frechetspace {

/// Deterministic SVG strip for a planar morph: one thumbnail per frame, left
/// to right, with event markers. Throws for curves outside dimension 2.
std::string morph_strip_svg(const MorphSequence& seq);

}  // namespace frechetspace
