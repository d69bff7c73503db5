#pragma once

#include <vector>

#include "pseudobox/box.hpp"
#include "pseudobox/rng.hpp"

namespace pseudobox {

// DimensionRelative: offsets are normal draws scaled by the box's own
// width/height, so perturbation is translation-invariant.
// LiteralCoordinate: each corner coordinate is multiplied by (1 + xi),
// so perturbation grows with distance from the image origin. Kept as an
// explicit mode for fidelity experiments.
enum class JitterMode { DimensionRelative, LiteralCoordinate };

struct JitterConfig {
    int n_j = 10;
    double sigma_j = 0.06;
    JitterMode mode = JitterMode::DimensionRelative;

    void validate() const;
};

// Samples n_j perturbed copies of b. Outputs are corner-sorted; no
// clipping to the image at this stage.
std::vector<Box> jitter_box(const Box& b, const JitterConfig& cfg, SeededRng& rng);

}  // namespace pseudobox
