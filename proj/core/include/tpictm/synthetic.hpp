#pragma once

#include "tpictm/grid.hpp"

#include <cstdint>
#include <string>

namespace tpictm {

// Deterministic test-scene generation: a named geometry rendered at
// foreground intensity 1 on background 0, plus optional additive zero-mean
// Gaussian noise clamped to [0, 1]. The noiseless geometry is returned as
// ground truth.

/// Identifier of the noise generator recorded in output metadata.
inline constexpr const char* kNoiseAlgorithm = "mt19937-64/box-muller";

struct SyntheticSpec {
    std::string scene;  // two-discs-line | star-noise | discs-with-holes | pattern-interior
    int size = 256;
    double sigma = 0.0;
    double density = 0.08;  // pattern-interior hole pitch as a fraction of the side
    std::uint64_t seed = 1;
};

struct SyntheticScene {
    ImageGrid image;
    BinaryMask ground_truth;
};

/// Pure function of the spec including the seed. Unknown scene names error.
SyntheticScene generate(const SyntheticSpec& spec);

}  // namespace tpictm
