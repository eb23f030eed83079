#pragma once

#include "tpictm/grid.hpp"

#include <vector>

namespace tpictm {

// Periodic Gaussian heat-kernel convolution on the normalized grid, realized
// as the exact heat semigroup in frequency space: forward DFT, pointwise
// multiply by exp(-4 pi^2 tau |xi|^2), inverse DFT. Exact on the torus,
// O(N log N), and the semigroup/mass-conservation properties hold to
// roundoff for every tau.

/// Per-frequency damping factors of the heat semigroup for one grid shape.
/// The zero-frequency multiplier is exactly 1 (unit kernel mass); all
/// multipliers lie in (0, 1] and are symmetric under frequency negation.
struct HeatMultiplier {
    double tau = 0.0;
    int rows = 0;
    int cols = 0;
    std::vector<double> multipliers;  // full rows x cols grid of DFT bins

    double at(int p, int q) const {
        return multipliers[static_cast<std::size_t>(p) * cols + q];
    }
};

/// Multiplier exp(-4 pi^2 tau (xi_p^2 + xi_q^2)) per integer DFT bin, where
/// xi are the physical frequencies of the normalized domain (side lengths
/// rows*spacing, cols*spacing). tau = 0 yields the identity. tau < 0 errors.
HeatMultiplier build_multiplier(double tau, int rows, int cols, double spacing);

/// G_tau * field under periodic boundary conditions.
ScalarField convolve(const ScalarField& field, const HeatMultiplier& mult);

/// Boundary length of the foreground segment:
/// sqrt(pi/tau) * sum_x u(x) (G_tau*(1-u))(x) h^2.
/// Converges to the true perimeter as tau -> 0 until grid resolution limits
/// accuracy. tau must be positive.
double perimeter_estimate(const BinaryMask& u, double tau);

}  // namespace tpictm
