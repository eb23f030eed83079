#pragma once

#include "tpictm/convolution.hpp"
#include "tpictm/grid.hpp"

#include <vector>

namespace tpictm {

// Fidelity models pluggable into the segmentation energy. Each model
// provides the closed-form parameter update for a fixed mask and the
// per-pixel fidelity fields F1/F2 (summed over channels) consumed by the
// solver's score field and energy bookkeeping.

/// Chan-Vese parameters: one foreground and one background mean per channel.
struct CvState {
    std::vector<double> c1;
    std::vector<double> c2;
};

/// Local-intensity-fitting parameters: spatially varying fitted intensities,
/// one field per phase, channel-interleaved like ImageGrid.
struct LifState {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    std::vector<double> c1;
    std::vector<double> c2;

    double at1(int r, int c, int ch = 0) const {
        return c1[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
    }
    double at2(int r, int c, int ch = 0) const {
        return c2[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
    }
};

/// Per-pixel fidelity integrands, nonnegative everywhere.
struct FidelityFields {
    ScalarField f1;
    ScalarField f2;
};

/// Smoothed image channels G_tau1 * f, one field per channel. The smoothed
/// image is mask-independent, so the solver computes it once per run.
std::vector<ScalarField> smooth_channels(const ImageGrid& f, const HeatMultiplier& mult);

/// Chan-Vese means: c1 = sum(u * (G_tau1*f)) / sum(u) per channel, c2 the
/// complementary quotient. The denominators use sum(u) directly, which equals
/// the integral of the smoothed mask under periodic boundary conditions.
/// Errors on an all-zero or all-one mask (degenerate region).
CvState cv_update(const BinaryMask& u, const ImageGrid& f, double tau1);
CvState cv_update_presmoothed(const BinaryMask& u, const std::vector<ScalarField>& smoothed_f);

/// F_i(x) = sum over channels of (c_i - f(x))^2.
FidelityFields cv_fields(const CvState& state, const ImageGrid& f);

/// LIF fitted intensities with epsilon-guarded denominators:
/// c1 = G_delta*((G_tau1*u) f) / (G_delta*(G_tau1*u) + eps), c2 with 1-u.
LifState lif_update(const BinaryMask& u, const ImageGrid& f, double tau1, double delta,
                    double eps);
LifState lif_update_with(const BinaryMask& u, const ImageGrid& f, const HeatMultiplier& m_tau1,
                         const HeatMultiplier& m_delta, double eps);

/// F_i(y) = lambda_i * sum_ch [ (G_delta*c_i^2)(y) - 2 f(y) (G_delta*c_i)(y) + f(y)^2 ],
/// the unit-mass expansion of the local window integral, clamped at 0 to
/// absorb sub-1e-12 numerical dips.
FidelityFields lif_fields(const LifState& state, const ImageGrid& f, double delta,
                          double lambda1, double lambda2);
FidelityFields lif_fields_with(const LifState& state, const ImageGrid& f,
                               const HeatMultiplier& m_delta, double lambda1, double lambda2);

}  // namespace tpictm
