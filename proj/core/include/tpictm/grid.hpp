#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tpictm {

// All pixel containers share one domain model: a periodic rectangular grid
// whose longest side has physical length 1, so pixel spacing is
// 1 / max(rows, cols). Diffusion times and regularization weights keep their
// meaning across image resolutions under this normalization.
//
// Grids smaller than 3x3 are rejected everywhere; the topology predicates
// need a full punctured 3x3 neighborhood around every pixel.

/// Maps any integer index onto [0, n). wrap(i + n, n) == wrap(i, n).
int periodic_wrap(int i, int n);

/// Pixel spacing of the normalized domain.
double grid_spacing(int rows, int cols);

/// Multichannel intensity image f with values in [0, 1], channel-interleaved.
struct ImageGrid {
    int rows = 0;
    int cols = 0;
    int channels = 0;
    double spacing = 0.0;
    std::vector<double> values;  // (row, col, channel) interleaved

    /// Validates shape (>= 3x3, channels >= 1) and the [0,1] range.
    ImageGrid(int rows, int cols, int channels, std::vector<double> values);

    static ImageGrid constant(int rows, int cols, int channels, double value);

    double at(int r, int c, int ch = 0) const {
        return values[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
    }
    double& at(int r, int c, int ch = 0) {
        return values[(static_cast<std::size_t>(r) * cols + c) * channels + ch];
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(rows) * cols; }
};

/// Characteristic function u of the foreground segment, one bit per pixel.
struct BinaryMask {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask(int rows, int cols, std::uint8_t fill = 0);
    /// Validates shape and that every entry is exactly 0 or 1.
    BinaryMask(int rows, int cols, std::vector<std::uint8_t> bits);

    std::uint8_t at(int r, int c) const {
        return bits[static_cast<std::size_t>(r) * cols + c];
    }
    void set(int r, int c, std::uint8_t v) {
        bits[static_cast<std::size_t>(r) * cols + c] = v;
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(rows) * cols; }
    /// Number of foreground pixels.
    long sum() const;

    bool operator==(const BinaryMask&) const = default;
};

/// Real-valued per-pixel field. All values are finite by construction.
struct ScalarField {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    ScalarField(int rows, int cols, double fill = 0.0);
    /// Validates shape and finiteness (rejects NaN/Inf).
    ScalarField(int rows, int cols, std::vector<double> values);

    double at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * cols + c];
    }
    double& at(int r, int c) {
        return values[static_cast<std::size_t>(r) * cols + c];
    }
    std::size_t pixel_count() const { return static_cast<std::size_t>(rows) * cols; }
};

/// Number of pixels where the two masks differ. For binary fields this is
/// ||a - b||_2^2 up to the h^2 quadrature weight, so it doubles as the
/// solver's stopping metric.
long mask_flip_count(const BinaryMask& a, const BinaryMask& b);

/// The mask as a 0/1-valued scalar field.
ScalarField mask_to_field(const BinaryMask& u);

}  // namespace tpictm
