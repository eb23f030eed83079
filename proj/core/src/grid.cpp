#include "tpictm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tpictm {

namespace {

void check_min_shape(int rows, int cols) {
    if (rows < 3 || cols < 3)
        throw std::invalid_argument("grid must be at least 3x3, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

int periodic_wrap(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

double grid_spacing(int rows, int cols) {
    return 1.0 / static_cast<double>(rows > cols ? rows : cols);
}

ImageGrid::ImageGrid(int rows_, int cols_, int channels_, std::vector<double> values_)
    : rows(rows_), cols(cols_), channels(channels_), values(std::move(values_)) {
    check_min_shape(rows, cols);
    if (channels < 1) throw std::invalid_argument("channels must be >= 1");
    if (values.size() != pixel_count() * static_cast<std::size_t>(channels))
        throw std::invalid_argument("image value array does not match rows*cols*channels");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("image intensities must lie in [0, 1]");
    spacing = grid_spacing(rows, cols);
}

ImageGrid ImageGrid::constant(int rows, int cols, int channels, double value) {
    return ImageGrid(rows, cols, channels,
                     std::vector<double>(static_cast<std::size_t>(rows) * cols * channels, value));
}

BinaryMask::BinaryMask(int rows_, int cols_, std::uint8_t fill)
    : rows(rows_), cols(cols_) {
    check_min_shape(rows, cols);
    if (fill > 1) throw std::invalid_argument("mask entries must be 0 or 1");
    bits.assign(pixel_count(), fill);
}

BinaryMask::BinaryMask(int rows_, int cols_, std::vector<std::uint8_t> bits_)
    : rows(rows_), cols(cols_), bits(std::move(bits_)) {
    check_min_shape(rows, cols);
    if (bits.size() != pixel_count())
        throw std::invalid_argument("mask bit array does not match rows*cols");
    for (std::uint8_t b : bits)
        if (b > 1) throw std::invalid_argument("mask entries must be 0 or 1");
}

long BinaryMask::sum() const {
    long s = 0;
    for (std::uint8_t b : bits) s += b;
    return s;
}

ScalarField::ScalarField(int rows_, int cols_, double fill)
    : rows(rows_), cols(cols_) {
    check_min_shape(rows, cols);
    if (!std::isfinite(fill)) throw std::invalid_argument("field values must be finite");
    values.assign(pixel_count(), fill);
}

ScalarField::ScalarField(int rows_, int cols_, std::vector<double> values_)
    : rows(rows_), cols(cols_), values(std::move(values_)) {
    check_min_shape(rows, cols);
    if (values.size() != pixel_count())
        throw std::invalid_argument("field value array does not match rows*cols");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
}

long mask_flip_count(const BinaryMask& a, const BinaryMask& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("mask_flip_count: shape mismatch");
    long flips = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        flips += a.bits[i] != b.bits[i];
    return flips;
}

ScalarField mask_to_field(const BinaryMask& u) {
    ScalarField out(u.rows, u.cols);
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        out.values[i] = static_cast<double>(u.bits[i]);
    return out;
}

}  // namespace tpictm
