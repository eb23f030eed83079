#pragma once

#include "tpictm/grid.hpp"

#include <string>

namespace tpictm {

// Lossless image file I/O: 8-bit grayscale/RGB PNG plus binary and ASCII
// PGM/PPM. Intensities are rescaled to [0, 1] on load (v / 255) and
// quantized with rounding on save. Format is chosen by file extension on
// save and by magic bytes on load.

/// Decodes a PNG/PGM/PPM file. Grayscale yields 1 channel, color 3; palette
/// and alpha PNG variants are expanded/stripped. Errors on unsupported or
/// corrupt input and on images smaller than 3x3.
ImageGrid load_image(const std::string& path);

/// Writes an image as 8-bit grayscale (1 channel) or RGB (3 channels).
/// Supported extensions: .png, .pgm (grayscale), .ppm (color).
void save_image(const ImageGrid& image, const std::string& path);

/// Writes a mask as an 8-bit grayscale image, foreground 255, background 0.
void save_mask(const BinaryMask& mask, const std::string& path);

/// Reads a mask back from a grayscale image: values >= 0.5 are foreground.
/// load_mask(save_mask(m)) == m for every mask.
BinaryMask load_mask(const std::string& path);

}  // namespace tpictm
