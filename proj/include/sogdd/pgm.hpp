#pragma once

#include <filesystem>

#include "sogdd/image.hpp"

namespace sogdd {

/// Reads a P2 (ASCII) or P5 (binary) graymap with maxval <= 65535.
/// Samples are returned unscaled in [0, maxval].
/// Throws FormatError for a malformed header and IoError for a missing file
/// or truncated payload.
GrayImage load_pgm(const std::filesystem::path& path);

/// Writes an 8-bit P5 graymap; samples are rounded and clamped to [0, 255].
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

/// Rounding rule used by save_pgm.
unsigned char to_byte(double v) noexcept;

}  // namespace sogdd
