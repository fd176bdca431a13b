#pragma once

#include "sogdd/imageops.hpp"

namespace sogdd {

/// Baseline 8-bit grayscale JPEG via libjpeg. Samples are rounded and clamped
/// to [0, 255] before encoding.
class LibjpegCodec final : public ImageCodec {
 public:
  std::vector<std::uint8_t> encode(const GrayImage& img, int quality) const override;
  GrayImage decode(std::span<const std::uint8_t> bytes) const override;
};

}  // namespace sogdd
