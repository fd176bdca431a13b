/**
 * @file imageops.hpp
 * @brief Padding, geometric warping and photometric degradations.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sogdd/geometry.hpp"
#include "sogdd/image.hpp"

namespace sogdd {

/// Grows the image by `margin` on every side, replicating the nearest edge pixel.
GrayImage pad_replicate(const GrayImage& img, int margin);

struct WarpResult {
  GrayImage image;
  /// Maps input pixel centres to output pixel centres, including the shift
  /// that places the transformed image extent inside the output canvas.
  AffineTransform forward;
};

/// Inverse-mapped bilinear warp. The output canvas is the bounding box of the
/// transformed input extent [-0.5, w-0.5] x [-0.5, h-0.5]; samples falling
/// outside the input take the nearest edge value.
WarpResult warp(const GrayImage& img, const AffineTransform& t);

/// Bilinear sample at a real position; coordinates are clamped to the image.
double sample_bilinear(const GrayImage& img, double x, double y) noexcept;

/// Adds i.i.d. N(0, stddev^2) samples drawn in row-major order from a
/// mt19937_64 seeded with `seed`. Throws ParameterError for stddev < 0.
GrayImage add_gaussian_noise(const GrayImage& img, double stddev, std::uint64_t seed);

/// Encoder/decoder pair for lossy round trips. Implementations live outside
/// the numeric core (see jpeg_codec.hpp).
class ImageCodec {
 public:
  virtual ~ImageCodec() = default;
  virtual std::vector<std::uint8_t> encode(const GrayImage& img, int quality) const = 0;
  virtual GrayImage decode(std::span<const std::uint8_t> bytes) const = 0;
};

/// Encodes then decodes through `codec`. Throws CapabilityError when codec is
/// null and ParameterError for quality outside [1, 100].
GrayImage jpeg_roundtrip(const GrayImage& img, int quality, const ImageCodec* codec);

}  // namespace sogdd
