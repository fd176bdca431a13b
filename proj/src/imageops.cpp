#include "sogdd/imageops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sogdd/errors.hpp"

namespace sogdd {

GrayImage pad_replicate(const GrayImage& img, int margin) {
  if (margin < 0) throw ParameterError("pad margin must be non-negative");
  if (margin == 0) return img;
  GrayImage out(img.width() + 2 * margin, img.height() + 2 * margin);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = img.clamped(x - margin, y - margin);
  return out;
}

double sample_bilinear(const GrayImage& img, double x, double y) noexcept {
  x = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  if (fx == 0.0 && fy == 0.0) return img.at(x0, y0);
  const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
  const double bottom = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
  return (1.0 - fy) * top + fy * bottom;
}

WarpResult warp(const GrayImage& img, const AffineTransform& t) {
  const double w = img.width();
  const double h = img.height();
  const Point2 extent[4] = {{-0.5, -0.5}, {w - 0.5, -0.5}, {-0.5, h - 0.5}, {w - 0.5, h - 0.5}};
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& p : extent) {
    const Point2 q = t.apply(p);
    min_x = std::min(min_x, q.x);
    min_y = std::min(min_y, q.y);
    max_x = std::max(max_x, q.x);
    max_y = std::max(max_y, q.y);
  }
  // Snap away rounding noise such as cos(pi/2) != 0 before taking ceilings.
  auto span_px = [](double lo, double hi) {
    const double s = hi - lo;
    return std::max(1, static_cast<int>(std::ceil(s - 1e-9)));
  };
  const int out_w = span_px(min_x, max_x);
  const int out_h = span_px(min_y, max_y);

  const AffineTransform forward = t.translated({-0.5 - min_x, -0.5 - min_y});
  const AffineTransform backward = forward.inverse();

  GrayImage out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Point2 src = backward.apply({static_cast<double>(x), static_cast<double>(y)});
      out.at(x, y) = sample_bilinear(img, src.x, src.y);
    }
  }
  return {std::move(out), forward};
}

GrayImage add_gaussian_noise(const GrayImage& img, double stddev, std::uint64_t seed) {
  if (!(stddev >= 0.0)) throw ParameterError("noise stddev must be non-negative");
  if (stddev == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, stddev);
  GrayImage out = img;
  for (double& v : out.data()) v += noise(rng);
  return out;
}

GrayImage jpeg_roundtrip(const GrayImage& img, int quality, const ImageCodec* codec) {
  if (codec == nullptr) throw CapabilityError("no JPEG codec available");
  if (quality < 1 || quality > 100) throw ParameterError("JPEG quality must be in [1, 100]");
  const auto bytes = codec->encode(img, quality);
  GrayImage out = codec->decode(bytes);
  if (out.width() != img.width() || out.height() != img.height()) {
    throw FormatError("JPEG codec changed image dimensions");
  }
  return out;
}

}  // namespace sogdd
