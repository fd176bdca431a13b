#include "sogdd/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sogdd/errors.hpp"

namespace sogdd {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw ParameterError("image dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
}

}  // namespace

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  if (!std::isfinite(fill)) throw ParameterError("image fill value must be finite");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ParameterError("image data length does not match dimensions");
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw ParameterError("image samples must be finite");
  }
}

double GrayImage::clamped(int x, int y) const noexcept {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

GrayImage GrayImage::transposed() const {
  GrayImage out(height_, width_);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) out.at(y, x) = at(x, y);
  return out;
}

}  // namespace sogdd
