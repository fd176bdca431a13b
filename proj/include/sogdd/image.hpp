/**
 * @file image.hpp
 * @brief Real-valued single-channel image stored row-major.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sogdd {

class GrayImage {
 public:
  GrayImage() = default;

  /// Constant image. Throws ParameterError on a zero dimension or non-finite fill.
  GrayImage(int width, int height, double fill = 0.0);

  /// Takes ownership of row-major samples; data.size() must equal width*height.
  GrayImage(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double at(int x, int y) const { return data_[index(x, y)]; }
  double& at(int x, int y) { return data_[index(x, y)]; }

  /// Sample with coordinates clamped into the image (replicate boundary).
  double clamped(int x, int y) const noexcept;

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// Swaps the x and y axes.
  GrayImage transposed() const;

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

}  // namespace sogdd
