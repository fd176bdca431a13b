/**
 * @file filterbank.hpp
 * @brief Discrete Gaussian and second-order Gaussian directional derivative
 *        kernels, and the K-orientation response stack.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sogdd/image.hpp"

namespace sogdd {

/// Square (2r+1)x(2r+1) kernel; taps are row-major with tap(dx, dy) at
/// offset (dx, dy) in [-r, r]^2.
class Kernel2D {
 public:
  Kernel2D(int radius, std::vector<double> taps, double sigma,
           std::optional<double> theta = std::nullopt);

  int radius() const noexcept { return radius_; }
  int side() const noexcept { return 2 * radius_ + 1; }
  double sigma() const noexcept { return sigma_; }
  std::optional<double> theta() const noexcept { return theta_; }

  double tap(int dx, int dy) const noexcept {
    return taps_[static_cast<std::size_t>((dy + radius_) * side() + (dx + radius_))];
  }
  std::span<const double> taps() const noexcept { return taps_; }
  double sum() const noexcept;

  /// Kernel with the x and y axes swapped.
  Kernel2D transposed() const;

 private:
  int radius_;
  std::vector<double> taps_;
  double sigma_;
  std::optional<double> theta_;
};

/// Continuous isotropic Gaussian g(x, y) = exp(-(x^2+y^2)/(2 sigma^2)) / (2 pi sigma^2).
double gaussian(double x, double y, double sigma) noexcept;

/// Continuous second derivative of g along direction theta:
/// (1/sigma^2) ((x cos t + y sin t)^2 / sigma^2 - 1) g(x, y).
double sogdd(double x, double y, double sigma, double theta) noexcept;

/// Radius rule shared by every bank: ceil(4 sigma) + 1.
int kernel_radius(double sigma);

/// Gaussian sampled at integer offsets and normalised to unit sum.
Kernel2D gaussian_kernel(double sigma, int radius);

/// Directional second-derivative kernel sampled at integer offsets, with the
/// tap mean subtracted so that the taps sum to zero.
Kernel2D sogdd_kernel(double sigma, double theta, int radius);

/// K kernels at orientations k*pi/K, k = 0..K-1, sharing sigma and radius.
class FilterBank {
 public:
  /// Throws ParameterError for sigma <= 0 or K < 2.
  FilterBank(double sigma, int orientations);

  /// Bank from explicit kernels; all must share sigma and radius.
  explicit FilterBank(std::vector<Kernel2D> kernels);

  double sigma() const noexcept { return sigma_; }
  int size() const noexcept { return static_cast<int>(kernels_.size()); }
  int radius() const noexcept { return kernels_.front().radius(); }
  const Kernel2D& operator[](int k) const { return kernels_[static_cast<std::size_t>(k)]; }
  const std::vector<Kernel2D>& kernels() const noexcept { return kernels_; }

 private:
  double sigma_;
  std::vector<Kernel2D> kernels_;
};

FilterBank build_bank(double sigma, int orientations);

/// Per-pixel K-vectors of filter responses, stored pixel-major
/// (the K responses of one pixel are contiguous).
class ResponseStack {
 public:
  ResponseStack(int width, int height, int orientations, bool absolute);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int orientations() const noexcept { return k_; }
  bool absolute() const noexcept { return absolute_; }

  std::span<const double> at(int x, int y) const noexcept {
    return {values_.data() + offset(x, y), static_cast<std::size_t>(k_)};
  }
  std::span<double> at(int x, int y) noexcept {
    return {values_.data() + offset(x, y), static_cast<std::size_t>(k_)};
  }
  double at(int x, int y, int k) const noexcept { return values_[offset(x, y) + k]; }

  std::span<const double> values() const noexcept { return values_; }

  /// Response of orientation k as an image.
  GrayImage channel(int k) const;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * static_cast<std::size_t>(k_);
  }

  int width_;
  int height_;
  int k_;
  bool absolute_;
  std::vector<double> values_;
};

/// Correlates the replicate-padded image with every kernel:
/// l_k(n) = sum_m (I(n - m) - I(n)) psi_k(m), which equals sum_m I(n - m) psi_k(m)
/// for zero-sum kernels. Taps are accumulated in a fixed order,
/// so output is independent of the thread count.
ResponseStack convolve_bank(const GrayImage& img, const FilterBank& bank, bool take_abs);

}  // namespace sogdd
