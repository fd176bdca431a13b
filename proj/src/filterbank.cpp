#include "sogdd/filterbank.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "sogdd/errors.hpp"
#include "sogdd/imageops.hpp"
#include "sogdd/parallel.hpp"

namespace sogdd {

namespace {

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive");
}

void check_radius(int radius) {
  if (radius < 1) throw ParameterError("kernel radius must be at least 1");
}

}  // namespace

Kernel2D::Kernel2D(int radius, std::vector<double> taps, double sigma, std::optional<double> theta)
    : radius_(radius), taps_(std::move(taps)), sigma_(sigma), theta_(theta) {
  check_radius(radius);
  if (taps_.size() != static_cast<std::size_t>(side() * side())) {
    throw ParameterError("kernel tap count does not match radius");
  }
}

double Kernel2D::sum() const noexcept { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

Kernel2D Kernel2D::transposed() const {
  std::vector<double> taps(taps_.size());
  for (int dy = -radius_; dy <= radius_; ++dy)
    for (int dx = -radius_; dx <= radius_; ++dx)
      taps[static_cast<std::size_t>((dy + radius_) * side() + dx + radius_)] = tap(dy, dx);
  std::optional<double> theta;
  if (theta_) theta = std::numbers::pi / 2.0 - *theta_;
  return Kernel2D(radius_, std::move(taps), sigma_, theta);
}

double gaussian(double x, double y, double sigma) noexcept {
  const double s2 = sigma * sigma;
  return std::exp(-(x * x + y * y) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

double sogdd(double x, double y, double sigma, double theta) noexcept {
  const double s2 = sigma * sigma;
  const double u = x * std::cos(theta) + y * std::sin(theta);
  return (u * u / s2 - 1.0) / s2 * gaussian(x, y, sigma);
}

int kernel_radius(double sigma) {
  check_sigma(sigma);
  return static_cast<int>(std::ceil(4.0 * sigma)) + 1;
}

Kernel2D gaussian_kernel(double sigma, int radius) {
  check_sigma(sigma);
  check_radius(radius);
  const int side = 2 * radius + 1;
  std::vector<double> taps(static_cast<std::size_t>(side * side));
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      taps[static_cast<std::size_t>((dy + radius) * side + dx + radius)] = gaussian(dx, dy, sigma);
  const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
  for (double& t : taps) t /= total;
  return Kernel2D(radius, std::move(taps), sigma);
}

Kernel2D sogdd_kernel(double sigma, double theta, int radius) {
  check_sigma(sigma);
  check_radius(radius);
  const int side = 2 * radius + 1;
  std::vector<double> taps(static_cast<std::size_t>(side * side));
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      taps[static_cast<std::size_t>((dy + radius) * side + dx + radius)] =
          sogdd(dx, dy, sigma, theta);
  const double mean = std::accumulate(taps.begin(), taps.end(), 0.0) / static_cast<double>(taps.size());
  for (double& t : taps) t -= mean;
  return Kernel2D(radius, std::move(taps), sigma, theta);
}

FilterBank::FilterBank(double sigma, int orientations) : sigma_(sigma) {
  check_sigma(sigma);
  if (orientations < 2) throw ParameterError("filter bank needs at least 2 orientations");
  const int radius = kernel_radius(sigma);
  kernels_.reserve(static_cast<std::size_t>(orientations));
  for (int k = 0; k < orientations; ++k) {
    kernels_.push_back(sogdd_kernel(sigma, k * std::numbers::pi / orientations, radius));
  }
}

FilterBank::FilterBank(std::vector<Kernel2D> kernels) : kernels_(std::move(kernels)) {
  if (kernels_.empty()) throw ParameterError("filter bank needs at least one kernel");
  sigma_ = kernels_.front().sigma();
  for (const auto& k : kernels_) {
    if (k.sigma() != sigma_ || k.radius() != kernels_.front().radius()) {
      throw ParameterError("bank kernels must share sigma and radius");
    }
  }
}

FilterBank build_bank(double sigma, int orientations) { return FilterBank(sigma, orientations); }

ResponseStack::ResponseStack(int width, int height, int orientations, bool absolute)
    : width_(width), height_(height), k_(orientations), absolute_(absolute) {
  if (width < 1 || height < 1 || orientations < 1) {
    throw ParameterError("response stack dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(width) * height * orientations, 0.0);
}

GrayImage ResponseStack::channel(int k) const {
  GrayImage out(width_, height_);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) out.at(x, y) = at(x, y, k);
  return out;
}

ResponseStack convolve_bank(const GrayImage& img, const FilterBank& bank, bool take_abs) {
  const int r = bank.radius();
  const GrayImage padded = pad_replicate(img, r);
  ResponseStack stack(img.width(), img.height(), bank.size(), take_abs);

  parallel_for(img.height(), [&](int y) {
    for (int x = 0; x < img.width(); ++x) {
      auto out = stack.at(x, y);
      const double centre = img.at(x, y);
      for (int k = 0; k < bank.size(); ++k) {
        const Kernel2D& kernel = bank[k];
        // (I(n - m) - I(n)) psi(m), with m = (mx, my); padded coordinates shift
        // by r. Taps sum to zero, so the centre value drops out and an integer
        // intensity offset cancels exactly on integer-valued images.
        auto term = [&](int mx, int my) {
          return (padded.at(x + r - mx, y + r - my) - centre) * kernel.tap(mx, my);
        };
        // Mirror taps (a, b) and (b, a) are added pairwise before accumulation so
        // that transposing image and kernel reproduces the transposed result exactly.
        double acc = 0.0;
        for (int my = -r; my <= r; ++my) {
          acc += term(my, my);
          for (int mx = my + 1; mx <= r; ++mx) acc += term(mx, my) + term(my, mx);
        }
        out[static_cast<std::size_t>(k)] = take_abs ? std::abs(acc) : acc;
      }
    }
  });
  return stack;
}

}  // namespace sogdd
