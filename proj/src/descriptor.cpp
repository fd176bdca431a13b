#include "sogdd/descriptor.hpp"

#include <cmath>
#include <limits>

namespace sogdd {
namespace {

std::vector<std::size_t> nearest(const std::vector<PatchDescriptor>& from,
                                 const std::vector<PatchDescriptor>& to) {
  std::vector<std::size_t> out(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      const double d = ssd(from[i], to[j]);
      if (d < best) {
        best = d;
        out[i] = j;
      }
    }
  }
  return out;
}

}  // namespace

PatchDescriptor describe_patch(const GrayImage& img, int x, int y) {
  PatchDescriptor d{};
  std::size_t k = 0;
  double mean = 0.0;
  for (int dy = -kPatchRadius; dy <= kPatchRadius; ++dy)
    for (int dx = -kPatchRadius; dx <= kPatchRadius; ++dx) {
      d[k] = img.clamped(x + dx, y + dy);
      mean += d[k++];
    }
  mean /= kPatchSize;
  double var = 0.0;
  for (double& v : d) {
    v -= mean;
    var += v * v;
  }
  const double sd = std::sqrt(var / kPatchSize);
  if (sd < 1e-12) {
    d.fill(0.0);
    return d;
  }
  for (double& v : d) v /= sd;
  return d;
}

std::vector<PatchDescriptor> describe(const GrayImage& img, const CornerList& corners) {
  std::vector<PatchDescriptor> out;
  out.reserve(corners.size());
  for (const auto& c : corners) out.push_back(describe_patch(img, c.x, c.y));
  return out;
}

double ssd(const PatchDescriptor& a, const PatchDescriptor& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<std::pair<std::size_t, std::size_t>> mutual_nearest_neighbours(
    const std::vector<PatchDescriptor>& a, const std::vector<PatchDescriptor>& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (a.empty() || b.empty()) return out;
  const auto ab = nearest(a, b);
  const auto ba = nearest(b, a);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (ba[ab[i]] == i) out.emplace_back(i, ab[i]);
  return out;
}

std::vector<PointPair> match_corners(const GrayImage& img1, const CornerList& c1,
                                     const GrayImage& img2, const CornerList& c2) {
  const auto pairs = mutual_nearest_neighbours(describe(img1, c1), describe(img2, c2));
  std::vector<PointPair> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    out.push_back({{double(c1[i].x), double(c1[i].y)}, {double(c2[j].x), double(c2[j].y)}});
  }
  return out;
}

}  // namespace sogdd
