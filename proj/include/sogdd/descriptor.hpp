/**
 * @file descriptor.hpp
 * @brief Minimal patch descriptor for exercising the MMA protocol.
 *
 * This is plumbing only: an 11 x 11 patch normalised to zero mean and unit
 * variance, compared by sum of squared differences. Scores obtained with it
 * are not comparable to learned-descriptor benchmarks.
 */
#pragma once

#include <array>
#include <vector>

#include "sogdd/detector.hpp"
#include "sogdd/evaluation.hpp"
#include "sogdd/image.hpp"

namespace sogdd {

inline constexpr int kPatchRadius = 5;
inline constexpr int kPatchSize = (2 * kPatchRadius + 1) * (2 * kPatchRadius + 1);

using PatchDescriptor = std::array<double, kPatchSize>;

/// Patch around (x, y) with replicate boundary. A flat patch maps to zeros.
PatchDescriptor describe_patch(const GrayImage& img, int x, int y);

std::vector<PatchDescriptor> describe(const GrayImage& img, const CornerList& corners);

double ssd(const PatchDescriptor& a, const PatchDescriptor& b) noexcept;

/// Index pairs (i, j) where j is the nearest neighbour of i and i is the
/// nearest neighbour of j. Ties go to the lower index. Ordered by i.
std::vector<std::pair<std::size_t, std::size_t>> mutual_nearest_neighbours(
    const std::vector<PatchDescriptor>& a, const std::vector<PatchDescriptor>& b);

/// Detects nothing itself: describes both corner sets and returns the mutual
/// nearest-neighbour correspondences as point pairs.
std::vector<PointPair> match_corners(const GrayImage& img1, const CornerList& c1,
                                     const GrayImage& img2, const CornerList& c2);

}  // namespace sogdd
