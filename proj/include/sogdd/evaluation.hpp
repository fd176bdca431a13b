/**
 * @file evaluation.hpp
 * @brief Ground-truth matching, repeatability and mean matching accuracy.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sogdd/detector.hpp"
#include "sogdd/geometry.hpp"

namespace sogdd {

struct GroundTruth {
  std::vector<Point2> points;
  std::string source;
};

/// Reads a CSV with columns x,y. Throws FormatError on duplicates.
GroundTruth read_ground_truth_csv(const std::filesystem::path& path);

/// Throws ParameterError when a point lies outside a width x height image.
void check_ground_truth_bounds(const GroundTruth& gt, int width, int height);

std::vector<Point2> corner_points(const CornerList& corners);

struct MatchedPair {
  std::size_t first = 0;   ///< index into the first set
  std::size_t second = 0;  ///< index into the second set
  double distance = 0.0;
};

/// One-to-one greedy matching: candidate pairs with distance <= radius are
/// taken in ascending (distance, first, second) order while both ends are free.
std::vector<MatchedPair> greedy_match(const std::vector<Point2>& a, const std::vector<Point2>& b,
                                      double radius);

struct MatchReport {
  std::vector<MatchedPair> pairs;  ///< first = detection, second = ground truth
  std::size_t missed = 0;
  std::size_t false_detections = 0;
  double localization_error = 0.0;  ///< RMS distance over matched pairs
  bool no_matches = false;          ///< N_m == 0; localization_error is then 0
};

/// Throws ParameterError for empty ground truth or delta <= 0.
MatchReport match_to_gt(const CornerList& detected, const GroundTruth& gt, double delta = 2.0);

/// CSV "missed,false,Le".
void write_match_csv(const MatchReport& report, const std::filesystem::path& path);

struct RepeatabilityResult {
  std::size_t lb = 0;  ///< reference detections
  std::size_t ld = 0;  ///< deformed detections
  std::size_t lr = 0;  ///< matched pairs
  double ravg = 0.0;
  bool degenerate = false;  ///< lb or ld was zero
  std::string diagnostic;
};

/// (L_r / 2)(1/L_b + 1/L_d); 0 when either count is zero.
double repeatability_score(std::size_t lb, std::size_t ld, std::size_t lr) noexcept;

/// Maps reference corners through `forward` and matches them one-to-one to
/// the deformed corners within `dist` pixels.
RepeatabilityResult average_repeatability(const std::vector<Point2>& reference,
                                          const std::vector<Point2>& deformed,
                                          const Homography& forward, double dist = 4.0);
RepeatabilityResult average_repeatability(const std::vector<Point2>& reference,
                                          const std::vector<Point2>& deformed,
                                          const AffineTransform& forward, double dist = 4.0);

Point2 homography_project(const Point2& p, const Homography& h);

/// Reads nine whitespace-separated reals (row-major 3x3).
Homography read_homography(const std::filesystem::path& path);
void write_homography(const Homography& h, const std::filesystem::path& path);

/// A putative correspondence: `first` lies in image 1, `second` in image 2.
using PointPair = std::pair<Point2, Point2>;

struct MmaRow {
  int pth = 0;
  std::size_t possible = 0;
  std::size_t matched = 0;
  double mma = 0.0;
};

struct MmaReport {
  std::vector<MmaRow> rows;
  bool empty = false;  ///< no candidate pairs; every MMA is reported as 0
};

/// For each P_th in [1, max_pth]: pairs whose ||second - H(first)|| < P_th.
MmaReport mma(const std::vector<PointPair>& pairs, const Homography& h, int max_pth = 10);

/// CSV "Pth,Npossible,Nmatch,MMA".
void write_mma_csv(const MmaReport& report, const std::filesystem::path& path);

}  // namespace sogdd
