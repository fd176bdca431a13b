/**
 * @file detector.hpp
 * @brief Corner detection from the K x K correlation matrix of absolute
 *        directional second-derivative responses.
 *
 * For each pixel n the K-vectors of |l_k| inside a (p+1) x (q+1) block form
 * Lambda(n) = sum over the block of w w^T. The corner measure is
 * prod(lambda_k) / (sum(lambda_k) + varsigma); corners are strict local
 * maxima of the measure above a threshold.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "sogdd/filterbank.hpp"
#include "sogdd/image.hpp"
#include "sogdd/symmetric.hpp"

namespace sogdd {

inline constexpr double kMeasureEpsilon = 2.22e-16;

enum class MeasureMethod {
  eigen,        ///< product / sum of Jacobi eigenvalues
  determinant,  ///< det via LDL^T over trace
};

struct DetectorConfig {
  double sigma2 = 1.2;
  int orientations = 8;
  int block_p = 6;  ///< block width is block_p + 1
  int block_q = 6;  ///< block height is block_q + 1
  double threshold = 1e9;
  int nms_radius = 1;
  /// Pixels excluded at every border; defaults to kernel radius + max(p, q)/2.
  std::optional<int> border_margin;
  MeasureMethod measure = MeasureMethod::eigen;

  double sigma() const;
  int effective_margin() const;
  /// Throws ParameterError unless sigma2 > 1, p and q even and >= 2, K >= 2,
  /// threshold >= 0, nms radius >= 1 and margin >= max(p, q)/2.
  void validate() const;
};

/// Lambda at (x, y): the block must lie inside the stack. The accumulation runs
/// over the block in row-major order. Throws ParameterError otherwise or when
/// the stack does not hold absolute responses.
SymmetricMatrix soddc_matrix(const ResponseStack& stack, int x, int y, int p, int q);

/// prod(lambda) / (sum(lambda) + eps) from Jacobi eigenvalues. Eigenvalues in
/// [-1e-6 trace, 0) are clamped to zero; anything more negative, or an
/// asymmetric input, throws ParameterError.
double corner_measure(const SymmetricMatrix& lambda, double eps = kMeasureEpsilon);

/// det(Lambda) / (trace(Lambda) + eps) via LDL^T.
double corner_measure_determinant(const SymmetricMatrix& lambda, double eps = kMeasureEpsilon);

/// Measure map; pixels whose block does not fit are 0.
GrayImage measure_map(const ResponseStack& stack, const DetectorConfig& cfg);

struct Corner {
  int x = 0;
  int y = 0;
  double score = 0.0;

  friend bool operator==(const Corner&, const Corner&) = default;
};

/// Corners ordered by descending score, then row-major position.
using CornerList = std::vector<Corner>;

void sort_corners(CornerList& corners);

/// Strict local maxima of `map` within the (2r+1)^2 neighbourhood, ties broken
/// in favour of the row-major-first pixel, restricted to the region at least
/// `margin` pixels from every border and to values above `threshold` and 0.
CornerList local_maxima(const GrayImage& map, int radius, int margin, double threshold);

/// Full pipeline. Throws ParameterError for an invalid config or when the image
/// is not larger than 2 * margin + 1 in both dimensions.
CornerList detect(const GrayImage& img, const DetectorConfig& cfg = {});

/// CSV with header "x,y,score".
void write_corners_csv(const CornerList& corners, const std::filesystem::path& path);
CornerList read_corners_csv(const std::filesystem::path& path);

}  // namespace sogdd
