/**
 * @file suites.hpp
 * @brief Transform suites for repeatability measurement.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sogdd/detector.hpp"
#include "sogdd/evaluation.hpp"
#include "sogdd/imageops.hpp"

namespace sogdd {

enum class SuiteId { rotation, iso_scale, aniso_scale, shear, jpeg, noise };

/// Accepts "rotation", "iso", "aniso", "shear", "jpeg", "noise";
/// throws ParameterError for anything else.
SuiteId parse_suite(std::string_view name);
std::string_view to_string(SuiteId id) noexcept;

/// One transform instance: either a geometric warp or a photometric change.
struct SuiteStep {
  std::string param;  ///< CSV label
  enum class Kind { geometric, jpeg, noise } kind = Kind::geometric;
  AffineTransform transform = AffineTransform::identity();
  int quality = 0;
  double stddev = 0.0;
};

/// Parameter grid of a suite, in output order.
std::vector<SuiteStep> suite_steps(SuiteId id);

struct SuiteRow {
  std::string param;
  RepeatabilityResult result;
  bool skipped = false;  ///< JPEG row without a codec
};

struct RepeatabilityReport {
  SuiteId suite = SuiteId::rotation;
  std::vector<SuiteRow> rows;
  double mean = 0.0;  ///< mean R_avg over rows that were not skipped
};

/// Detects on `img` and on each transformed copy and scores repeatability.
/// Noise rows draw from seed + row index. JPEG rows are marked skipped when
/// `codec` is null.
RepeatabilityReport run_transform_suite(const GrayImage& img, const DetectorConfig& cfg,
                                        SuiteId suite, std::uint64_t seed,
                                        const ImageCodec* codec = nullptr);

/// CSV "suite,param,Lb,Ld,Lr,Ravg"; skipped rows carry empty counts.
void write_repeatability_csv(const RepeatabilityReport& report, const std::filesystem::path& path);

}  // namespace sogdd
