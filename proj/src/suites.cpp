#include "sogdd/suites.hpp"

#include <cmath>
#include <numbers>

#include "sogdd/csv.hpp"
#include "sogdd/errors.hpp"

namespace sogdd {
namespace {

// Grid values are generated from integers so labels and factors are exact
// decimal multiples of 0.1.
double tenths(int k) { return double(k) / 10.0; }

std::string label(double v) { return format_real(v); }

}  // namespace

SuiteId parse_suite(std::string_view name) {
  if (name == "rotation") return SuiteId::rotation;
  if (name == "iso") return SuiteId::iso_scale;
  if (name == "aniso") return SuiteId::aniso_scale;
  if (name == "shear") return SuiteId::shear;
  if (name == "jpeg") return SuiteId::jpeg;
  if (name == "noise") return SuiteId::noise;
  throw ParameterError("unknown suite '" + std::string(name) +
                       "' (expected rotation, iso, aniso, shear, jpeg or noise)");
}

std::string_view to_string(SuiteId id) noexcept {
  switch (id) {
    case SuiteId::rotation: return "rotation";
    case SuiteId::iso_scale: return "iso";
    case SuiteId::aniso_scale: return "aniso";
    case SuiteId::shear: return "shear";
    case SuiteId::jpeg: return "jpeg";
    case SuiteId::noise: return "noise";
  }
  return "unknown";
}

std::vector<SuiteStep> suite_steps(SuiteId id) {
  std::vector<SuiteStep> steps;
  switch (id) {
    case SuiteId::rotation:
      for (int k = -9; k <= 9; ++k) {
        if (k == 0) continue;
        const double angle = k * std::numbers::pi / 18.0;
        steps.push_back({label(angle), SuiteStep::Kind::geometric, AffineTransform::rotation(angle)});
      }
      break;
    case SuiteId::iso_scale:
      for (int k = 5; k <= 20; ++k) {
        if (k == 10) continue;
        steps.push_back({label(tenths(k)), SuiteStep::Kind::geometric,
                         AffineTransform::iso_scale(tenths(k))});
      }
      break;
    case SuiteId::aniso_scale:
      for (int kx = 7; kx <= 15; ++kx) {
        for (int ky = 5; ky <= 18; ++ky) {
          steps.push_back({label(tenths(kx)) + "x" + label(tenths(ky)), SuiteStep::Kind::geometric,
                           AffineTransform::aniso_scale(tenths(kx), tenths(ky))});
        }
      }
      break;
    case SuiteId::shear:
      for (int k = -10; k <= 10; ++k) {
        if (k == 0) continue;
        steps.push_back({label(tenths(k)), SuiteStep::Kind::geometric,
                         AffineTransform::shear(tenths(k))});
      }
      break;
    case SuiteId::jpeg:
      for (int q = 5; q <= 100; q += 5) {
        SuiteStep s{std::to_string(q), SuiteStep::Kind::jpeg};
        s.quality = q;
        steps.push_back(s);
      }
      break;
    case SuiteId::noise:
      for (int sd = 1; sd <= 15; ++sd) {
        SuiteStep s{std::to_string(sd), SuiteStep::Kind::noise};
        s.stddev = sd;
        steps.push_back(s);
      }
      break;
  }
  return steps;
}

RepeatabilityReport run_transform_suite(const GrayImage& img, const DetectorConfig& cfg,
                                        SuiteId suite, std::uint64_t seed,
                                        const ImageCodec* codec) {
  cfg.validate();
  const std::vector<Point2> reference = corner_points(detect(img, cfg));

  RepeatabilityReport report;
  report.suite = suite;
  const auto steps = suite_steps(suite);
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const SuiteStep& step = steps[i];
    SuiteRow row;
    row.param = step.param;
    GrayImage deformed;
    AffineTransform forward = AffineTransform::identity();
    switch (step.kind) {
      case SuiteStep::Kind::geometric: {
        WarpResult w = warp(img, step.transform);
        deformed = std::move(w.image);
        forward = w.forward;
        break;
      }
      case SuiteStep::Kind::jpeg:
        if (codec == nullptr) {
          row.skipped = true;
          report.rows.push_back(row);
          continue;
        }
        deformed = jpeg_roundtrip(img, step.quality, codec);
        break;
      case SuiteStep::Kind::noise:
        deformed = add_gaussian_noise(img, step.stddev, seed + i);
        break;
    }

    CornerList found;
    const int min_side = 2 * cfg.effective_margin() + 2;
    if (deformed.width() >= min_side && deformed.height() >= min_side) found = detect(deformed, cfg);
    row.result = average_repeatability(reference, corner_points(found), forward);
    sum += row.result.ravg;
    ++counted;
    report.rows.push_back(row);
  }
  report.mean = counted > 0 ? sum / double(counted) : 0.0;
  return report;
}

void write_repeatability_csv(const RepeatabilityReport& report, const std::filesystem::path& path) {
  CsvWriter csv(path, {"suite", "param", "Lb", "Ld", "Lr", "Ravg"});
  const std::string suite(to_string(report.suite));
  for (const auto& r : report.rows) {
    if (r.skipped) {
      csv.row({suite, r.param, "", "", "", ""});
      continue;
    }
    csv.row({suite, r.param, std::to_string(r.result.lb), std::to_string(r.result.ld),
             std::to_string(r.result.lr), format_real(r.result.ravg)});
  }
  csv.close();
}

}  // namespace sogdd
