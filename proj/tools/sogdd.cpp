// Command-line front end: detection, model checks, scale analysis and
// evaluation protocols. Exit codes: 0 ok, 1 invalid input, 2 I/O, 3 failed
// numerical verification.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sogdd/admissibility.hpp"
#include "sogdd/corner_model.hpp"
#include "sogdd/csv.hpp"
#include "sogdd/descriptor.hpp"
#include "sogdd/detector.hpp"
#include "sogdd/errors.hpp"
#include "sogdd/evaluation.hpp"
#include "sogdd/filterbank.hpp"
#include "sogdd/imageops.hpp"
#include "sogdd/parallel.hpp"
#include "sogdd/pgm.hpp"
#include "sogdd/quadrature.hpp"
#include "sogdd/suites.hpp"
#ifdef SOGDD_HAVE_JPEG
#include "sogdd/jpeg_codec.hpp"
#endif

namespace {

using namespace sogdd;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerification = 3;

constexpr double kVerifyTolerance = 1e-2;

/// Accepts plain reals and multiples of pi: "0.39", "pi", "-pi/4", "5pi/12", "2*pi/3".
double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?)(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double k = m[2].length() > 0 ? std::stod(m[2].str()) : 1.0;
    const double den = m[3].matched ? std::stod(m[3].str()) : 1.0;
    if (den == 0.0) throw ParameterError("angle '" + text + "' divides by zero");
    return (m[1].str() == "-" ? -1.0 : 1.0) * k * std::numbers::pi / den;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("cannot parse angle '" + text + "'");
}

ModelKind parse_model(const std::string& s) {
  if (s == "end") return ModelKind::end_type;
  if (s == "l") return ModelKind::l_type;
  throw ParameterError("model must be 'end' or 'l'");
}

struct DetectorOptions {
  double sigma2 = 1.2;
  std::optional<double> sigma;
  int orientations = 8;
  int block = 7;
  double threshold = 1e9;
  int nms_radius = 1;
  std::optional<int> margin;
  std::string measure = "eigen";

  void attach(CLI::App* cmd) {
    cmd->add_option("--sigma2", sigma2, "Gaussian scale sigma^2")->capture_default_str();
    cmd->add_option("--sigma", sigma, "Gaussian scale sigma (overrides --sigma2)");
    cmd->add_option("--orientations", orientations, "Number of filter orientations K")
        ->capture_default_str();
    cmd->add_option("--block", block, "Odd side length of the correlation block")
        ->capture_default_str();
    cmd->add_option("--threshold", threshold, "Corner measure threshold")->capture_default_str();
    cmd->add_option("--nms-radius", nms_radius, "Non-maximum suppression radius")
        ->capture_default_str();
    cmd->add_option("--margin", margin, "Border margin in pixels (default: kernel radius + block/2)");
    cmd->add_option("--measure", measure, "eigen or determinant")
        ->check(CLI::IsMember({"eigen", "determinant"}))
        ->capture_default_str();
  }

  DetectorConfig config() const {
    DetectorConfig c;
    c.sigma2 = sigma ? *sigma * *sigma : sigma2;
    c.orientations = orientations;
    if (block < 3 || block % 2 == 0) throw ParameterError("--block must be odd and at least 3");
    c.block_p = c.block_q = block - 1;
    c.threshold = threshold;
    c.nms_radius = nms_radius;
    c.border_margin = margin;
    c.measure = measure == "determinant" ? MeasureMethod::determinant : MeasureMethod::eigen;
    c.validate();
    return c;
  }
};

const ImageCodec* default_codec() {
#ifdef SOGDD_HAVE_JPEG
  static const LibjpegCodec codec;
  return &codec;
#else
  return nullptr;
#endif
}

/// Rewrites argv so that `--config FILE` becomes the `--key value` pairs it
/// holds, placed right after the subcommand name. Explicit flags come later on
/// the line and win because options keep their last value.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& commands) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + long(i));
      break;
    }
  }
  if (!config) return args;

  auto cmd = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return std::find(commands.begin(), commands.end(), a) != commands.end();
  });
  if (cmd == args.end()) throw ParameterError("--config needs a subcommand");

  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(*config);
  } catch (const CLI::FileError& e) {
    throw IoError(e.what());
  }
  std::vector<std::string> injected;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (!item.parents.empty()) {
      throw FormatError("config " + *config + ": sections are not supported ('" + item.fullname() + "')");
    }
    injected.push_back("--" + item.name);
    injected.insert(injected.end(), item.inputs.begin(), item.inputs.end());
  }
  args.insert(cmd + 1, injected.begin(), injected.end());
  return args;
}

class Stopwatch {
 public:
  ~Stopwatch() {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    std::fprintf(stderr, "elapsed: %.3f s\n", dt.count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------- commands

int run_detect(const std::string& image, const DetectorOptions& opts, const std::string& out) {
  const DetectorConfig cfg = opts.config();
  const GrayImage img = load_pgm(image);
  Stopwatch timer;
  const CornerList corners = detect(img, cfg);
  write_corners_csv(corners, out);
  std::printf("corners: %zu\n", corners.size());
  return kExitOk;
}

struct ModelOptions {
  std::string model = "end";
  double t1 = 50.0;
  double t2 = 100.0;
  std::string alpha = "pi/8";
  std::string beta = "pi/3";
  double d = 3.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "end or l")
        ->check(CLI::IsMember({"end", "l"}))
        ->capture_default_str();
    cmd->add_option("--t1", t1, "Intensity T1")->capture_default_str();
    cmd->add_option("--t2", t2, "Intensity T2")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Angle alpha (radians or k*pi/n)")->capture_default_str();
    cmd->add_option("--beta", beta, "Angle beta (END model only)")->capture_default_str();
    cmd->add_option("--d", d, "Corner separation in pixels")->capture_default_str();
  }

  CornerModelParams params() const {
    CornerModelParams p;
    p.kind = parse_model(model);
    p.t1 = t1;
    p.t2 = t2;
    p.alpha = parse_angle(alpha);
    p.beta = p.kind == ModelKind::end_type ? parse_angle(beta) : 0.0;
    p.d = d;
    p.validate();
    return p;
  }
};

int run_model_verify(const ModelOptions& mo, double sigma, const std::string& point,
                     const std::string& form, const std::string& phi, int samples,
                     const std::string& out) {
  const CornerModelParams p = mo.params();
  if (!(sigma > 0)) throw ParameterError("--sigma must be positive");
  if (samples < 1) throw ParameterError("--samples must be positive");
  const ModelPoint at = point == "edge" ? ModelPoint::edge(p.d) : ModelPoint::corner();
  const PhiConvention conv = phi == "cdf" ? PhiConvention::normal_cdf : PhiConvention::erf;
  const bool corrected = form == "corrected";

  Stopwatch timer;
  SogddProfile closed;
  SogddProfile quad;
  closed.theta.resize(std::size_t(samples));
  closed.psi.resize(std::size_t(samples));
  quad = closed;
  quad.provenance = Provenance::quadrature;
  parallel_for(samples, [&](int k) {
    const auto i = std::size_t(k);
    const double theta = 2.0 * std::numbers::pi * k / samples;
    closed.theta[i] = quad.theta[i] = theta;
    closed.psi[i] = corrected ? psi_closed_form(p, at, sigma, theta)
                              : psi_uncorrected_form(p, at, sigma, theta, conv);
    quad.psi[i] = psi_quadrature(p, at, sigma, theta);
  });

  CsvWriter csv(out, {"theta_rad", "psi_closed", "psi_quadrature"});
  for (std::size_t i = 0; i < closed.psi.size(); ++i) {
    csv.row({format_real(closed.theta[i]), format_real(closed.psi[i]), format_real(quad.psi[i])});
  }
  csv.close();

  const double dev = relative_sup_deviation(closed, quad);
  std::printf("max relative deviation: %s\n", format_real(dev).c_str());
  if (dev > kVerifyTolerance) {
    throw VerificationError("closed form deviates from quadrature by " + format_real(dev));
  }
  return kExitOk;
}

std::string describe_interval(const std::optional<ScaleInterval>& iv) {
  if (!iv) return "none";
  const std::string lo = iv->lo_bounded ? format_real(iv->lo) : "<" + format_real(iv->lo);
  const std::string hi = iv->hi_bounded ? format_real(iv->hi) : ">" + format_real(iv->hi);
  return "(" + lo + ", " + hi + ")";
}

int run_scale_range(const ModelOptions& mo, const SigmaGrid& grid, const std::string& out,
                    const std::string& sweep_out) {
  const CornerModelParams p = mo.params();
  Stopwatch timer;
  const ScaleAdmissibility curve = admissible_interval(p, grid);
  CsvWriter csv(out, {"sigma", "energy_corner", "energy_edge", "diff"});
  for (std::size_t i = 0; i < curve.sigma.size(); ++i) {
    csv.row({format_real(curve.sigma[i]), format_real(curve.energy_corner[i]),
             format_real(curve.energy_edge[i]), format_real(curve.difference[i])});
  }
  csv.close();
  std::printf("interval: %s\n", describe_interval(curve.primary()).c_str());
  if (!curve.diagnostic.empty()) std::printf("note: %s\n", curve.diagnostic.c_str());
  for (const auto& fit : curve.fits) {
    std::printf("quadratic fit at %s: a=%s b=%s c=%s residual=%s\n", format_real(fit.endpoint).c_str(),
                format_real(fit.a).c_str(), format_real(fit.b).c_str(), format_real(fit.c).c_str(),
                format_real(fit.residual).c_str());
  }

  const SweepSummary sweep =
      sweep_admissibility(p.kind, p.d, grid, default_sweep_angles(), p.t1, p.t2);
  std::printf("sweep min lower endpoint: %s\n",
              sweep.min_lower ? format_real(*sweep.min_lower).c_str() : "none");
  std::printf("sweep min upper endpoint: %s\n",
              sweep.min_upper ? format_real(*sweep.min_upper).c_str() : "none");
  if (!sweep_out.empty()) {
    CsvWriter s(sweep_out, {"alpha", "beta", "lo", "hi", "lo_bounded", "hi_bounded"});
    for (const auto& row : sweep.rows) {
      if (!row.interval) {
        s.row({format_real(row.alpha), format_real(row.beta), "", "", "0", "0"});
        continue;
      }
      s.row({format_real(row.alpha), format_real(row.beta), format_real(row.interval->lo),
             format_real(row.interval->hi), row.interval->lo_bounded ? "1" : "0",
             row.interval->hi_bounded ? "1" : "0"});
    }
    s.close();
  }
  return kExitOk;
}

int run_eval_gt(const std::string& image, const std::string& gt_path,
                const std::string& detections, double delta, const DetectorOptions& opts,
                const std::string& out) {
  const GroundTruth gt = read_ground_truth_csv(gt_path);
  Stopwatch timer;
  CornerList corners;
  if (!detections.empty()) {
    corners = read_corners_csv(detections);
  } else {
    if (image.empty()) throw ParameterError("eval-gt needs --image or --detections");
    const DetectorConfig cfg = opts.config();
    const GrayImage img = load_pgm(image);
    check_ground_truth_bounds(gt, img.width(), img.height());
    corners = detect(img, cfg);
  }
  const MatchReport r = match_to_gt(corners, gt, delta);
  write_match_csv(r, out);
  std::printf("matched: %zu missed: %zu false: %zu Le: %s%s\n", r.pairs.size(), r.missed,
              r.false_detections, format_real(r.localization_error).c_str(),
              r.no_matches ? " (no matches)" : "");
  return kExitOk;
}

int run_eval_repeat(const std::string& image, const std::string& suite, std::uint64_t seed,
                    const DetectorOptions& opts, const std::string& out) {
  const SuiteId id = parse_suite(suite);
  const DetectorConfig cfg = opts.config();
  const GrayImage img = load_pgm(image);
  Stopwatch timer;
  const RepeatabilityReport r = run_transform_suite(img, cfg, id, seed, default_codec());
  write_repeatability_csv(r, out);
  std::size_t skipped = 0;
  for (const auto& row : r.rows) skipped += row.skipped ? 1 : 0;
  std::printf("suite %s: %zu rows, mean Ravg %s\n", std::string(to_string(id)).c_str(),
              r.rows.size(), format_real(r.mean).c_str());
  if (skipped > 0) std::printf("skipped %zu rows: no JPEG codec available\n", skipped);
  return kExitOk;
}

int run_eval_mma(const std::string& image1, const std::string& image2, const std::string& h_path,
                 const DetectorOptions& opts, const std::string& out) {
  const DetectorConfig cfg = opts.config();
  const GrayImage a = load_pgm(image1);
  const GrayImage b = load_pgm(image2);
  const Homography h = read_homography(h_path);
  Stopwatch timer;
  const CornerList ca = detect(a, cfg);
  const CornerList cb = detect(b, cfg);
  const MmaReport r = mma(match_corners(a, ca, b, cb), h);
  write_mma_csv(r, out);
  std::printf("candidate pairs: %zu%s\n", r.rows.front().possible,
              r.empty ? " (MMA reported as 0)" : "");
  return kExitOk;
}

struct WarpOptions {
  std::string transform = "identity";
  std::string angle = "0";
  double scale = 1.0;
  double sx = 1.0;
  double sy = 1.0;
  double shear = 0.0;
  double noise = 0.0;
  int jpeg = 0;
  std::uint64_t seed = 0;
};

int run_warp(const std::string& image, const WarpOptions& w, const std::string& out,
             const std::string& h_out) {
  const GrayImage img = load_pgm(image);
  AffineTransform t = AffineTransform::identity();
  if (w.transform == "rotation") t = AffineTransform::rotation(parse_angle(w.angle));
  else if (w.transform == "iso") t = AffineTransform::iso_scale(w.scale);
  else if (w.transform == "aniso") t = AffineTransform::aniso_scale(w.sx, w.sy);
  else if (w.transform == "shear") t = AffineTransform::shear(w.shear);

  WarpResult r = warp(img, t);
  GrayImage result = std::move(r.image);
  if (w.noise > 0) result = add_gaussian_noise(result, w.noise, w.seed);
  if (w.jpeg > 0) result = jpeg_roundtrip(result, w.jpeg, default_codec());
  save_pgm(result, out);
  if (!h_out.empty()) write_homography(Homography::from_affine(r.forward), h_out);
  std::printf("wrote %dx%d image\n", result.width(), result.height());
  return kExitOk;
}

int run_export_kernels(const DetectorOptions& opts, const std::string& out) {
  const DetectorConfig cfg = opts.config();
  const FilterBank bank = build_bank(cfg.sigma(), cfg.orientations);
  CsvWriter csv(out, {"k", "theta_rad", "dx", "dy", "tap"});
  for (int k = 0; k < bank.size(); ++k) {
    const Kernel2D& kernel = bank[k];
    const int r = kernel.radius();
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        csv.row({std::to_string(k), format_real(kernel.theta().value_or(0.0)), std::to_string(dx),
                 std::to_string(dy), format_real(kernel.tap(dx, dy))});
      }
    }
  }
  csv.close();
  std::printf("kernels: %d, radius %d\n", bank.size(), bank.radius());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-resolution corner detection with second-order Gaussian directional derivatives"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = hardware concurrency)");

  std::string out;
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_help;
  app.add_option("--config", config_help, "key=value file with # comments; flags override it");
  auto add_config = [&config_help](CLI::App* cmd) {
    cmd->add_option("--config", config_help, "key=value file with # comments; flags override it");
  };

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "Detect corners in a PGM image");
  std::string image;
  DetectorOptions det;
  detect_cmd->add_option("image", image, "Input PGM")->required();
  det.attach(detect_cmd);
  detect_cmd->add_option("--out", out, "Corner CSV")->required();
  add_config(detect_cmd);

  // model-verify
  auto* verify_cmd = app.add_subcommand("model-verify", "Compare closed-form model responses with quadrature");
  ModelOptions model;
  double sigma = 1.12;
  std::string point = "corner";
  std::string form = "corrected";
  std::string phi = "erf";
  int samples = 360;
  model.attach(verify_cmd);
  verify_cmd->add_option("--sigma", sigma, "Gaussian scale sigma")->capture_default_str();
  verify_cmd->add_option("--point", point, "corner or edge")
      ->check(CLI::IsMember({"corner", "edge"}))
      ->capture_default_str();
  verify_cmd->add_option("--form", form, "corrected or uncorrected closed form")
      ->check(CLI::IsMember({"corrected", "uncorrected"}))
      ->capture_default_str();
  verify_cmd->add_option("--phi", phi, "Phi convention for the uncorrected form: erf or cdf")
      ->check(CLI::IsMember({"erf", "cdf"}))
      ->capture_default_str();
  verify_cmd->add_option("--samples", samples, "Number of theta samples over [0, 2pi)")
      ->capture_default_str();
  verify_cmd->add_option("--out", out, "Profile CSV")->required();
  add_config(verify_cmd);

  // scale-range
  auto* scale_cmd = app.add_subcommand("scale-range", "Energy difference curve and admissible scales");
  ModelOptions scale_model;
  SigmaGrid grid;
  std::string sweep_out;
  scale_model.attach(scale_cmd);
  scale_cmd->add_option("--sigma-min", grid.min, "Grid start")->capture_default_str();
  scale_cmd->add_option("--sigma-max", grid.max, "Grid end")->capture_default_str();
  scale_cmd->add_option("--sigma-step", grid.step, "Grid step")->capture_default_str();
  scale_cmd->add_option("--out", out, "E(sigma) CSV")->required();
  scale_cmd->add_option("--sweep-out", sweep_out, "Per-angle interval CSV");
  add_config(scale_cmd);

  // eval-gt
  auto* gt_cmd = app.add_subcommand("eval-gt", "Missed/false corners and localization error");
  std::string gt_path;
  std::string detections;
  double delta = 2.0;
  DetectorOptions gt_det;
  gt_cmd->add_option("--image", image, "Input PGM");
  gt_cmd->add_option("--gt", gt_path, "Ground-truth CSV with columns x,y")->required();
  gt_cmd->add_option("--detections", detections, "Use this corner CSV instead of detecting");
  gt_cmd->add_option("--delta", delta, "Match radius in pixels")->capture_default_str();
  gt_det.attach(gt_cmd);
  gt_cmd->add_option("--out", out, "Report CSV")->required();
  add_config(gt_cmd);

  // eval-repeat
  auto* rep_cmd = app.add_subcommand("eval-repeat", "Average repeatability over a transform suite");
  std::string suite;
  std::uint64_t seed = 0;
  DetectorOptions rep_det;
  rep_cmd->add_option("image", image, "Input PGM")->required();
  rep_cmd->add_option("--suite", suite, "rotation, iso, aniso, shear, jpeg or noise")->required();
  rep_cmd->add_option("--seed", seed, "Noise seed")->capture_default_str();
  rep_det.attach(rep_cmd);
  rep_cmd->add_option("--out", out, "Report CSV")->required();
  add_config(rep_cmd);

  // eval-mma
  auto* mma_cmd = app.add_subcommand("eval-mma", "Mean matching accuracy for an image pair");
  std::string image2;
  std::string h_path;
  DetectorOptions mma_det;
  mma_cmd->add_option("image1", image, "First PGM")->required();
  mma_cmd->add_option("image2", image2, "Second PGM")->required();
  mma_cmd->add_option("--homography", h_path, "3x3 homography mapping image1 to image2")->required();
  mma_det.attach(mma_cmd);
  mma_cmd->add_option("--out", out, "Report CSV")->required();
  add_config(mma_cmd);

  // warp
  auto* warp_cmd = app.add_subcommand("warp", "Apply a transform and optional degradations");
  WarpOptions wo;
  std::string h_out;
  warp_cmd->add_option("image", image, "Input PGM")->required();
  warp_cmd->add_option("--transform", wo.transform, "identity, rotation, iso, aniso or shear")
      ->check(CLI::IsMember({"identity", "rotation", "iso", "aniso", "shear"}))
      ->capture_default_str();
  warp_cmd->add_option("--angle", wo.angle, "Rotation angle (radians or k*pi/n)");
  warp_cmd->add_option("--scale", wo.scale, "Isotropic factor");
  warp_cmd->add_option("--sx", wo.sx, "Horizontal factor");
  warp_cmd->add_option("--sy", wo.sy, "Vertical factor");
  warp_cmd->add_option("--shear", wo.shear, "Shear factor c in x' = x + c*y");
  warp_cmd->add_option("--noise", wo.noise, "Gaussian noise standard deviation");
  warp_cmd->add_option("--jpeg", wo.jpeg, "JPEG quality (1-100) for a lossy round trip");
  warp_cmd->add_option("--seed", wo.seed, "Noise seed")->capture_default_str();
  warp_cmd->add_option("--out", out, "Output PGM")->required();
  warp_cmd->add_option("--homography-out", h_out, "Write the forward transform here");
  add_config(warp_cmd);

  // export-kernels
  auto* kern_cmd = app.add_subcommand("export-kernels", "Write the filter bank taps as CSV");
  DetectorOptions kern_det;
  kern_det.attach(kern_cmd);
  kern_cmd->add_option("--out", out, "Kernel CSV")->required();
  add_config(kern_cmd);

  std::vector<std::string> names;
  for (const auto* sub : app.get_subcommands({})) names.push_back(sub->get_name());
  try {
    std::vector<std::string> args = expand_config(argc, argv, names);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }

  set_max_threads(threads);
  try {
    if (*detect_cmd) return run_detect(image, det, out);
    if (*verify_cmd) return run_model_verify(model, sigma, point, form, phi, samples, out);
    if (*scale_cmd) return run_scale_range(scale_model, grid, out, sweep_out);
    if (*gt_cmd) return run_eval_gt(image, gt_path, detections, delta, gt_det, out);
    if (*rep_cmd) return run_eval_repeat(image, suite, seed, rep_det, out);
    if (*mma_cmd) return run_eval_mma(image, image2, h_path, mma_det, out);
    if (*warp_cmd) return run_warp(image, wo, out, h_out);
    if (*kern_cmd) return run_export_kernels(kern_det, out);
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return kExitVerification;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const FormatError& e) {
    std::fprintf(stderr, "format error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}
