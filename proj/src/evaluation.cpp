#include "sogdd/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

#include "sogdd/csv.hpp"
#include "sogdd/errors.hpp"

namespace sogdd {

GroundTruth read_ground_truth_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const auto cx = table.column("x");
  const auto cy = table.column("y");
  GroundTruth gt;
  gt.source = path.string();
  std::set<std::pair<double, double>> seen;
  for (const auto& row : table.rows) {
    const Point2 p{parse_real(row[cx]), parse_real(row[cy])};
    if (!seen.insert({p.x, p.y}).second) {
      throw FormatError("ground truth: duplicate point (" + format_real(p.x) + ", " +
                        format_real(p.y) + ") in " + path.string());
    }
    gt.points.push_back(p);
  }
  return gt;
}

void check_ground_truth_bounds(const GroundTruth& gt, int width, int height) {
  for (const auto& p : gt.points) {
    if (p.x < 0 || p.y < 0 || p.x > width - 1 || p.y > height - 1) {
      throw ParameterError("ground truth point (" + format_real(p.x) + ", " + format_real(p.y) +
                           ") lies outside the image");
    }
  }
}

std::vector<Point2> corner_points(const CornerList& corners) {
  std::vector<Point2> out;
  out.reserve(corners.size());
  for (const auto& c : corners) out.push_back({double(c.x), double(c.y)});
  return out;
}

std::vector<MatchedPair> greedy_match(const std::vector<Point2>& a, const std::vector<Point2>& b,
                                      double radius) {
  std::vector<MatchedPair> candidates;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = distance(a[i], b[j]);
      if (d <= radius) candidates.push_back({i, j, d});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const MatchedPair& l, const MatchedPair& r) {
    return std::tie(l.distance, l.first, l.second) < std::tie(r.distance, r.first, r.second);
  });

  std::vector<char> used_a(a.size(), 0);
  std::vector<char> used_b(b.size(), 0);
  std::vector<MatchedPair> out;
  for (const auto& c : candidates) {
    if (used_a[c.first] || used_b[c.second]) continue;
    used_a[c.first] = used_b[c.second] = 1;
    out.push_back(c);
  }
  return out;
}

MatchReport match_to_gt(const CornerList& detected, const GroundTruth& gt, double delta) {
  if (gt.points.empty()) throw ParameterError("match_to_gt: ground truth is empty");
  if (!(delta > 0)) throw ParameterError("match_to_gt: delta must be positive");

  MatchReport r;
  r.pairs = greedy_match(corner_points(detected), gt.points, delta);
  r.missed = gt.points.size() - r.pairs.size();
  r.false_detections = detected.size() - r.pairs.size();
  if (r.pairs.empty()) {
    r.no_matches = true;
    return r;
  }
  double sum = 0.0;
  for (const auto& p : r.pairs) sum += p.distance * p.distance;
  r.localization_error = std::sqrt(sum / double(r.pairs.size()));
  return r;
}

void write_match_csv(const MatchReport& report, const std::filesystem::path& path) {
  CsvWriter csv(path, {"missed", "false", "Le"});
  csv.row({std::to_string(report.missed), std::to_string(report.false_detections),
           format_real(report.localization_error)});
  csv.close();
}

double repeatability_score(std::size_t lb, std::size_t ld, std::size_t lr) noexcept {
  if (lb == 0 || ld == 0) return 0.0;
  return double(lr) * double(lb + ld) / (2.0 * double(lb) * double(ld));
}

RepeatabilityResult average_repeatability(const std::vector<Point2>& reference,
                                          const std::vector<Point2>& deformed,
                                          const Homography& forward, double dist) {
  RepeatabilityResult r;
  r.lb = reference.size();
  r.ld = deformed.size();
  if (r.lb == 0 || r.ld == 0) {
    r.degenerate = true;
    r.diagnostic = r.lb == 0 ? "no reference detections" : "no deformed detections";
    return r;
  }
  std::vector<Point2> mapped;
  mapped.reserve(reference.size());
  for (const auto& p : reference) mapped.push_back(forward.project(p));
  r.lr = greedy_match(mapped, deformed, dist).size();
  r.ravg = repeatability_score(r.lb, r.ld, r.lr);
  return r;
}

RepeatabilityResult average_repeatability(const std::vector<Point2>& reference,
                                          const std::vector<Point2>& deformed,
                                          const AffineTransform& forward, double dist) {
  return average_repeatability(reference, deformed, Homography::from_affine(forward), dist);
}

Point2 homography_project(const Point2& p, const Homography& h) { return h.project(p); }

Homography read_homography(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open homography file " + path.string());
  std::array<double, 9> m{};
  for (double& v : m) {
    if (!(in >> v) || !std::isfinite(v)) {
      throw FormatError("homography file " + path.string() + " must hold nine finite reals");
    }
  }
  double extra = 0;
  if (in >> extra) throw FormatError("homography file " + path.string() + " has trailing data");
  return Homography(m);
}

void write_homography(const Homography& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create " + path.string());
  char buf[64];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", h(r, c));
      out << buf << (c == 2 ? '\n' : ' ');
    }
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

MmaReport mma(const std::vector<PointPair>& pairs, const Homography& h, int max_pth) {
  if (max_pth < 1) throw ParameterError("mma: max threshold must be >= 1");
  std::vector<double> errors;
  errors.reserve(pairs.size());
  for (const auto& [p1, p2] : pairs) errors.push_back(distance(p2, h.project(p1)));

  MmaReport report;
  report.empty = pairs.empty();
  for (int t = 1; t <= max_pth; ++t) {
    MmaRow row;
    row.pth = t;
    row.possible = pairs.size();
    row.matched = std::size_t(std::count_if(errors.begin(), errors.end(),
                                            [t](double e) { return e < double(t); }));
    row.mma = report.empty ? 0.0 : double(row.matched) / double(row.possible);
    report.rows.push_back(row);
  }
  return report;
}

void write_mma_csv(const MmaReport& report, const std::filesystem::path& path) {
  CsvWriter csv(path, {"Pth", "Npossible", "Nmatch", "MMA"});
  for (const auto& r : report.rows) {
    csv.row({std::to_string(r.pth), std::to_string(r.possible), std::to_string(r.matched),
             format_real(r.mma)});
  }
  csv.close();
}

}  // namespace sogdd
