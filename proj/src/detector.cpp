#include "sogdd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sogdd/csv.hpp"
#include "sogdd/errors.hpp"
#include "sogdd/parallel.hpp"

namespace sogdd {

double DetectorConfig::sigma() const { return std::sqrt(sigma2); }

int DetectorConfig::effective_margin() const {
  if (border_margin) return *border_margin;
  return kernel_radius(sigma()) + std::max(block_p, block_q) / 2;
}

void DetectorConfig::validate() const {
  if (!(sigma2 > 1.0) || !std::isfinite(sigma2)) throw ParameterError("sigma^2 must exceed 1");
  if (block_p < 2 || block_q < 2 || block_p % 2 != 0 || block_q % 2 != 0) {
    throw ParameterError("block parameters p and q must be even and at least 2");
  }
  if (orientations < 2) throw ParameterError("at least 2 orientations are required");
  if (!(threshold >= 0.0)) throw ParameterError("threshold must be non-negative");
  if (nms_radius < 1) throw ParameterError("nms radius must be at least 1");
  if (effective_margin() < std::max(block_p, block_q) / 2) {
    throw ParameterError("border margin must cover half the block");
  }
}

SymmetricMatrix soddc_matrix(const ResponseStack& stack, int x, int y, int p, int q) {
  if (!stack.absolute()) throw ParameterError("correlation matrix needs absolute responses");
  const int hp = p / 2;
  const int hq = q / 2;
  if (x - hp < 0 || y - hq < 0 || x + hp >= stack.width() || y + hq >= stack.height()) {
    throw ParameterError("block around (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") leaves the response domain");
  }
  const int k = stack.orientations();
  SymmetricMatrix lambda(k);
  for (int j = -hq; j <= hq; ++j) {
    for (int i = -hp; i <= hp; ++i) {
      const auto w = stack.at(x + i, y + j);
      for (int a = 0; a < k; ++a) {
        const double wa = w[static_cast<std::size_t>(a)];
        for (int b = a; b < k; ++b) lambda(a, b) += wa * w[static_cast<std::size_t>(b)];
      }
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) lambda(b, a) = lambda(a, b);
  return lambda;
}

double corner_measure(const SymmetricMatrix& lambda, double eps) {
  if (!lambda.is_symmetric(1e-9)) throw ParameterError("corner measure needs a symmetric matrix");
  auto eig = jacobi_eigenvalues(lambda);
  const double floor = -1e-6 * std::abs(lambda.trace());
  double product = 1.0;
  double sum = 0.0;
  for (double& v : eig) {
    if (v < 0.0) {
      if (v < floor) throw ParameterError("correlation matrix is not positive semidefinite");
      v = 0.0;
    }
    product *= v;
    sum += v;
  }
  return product / (sum + eps);
}

double corner_measure_determinant(const SymmetricMatrix& lambda, double eps) {
  if (!lambda.is_symmetric(1e-9)) throw ParameterError("corner measure needs a symmetric matrix");
  return ldlt_determinant(lambda) / (lambda.trace() + eps);
}

GrayImage measure_map(const ResponseStack& stack, const DetectorConfig& cfg) {
  GrayImage map(stack.width(), stack.height());
  const int hp = cfg.block_p / 2;
  const int hq = cfg.block_q / 2;
  const int rows = std::max(0, stack.height() - 2 * hq);
  parallel_for(rows, [&](int row) {
    const int y = row + hq;
    for (int x = hp; x + hp < stack.width(); ++x) {
      const auto lambda = soddc_matrix(stack, x, y, cfg.block_p, cfg.block_q);
      map.at(x, y) = cfg.measure == MeasureMethod::eigen ? corner_measure(lambda)
                                                         : corner_measure_determinant(lambda);
    }
  });
  return map;
}

void sort_corners(CornerList& corners) {
  std::sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
}

CornerList local_maxima(const GrayImage& map, int radius, int margin, double threshold) {
  CornerList out;
  for (int y = margin; y < map.height() - margin; ++y) {
    for (int x = margin; x < map.width() - margin; ++x) {
      const double v = map.at(x, y);
      if (!(v > threshold) || !(v > 0.0)) continue;
      bool is_max = true;
      for (int dy = -radius; dy <= radius && is_max; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (!map.contains(nx, ny)) continue;
          const double w = map.at(nx, ny);
          // An equal neighbour earlier in row-major order wins the plateau.
          const bool earlier = ny < y || (ny == y && nx < x);
          if (w > v || (w == v && earlier)) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) out.push_back({x, y, v});
    }
  }
  sort_corners(out);
  return out;
}

CornerList detect(const GrayImage& img, const DetectorConfig& cfg) {
  cfg.validate();
  const int margin = cfg.effective_margin();
  if (img.width() <= 2 * margin + 1 || img.height() <= 2 * margin + 1) {
    throw ParameterError("image " + std::to_string(img.width()) + "x" +
                         std::to_string(img.height()) + " is too small for border margin " +
                         std::to_string(margin));
  }
  const FilterBank bank(cfg.sigma(), cfg.orientations);
  const ResponseStack stack = convolve_bank(img, bank, /*take_abs=*/true);
  const GrayImage map = measure_map(stack, cfg);
  return local_maxima(map, cfg.nms_radius, margin, cfg.threshold);
}

void write_corners_csv(const CornerList& corners, const std::filesystem::path& path) {
  CsvWriter csv(path, {"x", "y", "score"});
  for (const auto& c : corners) {
    csv.row({std::to_string(c.x), std::to_string(c.y), format_real(c.score)});
  }
  csv.close();
}

CornerList read_corners_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const auto cx = table.column("x");
  const auto cy = table.column("y");
  std::optional<std::size_t> cs;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == "score") cs = i;
  CornerList out;
  for (const auto& row : table.rows) {
    Corner c;
    c.x = static_cast<int>(std::lround(parse_real(row[cx])));
    c.y = static_cast<int>(std::lround(parse_real(row[cy])));
    c.score = cs ? parse_real(row[*cs]) : 0.0;
    out.push_back(c);
  }
  return out;
}

}  // namespace sogdd
