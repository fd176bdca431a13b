#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "sogdd/corner_model.hpp"
#include "sogdd/detector.hpp"
#include "sogdd/errors.hpp"
#include "sogdd/parallel.hpp"
#include "test_support.hpp"

using namespace sogdd;
using sogdd::testing::block_image;
using sogdd::testing::random_image;
using sogdd::testing::random_shapes;

namespace {

std::set<std::pair<int, int>> locations(const CornerList& c) {
  std::set<std::pair<int, int>> out;
  for (const auto& k : c) out.insert({k.x, k.y});
  return out;
}

ResponseStack stack_from(int w, int h, int k, const std::function<double(int, int, int)>& f) {
  ResponseStack s(w, h, k, true);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int i = 0; i < k; ++i) s.at(x, y)[std::size_t(i)] = f(x, y, i);
  return s;
}

}  // namespace

TEST(DetectorConfig, DefaultsAndValidation) {
  const DetectorConfig c;
  EXPECT_DOUBLE_EQ(c.sigma2, 1.2);
  EXPECT_EQ(c.orientations, 8);
  EXPECT_EQ(c.block_p, 6);
  EXPECT_DOUBLE_EQ(c.threshold, 1e9);
  EXPECT_DOUBLE_EQ(c.sigma(), std::sqrt(1.2));
  EXPECT_EQ(c.effective_margin(), 9);
  EXPECT_NO_THROW(c.validate());

  auto bad = c;
  bad.sigma2 = 1.0;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = c;
  bad.block_p = 5;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = c;
  bad.orientations = 1;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = c;
  bad.threshold = -1;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = c;
  bad.border_margin = 2;
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(SoddcMatrix, ZeroResponsesGiveZeroMatrix) {
  const auto s = stack_from(9, 9, 8, [](int, int, int) { return 0.0; });
  const auto m = soddc_matrix(s, 4, 4, 6, 6);
  EXPECT_EQ(m.frobenius_norm(), 0.0);
}

TEST(SoddcMatrix, SingleActiveOrientation) {
  const auto s = stack_from(9, 9, 8, [](int x, int y, int k) { return k == 1 ? double(x + y) : 0.0; });
  const auto m = soddc_matrix(s, 4, 4, 6, 6);
  double expected = 0.0;
  for (int y = 1; y <= 7; ++y)
    for (int x = 1; x <= 7; ++x) expected += double(x + y) * (x + y);
  EXPECT_EQ(m(1, 1), expected);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      if (a != 1 || b != 1) {
        EXPECT_EQ(m(a, b), 0.0);
      }
}

TEST(SoddcMatrix, ConstantVectorsGiveRankOne) {
  const auto s = stack_from(7, 7, 8, [](int, int, int) { return 1.0; });
  const auto m = soddc_matrix(s, 3, 3, 6, 6);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) EXPECT_EQ(m(a, b), 49.0);
  const auto e = jacobi_eigenvalues(m);
  EXPECT_NEAR(e.back(), 49.0 * 8, 1e-9);
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(e[std::size_t(i)], 0.0, 1e-9);
}

TEST(SoddcMatrix, RejectsOutOfRangeAndSignedStacks) {
  const auto s = stack_from(7, 7, 4, [](int, int, int) { return 1.0; });
  EXPECT_THROW(soddc_matrix(s, 2, 3, 6, 6), ParameterError);
  EXPECT_THROW(soddc_matrix(s, 3, 6, 6, 6), ParameterError);
  const ResponseStack signed_stack(7, 7, 4, false);
  EXPECT_THROW(soddc_matrix(signed_stack, 3, 3, 6, 6), ParameterError);
}

TEST(CornerMeasure, ReferenceValues) {
  EXPECT_DOUBLE_EQ(corner_measure(SymmetricMatrix::identity(8)), 1.0 / (8.0 + kMeasureEpsilon));
  EXPECT_EQ(corner_measure(SymmetricMatrix(8)), 0.0);
  const std::vector<double> d{2, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(corner_measure(SymmetricMatrix::diagonal(d)), 2.0 / (9.0 + kMeasureEpsilon));
  EXPECT_DOUBLE_EQ(corner_measure_determinant(SymmetricMatrix::diagonal(d)), 2.0 / (9.0 + kMeasureEpsilon));
}

TEST(CornerMeasure, ContractViolations) {
  SymmetricMatrix asym(2, {1.0, 0.5, 0.2, 1.0});
  EXPECT_THROW(corner_measure(asym), ParameterError);
  EXPECT_THROW(corner_measure_determinant(asym), ParameterError);
  const std::vector<double> indefinite{4.0, -1.0};
  EXPECT_THROW(corner_measure(SymmetricMatrix::diagonal(indefinite)), ParameterError);
  const std::vector<double> tiny_negative{4.0, -1e-9};
  EXPECT_EQ(corner_measure(SymmetricMatrix::diagonal(tiny_negative)), 0.0);
}

TEST(LocalMaxima, StrictMaximaAndPlateauTieBreak) {
  GrayImage map(9, 9, 0.0);
  map.at(3, 3) = 5.0;
  map.at(4, 3) = 5.0;  // plateau: the row-major-first pixel survives
  map.at(6, 6) = 2.0;
  map.at(8, 8) = 9.0;  // inside the margin-excluded band
  const CornerList c = local_maxima(map, 1, 2, 1.0);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (Corner{3, 3, 5.0}));
  EXPECT_EQ(c[1], (Corner{6, 6, 2.0}));
  EXPECT_TRUE(local_maxima(map, 1, 2, 5.0).empty());
}

TEST(LocalMaxima, ThresholdIsStrict) {
  GrayImage map(7, 7, 0.0);
  map.at(3, 3) = 4.0;
  EXPECT_EQ(local_maxima(map, 1, 1, 4.0).size(), 0u);
  EXPECT_EQ(local_maxima(map, 1, 1, 3.9).size(), 1u);
}

TEST(SortCorners, DescendingScoreThenRowMajor) {
  CornerList c{{5, 1, 2.0}, {1, 2, 3.0}, {4, 1, 2.0}, {0, 0, 1.0}, {2, 0, 2.0}};
  sort_corners(c);
  EXPECT_EQ(c, (CornerList{{1, 2, 3.0}, {2, 0, 2.0}, {4, 1, 2.0}, {5, 1, 2.0}, {0, 0, 1.0}}));
}

TEST(Detect, ConstantImageIsEmpty) {
  EXPECT_TRUE(detect(GrayImage(40, 40, 90.0)).empty());
}

TEST(Detect, TooSmallImageThrows) {
  EXPECT_THROW(detect(GrayImage(19, 40, 0.0)), ParameterError);
  EXPECT_NO_THROW(detect(GrayImage(20, 20, 0.0)));
}

TEST(Detect, BlockImageYieldsFourCorners) {
  const CornerList c = detect(block_image());
  ASSERT_EQ(c.size(), 4u);
  const std::vector<std::pair<double, double>> truth{{25, 25}, {74, 25}, {25, 74}, {74, 74}};
  for (const auto& [tx, ty] : truth) {
    double best = 1e9;
    for (const auto& k : c) best = std::min(best, std::hypot(k.x - tx, k.y - ty));
    EXPECT_LE(best, 2.0);
  }
  for (const auto& k : c) EXPECT_GT(k.score, 1e9);
}

TEST(Detect, OutputInsideValidRegionWithPositiveScores) {
  DetectorConfig cfg;
  cfg.threshold = 0.0;
  const GrayImage img = random_shapes(64, 64, 17);
  const int m = cfg.effective_margin();
  for (const auto& k : detect(img, cfg)) {
    EXPECT_GT(k.score, 0.0);
    EXPECT_GE(k.x, m);
    EXPECT_GE(k.y, m);
    EXPECT_LT(k.x, 64 - m);
    EXPECT_LT(k.y, 64 - m);
  }
}

TEST(DetectorProperties, LambdaSymmetricPsdAndMeasureNonNegative) {
  const DetectorConfig cfg;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const GrayImage img = seed % 2 == 0 ? random_image(40, 40, seed) : random_shapes(40, 40, seed);
    const ResponseStack s = convolve_bank(img, FilterBank(cfg.sigma(), cfg.orientations), true);
    for (int y = 3; y < 37; y += 3) {
      for (int x = 3; x < 37; x += 3) {
        const auto m = soddc_matrix(s, x, y, 6, 6);
        ASSERT_TRUE(m.is_symmetric(0.0));
        const auto e = jacobi_eigenvalues(m);
        EXPECT_GE(e.front(), -1e-9 * std::max(1.0, m.trace()));
      }
    }
    const GrayImage map = measure_map(s, cfg);
    for (double v : map.data()) EXPECT_GE(v, 0.0);
  }
}

TEST(DetectorProperties, DeterminantPathAgreesOnRandomImages) {
  const DetectorConfig cfg;
  for (std::uint64_t seed = 100; seed < 103; ++seed) {
    const GrayImage img = random_image(32, 32, seed);
    const ResponseStack s = convolve_bank(img, FilterBank(cfg.sigma(), cfg.orientations), true);
    for (int y = 3; y < 29; ++y)
      for (int x = 3; x < 29; ++x) {
        const auto m = soddc_matrix(s, x, y, 6, 6);
        const double a = corner_measure(m);
        const double b = corner_measure_determinant(m);
        EXPECT_NEAR(b, a, 1e-9 * a);
      }
  }
}

TEST(DetectorProperties, DeterminantPathOnStructuredImages) {
  // Near-singular matrices: agreement up to the rounding floor of det(Lambda).
  const DetectorConfig cfg;
  const GrayImage img = block_image();
  const ResponseStack s = convolve_bank(img, FilterBank(cfg.sigma(), cfg.orientations), true);
  for (int y = 3; y < 97; y += 2)
    for (int x = 3; x < 97; x += 2) {
      const auto m = soddc_matrix(s, x, y, 6, 6);
      const double a = corner_measure(m);
      const double b = corner_measure_determinant(m);
      const double floor = 1e-9 * std::pow(m.frobenius_norm(), 7);
      EXPECT_NEAR(b, a, 1e-9 * std::abs(a) + floor);
    }
}

TEST(DetectorProperties, OffsetInvarianceIsExact) {
  DetectorConfig cfg;
  cfg.threshold = 1e3;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    GrayImage img = random_shapes(64, 64, seed);
    for (double& v : img.data()) v = std::round(v);
    GrayImage shifted = img;
    for (double& v : shifted.data()) v += 37.0;
    EXPECT_EQ(locations(detect(img, cfg)), locations(detect(shifted, cfg)));
  }
}

TEST(DetectorProperties, ScalingInvarianceWithRescaledThreshold) {
  DetectorConfig cfg;
  cfg.threshold = 1e3;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const GrayImage img = random_shapes(64, 64, seed + 10);
    const auto base = detect(img, cfg);
    for (double a : {0.5, 2.0}) {
      GrayImage scaled = img;
      for (double& v : scaled.data()) v *= a;
      DetectorConfig c2 = cfg;
      c2.threshold = cfg.threshold * std::pow(a, 2 * cfg.orientations - 2);
      EXPECT_EQ(locations(detect(scaled, c2)), locations(base)) << "a=" << a;
    }
  }
}

TEST(DetectorProperties, MeasureMethodsGiveSameCorners) {
  DetectorConfig eig;
  eig.threshold = 1e3;
  DetectorConfig det = eig;
  det.measure = MeasureMethod::determinant;
  const GrayImage img = random_shapes(64, 64, 77);
  EXPECT_EQ(locations(detect(img, eig)), locations(detect(img, det)));
}

TEST(DetectorProperties, ThreadCountDoesNotChangeOutput) {
  DetectorConfig cfg;
  cfg.threshold = 0.0;
  const GrayImage img = random_shapes(80, 70, 5);
  set_max_threads(1);
  const auto a = detect(img, cfg);
  set_max_threads(6);
  const auto b = detect(img, cfg);
  set_max_threads(0);
  EXPECT_EQ(a, b);
}

TEST(CornerCsv, RoundTrip) {
  sogdd::testing::TempDir dir("corners");
  const CornerList c{{3, 4, 1.5e10}, {7, 1, 2.0}};
  write_corners_csv(c, dir / "c.csv");
  EXPECT_EQ(read_corners_csv(dir / "c.csv"), c);
  write_corners_csv({}, dir / "e.csv");
  EXPECT_TRUE(read_corners_csv(dir / "e.csv").empty());
}

TEST(Detect, EndModelSmallScaleFindsCornerAtOrigin) {
  const CornerModelParams p{ModelKind::end_type, 50, 100, std::numbers::pi / 8, std::numbers::pi / 3, 6};
  const GrayImage img = render_model(p, 64, 64, {29, 32});
  DetectorConfig cfg;
  cfg.threshold = 0.0;
  const CornerList c = detect(img, cfg);
  ASSERT_FALSE(c.empty());
  EXPECT_LE(std::hypot(c.front().x - 29, c.front().y - 32), 2.0);
}
