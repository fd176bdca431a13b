#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sogdd/corner_model.hpp"
#include "sogdd/errors.hpp"
#include "sogdd/quadrature.hpp"

using namespace sogdd;

namespace {

constexpr double kPi = std::numbers::pi;

CornerModelParams end_params(double t1 = 50, double t2 = 100, double a = kPi / 8, double b = kPi / 3,
                             double d = 3) {
  return {ModelKind::end_type, t1, t2, a, b, d};
}

CornerModelParams l_params(double t1 = 50, double t2 = 100, double a = kPi / 8, double d = 3) {
  return {ModelKind::l_type, t1, t2, a, 0.0, d};
}

// Semi-analytic reference: the y-integral of psi over y >= b(x) has a closed
// form in erfc and exp, the x-integral is composite Simpson on the pieces
// where b is linear. Independent of the library's boundary and quadrature code.
class SemiAnalyticOracle {
 public:
  explicit SemiAnalyticOracle(const CornerModelParams& p) : p_(p) {}

  double operator()(double u, double sigma, double theta) const {
    const double lo = u - 10.0 * sigma;
    const double hi = u + 10.0 * sigma;
    std::vector<double> cuts{lo};
    for (double b : breaks())
      if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += simpson(cuts[i], cuts[i + 1], u, sigma, theta);
    return (p_.t1 - p_.t2) * total;
  }

 private:
  std::vector<double> breaks() const {
    if (p_.kind == ModelKind::end_type) return {0.0, p_.d};
    return {0.0};
  }

  double boundary(double x) const {
    if (x < 0) return x / std::tan(p_.alpha);
    if (p_.kind == ModelKind::l_type || x < p_.d) return 0.0;
    return -(x - p_.d) / std::tan(p_.beta);
  }

  // Integral over y >= b(x) of psi(x - u, y).
  double column(double x, double u, double sigma, double theta) const {
    const double s2 = sigma * sigma;
    const double X = x - u;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double b = boundary(x);
    const double e = std::exp(-b * b / (2 * s2));
    const double i0 = sigma * std::sqrt(kPi / 2) * std::erfc(b / (sigma * std::sqrt(2.0)));
    const double i1 = s2 * e;
    const double i2 = s2 * b * e + s2 * i0;
    const double pre = std::exp(-X * X / (2 * s2)) / (2 * kPi * s2 * s2);
    return pre * ((X * X * c * c / s2 - 1.0) * i0 + (2 * X * c * s / s2) * i1 + (s * s / s2) * i2);
  }

  double simpson(double a, double b, double u, double sigma, double theta) const {
    const int n = 4000;
    const double h = (b - a) / n;
    // Evaluate strictly inside the piece so that b(x) takes this piece's branch.
    auto f = [&](double x) {
      const double eps = 1e-12 * (b - a);
      return column(std::clamp(x, a + eps, b - eps), u, sigma, theta);
    };
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
  }

  CornerModelParams p_;
};

}  // namespace

TEST(CornerModelParams, Validation) {
  EXPECT_NO_THROW(end_params().validate());
  EXPECT_NO_THROW(l_params().validate());
  EXPECT_THROW(end_params(50, 100, 0.0).validate(), ParameterError);
  EXPECT_THROW(end_params(50, 100, kPi / 2).validate(), ParameterError);
  EXPECT_THROW(end_params(50, 100, kPi / 8, 2.0).validate(), ParameterError);
  EXPECT_THROW(end_params(50, 100, kPi / 8, kPi / 3, 0.0).validate(), ParameterError);
  EXPECT_THROW(end_params(NAN, 100).validate(), ParameterError);
  EXPECT_NO_THROW(l_params(50, 100, kPi / 8, 3).validate());
  // Equal intensities are allowed: they describe a flat patch with a zero response.
  EXPECT_NO_THROW(end_params(80, 80).validate());
}

TEST(CornerModel, RegionTests) {
  const auto end = end_params();
  EXPECT_TRUE(in_t1_region(end, ModelRole::corner, 1, 5));
  EXPECT_FALSE(in_t1_region(end, ModelRole::corner, 0, -5));
  EXPECT_TRUE(in_t1_region(end, ModelRole::corner, 0, 0));
  EXPECT_TRUE(in_t1_region(end, ModelRole::corner, 2.9, 0));
  // Beyond d the boundary descends with slope -cot(beta).
  EXPECT_TRUE(in_t1_region(end, ModelRole::corner, 4, -0.5));
  EXPECT_FALSE(in_t1_region(end, ModelRole::corner, 4, -1.0));

  const auto l = l_params(50, 100, kPi / 4);
  EXPECT_TRUE(in_t1_region(l, ModelRole::corner, -2, 3));
  EXPECT_TRUE(in_t1_region(l, ModelRole::corner, -2, -1.9));
  EXPECT_FALSE(in_t1_region(l, ModelRole::corner, -2, -2.1));
  EXPECT_TRUE(in_t1_region(l, ModelRole::corner, 40, 0));

  EXPECT_EQ(model_intensity(end, ModelRole::corner, 1, 5), 50.0);
  EXPECT_EQ(model_intensity(end, ModelRole::corner, 0, -5), 100.0);
}

TEST(CornerModel, EdgeRoleIsShiftedModel) {
  const auto p = end_params();
  for (double x : {-4.0, -0.5, 0.2, 1.4, 2.0, 5.0})
    for (double y : {-3.0, -0.4, 0.0, 1.0})
      EXPECT_EQ(in_t1_region(p, ModelRole::edge, x, y), in_t1_region(p, ModelRole::corner, x + 1.5, y));
  EXPECT_EQ(boundary_breakpoints(p, ModelRole::corner), (std::vector<double>{0.0, 3.0}));
  EXPECT_EQ(boundary_breakpoints(p, ModelRole::edge), (std::vector<double>{-1.5, 1.5}));
  EXPECT_EQ(boundary_breakpoints(l_params(), ModelRole::corner), (std::vector<double>{0.0}));
}

TEST(RenderModel, PixelsFollowRegionTests) {
  const auto p = end_params(50, 100, kPi / 8, kPi / 3, 6);
  const GrayImage img = render_model(p, 64, 64, {29, 32});
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      EXPECT_EQ(img.at(x, y), model_intensity(p, ModelRole::corner, x - 29, y - 32));
  EXPECT_THROW(render_model(p, 64, 64, {60, 32}), ParameterError);
  EXPECT_THROW(render_model(p, 64, 64, {-1, 32}), ParameterError);
  EXPECT_THROW(render_model(p, 64, 64, {10, 70}), ParameterError);
}

TEST(ClosedForm, PeriodPiAndContrastSign) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0.05, kPi / 2 - 0.05);
  std::uniform_real_distribution<double> th(0.0, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    for (ModelKind kind : {ModelKind::end_type, ModelKind::l_type}) {
      const CornerModelParams p{kind, 30, 170, ang(rng), ang(rng), 3.5};
      CornerModelParams swapped = p;
      std::swap(swapped.t1, swapped.t2);
      CornerModelParams doubled = p;
      doubled.t1 = 2 * p.t1;
      doubled.t2 = 2 * p.t2;
      for (ModelPoint at : {ModelPoint::corner(), ModelPoint::edge(p.d)}) {
        const double theta = th(rng);
        const double v = psi_closed_form(p, at, 1.3, theta);
        EXPECT_NEAR(psi_closed_form(p, at, 1.3, theta + kPi), v, 1e-12 * std::max(1.0, std::abs(v)));
        EXPECT_EQ(psi_closed_form(swapped, at, 1.3, theta), -v);
        EXPECT_NEAR(psi_closed_form(doubled, at, 1.3, theta), 2 * v, 1e-12 * std::max(1.0, std::abs(v)));
      }
    }
  }
}

TEST(ClosedForm, ZeroContrastIsZero) {
  for (double theta : {0.0, 0.3, 2.0}) {
    EXPECT_EQ(psi_closed_form(end_params(90, 90), ModelPoint::corner(), 1.1, theta), 0.0);
    EXPECT_EQ(psi_closed_form(l_params(90, 90), ModelPoint::edge(3), 1.1, theta), 0.0);
  }
}

TEST(ClosedForm, AgreesWithSemiAnalyticOracleOnRandomDraws) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> level(0.0, 255.0);
  std::uniform_real_distribution<double> ang(0.1, kPi / 2 - 0.1);
  std::uniform_real_distribution<double> sep(1.0, 8.0);
  std::uniform_real_distribution<double> sig(0.6, 3.0);
  std::uniform_real_distribution<double> th(0.0, 2 * kPi);
  for (ModelKind kind : {ModelKind::end_type, ModelKind::l_type}) {
    for (bool edge : {false, true}) {
      for (int i = 0; i < 100; ++i) {
        const CornerModelParams p{kind, level(rng), level(rng), ang(rng), ang(rng), sep(rng)};
        const double sigma = sig(rng);
        const double theta = th(rng);
        const ModelPoint at = edge ? ModelPoint::edge(p.d) : ModelPoint::corner();
        const double oracle = SemiAnalyticOracle(p)(at.u, sigma, theta);
        const double closed = psi_closed_form(p, at, sigma, theta);
        ASSERT_NEAR(closed, oracle, 1e-3 * std::max(1.0, std::abs(oracle)))
            << "kind=" << int(kind) << " edge=" << edge << " draw=" << i;
      }
    }
  }
}

TEST(Quadrature, AgreesWithSemiAnalyticOracle) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.1, kPi / 2 - 0.1);
  std::uniform_real_distribution<double> th(0.0, kPi);
  for (ModelKind kind : {ModelKind::end_type, ModelKind::l_type}) {
    for (int i = 0; i < 12; ++i) {
      const CornerModelParams p{kind, 20, 220, ang(rng), ang(rng), 2.5};
      for (ModelPoint at : {ModelPoint::corner(), ModelPoint::edge(p.d)}) {
        const double theta = th(rng);
        const double oracle = SemiAnalyticOracle(p)(at.u, 1.2, theta);
        EXPECT_NEAR(psi_quadrature(p, at, 1.2, theta), oracle, 1e-5 * std::max(1.0, std::abs(oracle)));
      }
    }
  }
}

TEST(Quadrature, MatchesClosedFormOnHundredRandomDraws) {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> level(0.0, 255.0);
  std::uniform_real_distribution<double> ang(0.1, kPi / 2 - 0.1);
  std::uniform_real_distribution<double> sep(1.0, 8.0);
  std::uniform_real_distribution<double> sig(0.6, 3.0);
  std::uniform_real_distribution<double> th(0.0, 2 * kPi);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 100; ++i) {
    const CornerModelParams p{coin(rng) ? ModelKind::end_type : ModelKind::l_type, level(rng),
                              level(rng), ang(rng), ang(rng), sep(rng)};
    const ModelPoint at = coin(rng) ? ModelPoint::edge(p.d) : ModelPoint::corner();
    const double sigma = sig(rng);
    const double theta = th(rng);
    const double q = psi_quadrature(p, at, sigma, theta);
    EXPECT_NEAR(psi_closed_form(p, at, sigma, theta), q, 1e-3 * std::max(1.0, std::abs(q)));
  }
}

TEST(Quadrature, ZeroContrastVanishes) {
  const auto p = end_params(120, 120);
  for (double theta : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(psi_quadrature(p, ModelPoint::corner(), 1.12, theta), 0.0, 1e-6);
  }
}

TEST(Quadrature, LCornerReflectionSymmetry) {
  // With alpha = pi/4 the dark wedge is symmetric about the direction 5pi/8,
  // so directions theta and pi/4 - theta see mirror images of the model.
  const auto p = l_params(50, 100, kPi / 4);
  for (double theta : {0.0, 0.2, kPi / 2, 1.1}) {
    const double a = psi_quadrature(p, ModelPoint::corner(), 1.15, theta);
    const double b = psi_quadrature(p, ModelPoint::corner(), 1.15, kPi / 4 - theta);
    EXPECT_NEAR(a, b, 1e-6 * std::max(1.0, std::abs(a)));
  }
}

TEST(UncorrectedForm, DisagreesWithOracleAtReferenceParameters) {
  // The form with the literal constants is kept for comparison only.
  const auto p = end_params(50, 100, kPi / 8, kPi / 3, 3);
  double worst = 0.0;
  for (int k = 0; k < 36; ++k) {
    const double theta = k * kPi / 36;
    const double q = psi_quadrature(p, ModelPoint::corner(), 1.12, theta);
    worst = std::max(worst, std::abs(psi_uncorrected_form(p, ModelPoint::corner(), 1.12, theta) - q) /
                                std::max(1.0, std::abs(q)));
  }
  EXPECT_GT(worst, 1e-2);
}
