#include "sogdd/corner_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sogdd/errors.hpp"

namespace sogdd {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

bool open_right_angle(double a) { return a > 0.0 && a < kPi / 2.0; }

double eval_shift(const CornerModelParams& p, ModelRole role) {
  return role == ModelRole::edge ? p.d / 2.0 : 0.0;
}

// Upper tail term 1 - Phi(z) under the chosen reading of Phi.
double upper_tail(double z, PhiConvention phi) {
  return phi == PhiConvention::erf ? std::erfc(z) : 0.5 * std::erfc(z / std::numbers::sqrt2);
}

// Trigonometric pieces shared by all four expressions.
struct Angles {
  double c2;  // cos^2 theta
  double s2;  // sin^2 theta
  double S2;  // sin 2 theta
  explicit Angles(double theta)
      : c2(std::cos(theta) * std::cos(theta)),
        s2(std::sin(theta) * std::sin(theta)),
        S2(std::sin(2.0 * theta)) {}
};

// kappa multiplies every cos^2(theta)/tan(gamma) term: 1 for the corrected
// expressions, sqrt(pi)/2 for the uncorrected variant. end_sign is the sign
// of that term inside the two beta brackets of the END corner.
struct FormCoefficients {
  double kappa;
  double end_sign;
};

constexpr FormCoefficients kCorrected{1.0, 1.0};
const FormCoefficients kUncorrected{std::sqrt(kPi) / 2.0, -1.0};

double end_corner(const CornerModelParams& p, double s, const Angles& t, FormCoefficients f,
                  PhiConvention phi) {
  const double d = p.d;
  const double ta = std::tan(p.alpha);
  const double tb = std::tan(p.beta);
  const double sa = std::sin(p.alpha);
  const double sb = std::sin(p.beta);
  const double cb = std::cos(p.beta);
  const double e_d = std::exp(-d * d / (2 * s * s));
  const double e_b = std::exp(-d * d * cb * cb / (2 * s * s));
  const double tail_b = upper_tail(std::numbers::sqrt2 * d * sb / (2 * s), phi);

  const double alpha_bracket = f.kappa * t.c2 / ta - t.s2 / ta - t.S2;
  const double beta_bracket = t.S2 + f.end_sign * f.kappa * t.c2 / tb - t.s2 / tb;

  const double value =
      sa * sa / (2 * kPi * s * s) * alpha_bracket +
      sb * sb / (2 * kPi * s * s) * e_d * beta_bracket -
      kSqrt2Pi * d * sb * sb * sb / (4 * kPi * s * s * s) * e_b * tail_b * beta_bracket +
      t.S2 / (2 * kPi * s * s) * (1 - e_d) +
      kSqrt2Pi * d * sb / (4 * kPi * s * s * s) * e_b * tail_b * (t.S2 + f.kappa * t.c2 / tb);
  return p.contrast() * value;
}

double end_edge(const CornerModelParams& p, double s, const Angles& t, FormCoefficients f,
                PhiConvention phi) {
  const double d = p.d;
  const double ta = std::tan(p.alpha);
  const double tb = std::tan(p.beta);
  const double sa = std::sin(p.alpha);
  const double sb = std::sin(p.beta);
  const double ca = std::cos(p.alpha);
  const double cb = std::cos(p.beta);
  const double e_a = std::exp(-d * d * ca * ca / (8 * s * s));
  const double e_b = std::exp(-d * d * cb * cb / (8 * s * s));
  const double e_half = std::exp(-d * d / (8 * s * s));
  const double tail_a = upper_tail(std::numbers::sqrt2 * d * sa / (4 * s), phi);
  const double tail_b = upper_tail(std::numbers::sqrt2 * d * sb / (4 * s), phi);

  const double alpha_bracket = f.kappa * t.c2 / ta - t.S2 - t.s2 / ta;
  const double beta_bracket = f.kappa * t.c2 / tb + t.S2 - t.s2 / tb;

  const double value =
      -kSqrt2Pi * sa / 2 * e_a * tail_a * (d / 2 * t.S2 - f.kappa * d * t.c2 / (2 * ta)) -
      kSqrt2Pi * d * sa * sa * sa / 4 * e_a * tail_a * alpha_bracket -
      kSqrt2Pi * d * sb * sb * sb / 4 * e_b * tail_b * beta_bracket +
      kSqrt2Pi * sb / 2 * e_b * tail_b * (d / 2 * t.S2 + f.kappa * d * t.c2 / (2 * tb)) +
      s * e_half * (sa * sa * alpha_bracket + sb * sb * beta_bracket);
  return p.contrast() / (2 * kPi * s * s * s) * value;
}

double l_corner(const CornerModelParams& p, double s, const Angles& t, FormCoefficients f) {
  const double ta = std::tan(p.alpha);
  const double sa = std::sin(p.alpha);
  const double bracket = -f.kappa * t.c2 / ta + t.S2 + t.s2 / ta;
  return -p.contrast() / (2 * kPi * s * s) * (-t.S2 + sa * sa * bracket);
}

double l_edge(const CornerModelParams& p, double s, const Angles& t, FormCoefficients f,
              PhiConvention phi) {
  const double d = p.d;
  const double ta = std::tan(p.alpha);
  const double sa = std::sin(p.alpha);
  const double ca = std::cos(p.alpha);
  const double e_a = std::exp(-d * d * ca * ca / (8 * s * s));
  const double e_half = std::exp(-d * d / (8 * s * s));
  const double tail_a = upper_tail(std::numbers::sqrt2 * d * sa / (4 * s), phi);
  const double bracket = -f.kappa * t.c2 / ta + t.S2 + t.s2 / ta;

  const double value = s * sa * sa * e_half * bracket - s * t.S2 * e_half -
                       kSqrt2Pi * d * sa * sa * sa / 4 * e_a * tail_a * bracket +
                       kSqrt2Pi * sa / 2 * e_a * tail_a *
                           (d / 2 * t.S2 - f.kappa * d * t.c2 / (2 * ta));
  return -p.contrast() / (2 * kPi * s * s * s) * value;
}

double evaluate(const CornerModelParams& p, ModelPoint at, double sigma, double theta,
                FormCoefficients f, PhiConvention phi) {
  p.validate();
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  const Angles t(theta);
  if (p.kind == ModelKind::end_type) {
    return at.role == ModelRole::corner ? end_corner(p, sigma, t, f, phi)
                                        : end_edge(p, sigma, t, f, phi);
  }
  return at.role == ModelRole::corner ? l_corner(p, sigma, t, f) : l_edge(p, sigma, t, f, phi);
}

}  // namespace

void CornerModelParams::validate() const {
  if (!open_right_angle(alpha)) throw ParameterError("alpha must lie in (0, pi/2)");
  if (kind == ModelKind::end_type && !open_right_angle(beta)) {
    throw ParameterError("beta must lie in (0, pi/2)");
  }
  if (!(d > 0.0) || !std::isfinite(d)) throw ParameterError("corner separation d must be positive");
  if (!std::isfinite(t1) || !std::isfinite(t2)) throw ParameterError("intensities must be finite");
}

double boundary_height(const CornerModelParams& p, ModelRole role, double x) {
  const double xm = x + eval_shift(p, role);  // corner-centred abscissa
  if (xm < 0.0) return std::tan(kPi / 2.0 - p.alpha) * xm;
  if (p.kind == ModelKind::l_type || xm < p.d) return 0.0;
  return std::tan(kPi / 2.0 + p.beta) * (xm - p.d);
}

std::vector<double> boundary_breakpoints(const CornerModelParams& p, ModelRole role) {
  const double shift = eval_shift(p, role);
  if (p.kind == ModelKind::l_type) return {-shift};
  return {-shift, p.d - shift};
}

bool in_t1_region(const CornerModelParams& p, ModelRole role, double x, double y) {
  const double xm = x + eval_shift(p, role);
  if (xm < 0.0) return y >= std::tan(kPi / 2.0 - p.alpha) * xm;
  if (p.kind == ModelKind::l_type) return y >= 0.0;
  if (xm < p.d) return y >= 0.0;
  return y >= std::tan(kPi / 2.0 + p.beta) * (xm - p.d);
}

double model_intensity(const CornerModelParams& p, ModelRole role, double x, double y) {
  return in_t1_region(p, role, x, y) ? p.t1 : p.t2;
}

GrayImage render_model(const CornerModelParams& p, int width, int height, PixelOrigin origin) {
  p.validate();
  GrayImage img(width, height);
  const bool corner_inside = img.contains(origin.x, origin.y);
  const bool far_inside =
      p.kind == ModelKind::l_type ||
      img.contains(static_cast<int>(std::ceil(origin.x + p.d)), origin.y);
  if (!corner_inside || !far_inside) {
    throw ParameterError("model origin (" + std::to_string(origin.x) + ", " +
                         std::to_string(origin.y) + ") places the model outside the canvas");
  }
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      img.at(x, y) = model_intensity(p, ModelRole::corner, x - origin.x, y - origin.y);
  return img;
}

double psi_closed_form(const CornerModelParams& p, ModelPoint at, double sigma, double theta) {
  return evaluate(p, at, sigma, theta, kCorrected, PhiConvention::erf);
}

double psi_uncorrected_form(const CornerModelParams& p, ModelPoint at, double sigma, double theta,
                            PhiConvention phi) {
  return evaluate(p, at, sigma, theta, kUncorrected, phi);
}

}  // namespace sogdd
