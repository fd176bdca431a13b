/**
 * @file corner_model.hpp
 * @brief Piecewise-constant END-type and L-type high-resolution corner models
 *        and their closed-form directional second-derivative representations.
 *
 * Model coordinates put the corner at the origin. A point (x, y) has intensity
 * T1 when y >= b(x) and T2 otherwise, where b is the piecewise-linear boundary
 *
 *   END:  b(x) = cot(alpha) x        for x < 0
 *               0                    for 0 <= x < d
 *               -cot(beta) (x - d)   for x >= d
 *   L:    b(x) = cot(alpha) x        for x < 0
 *               0                    for x >= 0
 *
 * The edge point sits at u = d/2 on the flat segment; its representation is
 * the same model translated by -d/2.
 */
#pragma once

#include <vector>

#include "sogdd/image.hpp"

namespace sogdd {

enum class ModelKind { end_type, l_type };

enum class ModelRole { corner, edge };

struct ModelPoint {
  ModelRole role = ModelRole::corner;
  double u = 0.0;

  static ModelPoint corner() { return {ModelRole::corner, 0.0}; }
  static ModelPoint edge(double d) { return {ModelRole::edge, d / 2.0}; }
};

struct CornerModelParams {
  ModelKind kind = ModelKind::end_type;
  double t1 = 50.0;
  double t2 = 100.0;
  double alpha = 0.0;
  double beta = 0.0;  // ignored for L-type
  double d = 3.0;

  /// Throws ParameterError unless alpha (and beta for END) lie strictly inside
  /// (0, pi/2), d > 0, and the intensities are finite.
  void validate() const;
  double contrast() const noexcept { return t1 - t2; }
};

/// Boundary b(x) for the model seen from `at` (origin moved to the point).
double boundary_height(const CornerModelParams& p, ModelRole role, double x);

/// Abscissae where b(x) changes slope, in increasing order.
std::vector<double> boundary_breakpoints(const CornerModelParams& p, ModelRole role);

/// Region test written exactly as the model's piecewise definition (>= on
/// the dividing lines assigns T1).
bool in_t1_region(const CornerModelParams& p, ModelRole role, double x, double y);

double model_intensity(const CornerModelParams& p, ModelRole role, double x, double y);

struct PixelOrigin {
  int x = 0;
  int y = 0;
};

/// Renders the corner-centred model: pixel (px, py) takes the intensity of the
/// model point (px - origin.x, py - origin.y). Throws ParameterError when the
/// corner (or, for END, the second corner at u = d) falls outside the canvas.
GrayImage render_model(const CornerModelParams& p, int width, int height, PixelOrigin origin);

/// How the error-function-like term in the closed forms is read.
enum class PhiConvention { erf, normal_cdf };

/// Closed-form Psi(theta) = integral of f(x, y) psi_theta(-x, -y) at `at`
/// for scale sigma. The erfc factors use the error function:
/// 1 - erf(sqrt(2) d sin(gamma) / (k sigma)).
double psi_closed_form(const CornerModelParams& p, ModelPoint at, double sigma, double theta);

/// Variant of the same expressions carrying sqrt(pi)/2 on every
/// cos^2(theta)/tan(gamma) term and, for the END corner, a negated cos^2 term
/// in both beta brackets. It disagrees with direct integration except at
/// theta = pi/2; retained so the discrepancy can be reported.
double psi_uncorrected_form(const CornerModelParams& p, ModelPoint at, double sigma, double theta,
                        PhiConvention phi = PhiConvention::erf);

}  // namespace sogdd
