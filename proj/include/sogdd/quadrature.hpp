/**
 * @file quadrature.hpp
 * @brief Direct numerical integration of a corner model against the
 *        continuous directional second-derivative filter.
 *
 * Independent of the closed forms: the integral is evaluated as an iterated
 * Gauss-Legendre rule over the square [-8 sigma, 8 sigma]^2 centred on the
 * evaluation point. The outer (x) panels are split at the kinks of the model
 * boundary and the inner (y) panels at the boundary itself, so every panel
 * integrates a smooth function. Panel counts double until two successive
 * estimates agree to the requested tolerance.
 */
#pragma once

#include <vector>

#include "sogdd/corner_model.hpp"

namespace sogdd {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

struct QuadratureOptions {
  double half_width_sigmas = 8.0;
  int order = 16;
  int initial_panels = 4;
  int max_refinements = 6;
  /// Absolute tolerance relative to |T1 - T2| (an absolute floor of 1e-12 applies).
  double relative_tolerance = 1e-6;
};

struct QuadratureResult {
  double value = 0.0;
  double last_change = 0.0;
  int panels = 0;
  bool converged = false;
};

QuadratureResult integrate_model(const CornerModelParams& p, ModelPoint at, double sigma,
                                 double theta, const QuadratureOptions& options = {});

/// Value of integrate_model with default options.
double psi_quadrature(const CornerModelParams& p, ModelPoint at, double sigma, double theta);

}  // namespace sogdd
