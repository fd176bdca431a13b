/**
 * @file admissibility.hpp
 * @brief Directional energy of the model representations and the range of
 *        scales over which the corner out-scores the edge midpoint.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sogdd/corner_model.hpp"

namespace sogdd {

/// Integral of f(theta)^2 over [0, 2 pi) for a pi-periodic f, computed as
/// twice the trapezoid rule on [0, pi) with `samples` nodes.
double periodic_energy(const std::function<double(double)>& f, int samples = 256);

/// Energy of the closed-form representation at `at`.
double energy(const CornerModelParams& p, ModelPoint at, double sigma, int samples = 256);

struct SigmaGrid {
  double min = 0.3;
  double max = 8.0;
  double step = 0.01;

  /// Throws ParameterError unless the grid covers (0.5, 3.0) with step <= 0.01.
  void validate() const;
  std::vector<double> points() const;
};

/// A maximal run of the grid where E(sigma) > 0. An endpoint is `bounded`
/// when it is a refined sign change rather than the end of the grid.
struct ScaleInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_bounded = false;
  bool hi_bounded = false;
};

/// Least-squares quadratic a s^2 + b s + c fitted to sigma^4 E(sigma) / (T1-T2)^2
/// near a refined endpoint, with its real roots and RMS residual.
struct QuadraticFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual = 0.0;
  std::vector<double> roots;
  double endpoint = 0.0;
};

struct ScaleAdmissibility {
  CornerModelParams params;
  std::vector<double> sigma;
  std::vector<double> energy_corner;
  std::vector<double> energy_edge;
  std::vector<double> difference;
  std::vector<ScaleInterval> intervals;
  std::vector<QuadraticFit> fits;
  std::string diagnostic;

  /// First admissible run, if any.
  std::optional<ScaleInterval> primary() const;
};

/// E(sigma) = energy(corner) - energy(edge) on the grid, with sign changes
/// refined by bisection to 1e-4.
ScaleAdmissibility admissible_interval(const CornerModelParams& p, const SigmaGrid& grid = {});

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<ScaleInterval> interval;
};

struct SweepSummary {
  std::vector<SweepRow> rows;
  /// Minimum over rows of bounded lower / upper endpoints.
  std::optional<double> min_lower;
  std::optional<double> min_upper;
};

/// Angles {pi/12, pi/8, pi/6, pi/4, pi/3, 5pi/12}.
std::vector<double> default_sweep_angles();

/// Runs admissible_interval over alpha x beta (alpha only for L-type).
SweepSummary sweep_admissibility(ModelKind kind, double d, const SigmaGrid& grid = {},
                                 const std::vector<double>& angles = default_sweep_angles(),
                                 double t1 = 50.0, double t2 = 100.0);

enum class Provenance { closed_form, quadrature };

struct SogddProfile {
  std::vector<double> theta;
  std::vector<double> psi;
  Provenance provenance = Provenance::closed_form;
};

struct ModelProfiles {
  SogddProfile corner_closed;
  SogddProfile corner_quadrature;
  SogddProfile edge_closed;
  SogddProfile edge_quadrature;
};

/// Profiles on theta_k = 2 pi k / samples for corner and edge point.
ModelProfiles model_profiles(const CornerModelParams& p, double sigma, int samples = 360);

/// sup |a - b| / max(1, sup |b|), with b the reference profile.
double relative_sup_deviation(const SogddProfile& a, const SogddProfile& b);

}  // namespace sogdd
