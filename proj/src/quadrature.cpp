#include "sogdd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sogdd/errors.hpp"

namespace sogdd {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw ParameterError("Gauss-Legendre order must be positive");
  if (n == 1) return {{0.0}, {2.0}};
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the usual Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p_prev = 1.0;
      double p_cur = x;
      for (int k = 2; k <= n; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p_cur - (k - 1.0) * p_prev) / k;
        p_prev = p_cur;
        p_cur = p_next;
      }
      derivative = n * (x * p_cur - p_prev) / (x * x - 1.0);
      const double step = p_cur / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

namespace {

const GaussLegendreRule& cached_rule(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

// Composite rule: `panels` equal panels on [a, b].
template <typename F>
double composite(const GaussLegendreRule& rule, double a, double b, int panels, F&& f) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

double estimate(const CornerModelParams& p, ModelRole role, double sigma, double theta,
                double half, const GaussLegendreRule& rule, int panels) {
  std::vector<double> cuts{-half};
  for (double b : boundary_breakpoints(p, role)) {
    if (b > -half && b < half) cuts.push_back(b);
  }
  cuts.push_back(half);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double s2 = sigma * sigma;
  const double norm = 1.0 / (2.0 * std::numbers::pi * s2 * s2);

  // psi(-x, -y); the Gaussian factor in x is hoisted out of the inner rule.
  auto column = [&](double x) {
    const double b = std::clamp(boundary_height(p, role, x), -half, half);
    const double gx = std::exp(-x * x / (2.0 * s2));
    auto filter = [&](double y) {
      const double u = x * c + y * s;
      return (u * u / s2 - 1.0) * norm * gx * std::exp(-y * y / (2.0 * s2));
    };
    const double upper = composite(rule, b, half, panels, filter);
    const double lower = composite(rule, -half, b, panels, filter);
    return p.t1 * upper + p.t2 * lower;
  };

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += composite(rule, cuts[i], cuts[i + 1], panels, column);
  }
  return total;
}

}  // namespace

QuadratureResult integrate_model(const CornerModelParams& p, ModelPoint at, double sigma,
                                 double theta, const QuadratureOptions& options) {
  p.validate();
  if (!(sigma > 0.0)) throw ParameterError("sigma must be positive");
  const double half = options.half_width_sigmas * sigma;
  const auto& rule = cached_rule(options.order);
  const double tolerance = std::max(options.relative_tolerance * std::abs(p.contrast()), 1e-12);

  QuadratureResult result;
  int panels = options.initial_panels;
  double previous = estimate(p, at.role, sigma, theta, half, rule, panels);
  for (int level = 0; level < options.max_refinements; ++level) {
    panels *= 2;
    const double current = estimate(p, at.role, sigma, theta, half, rule, panels);
    result.last_change = std::abs(current - previous);
    result.value = current;
    result.panels = panels;
    previous = current;
    if (result.last_change < tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

double psi_quadrature(const CornerModelParams& p, ModelPoint at, double sigma, double theta) {
  return integrate_model(p, at, sigma, theta).value;
}

}  // namespace sogdd
