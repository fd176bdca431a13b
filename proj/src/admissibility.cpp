#include "sogdd/admissibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "sogdd/errors.hpp"
#include "sogdd/parallel.hpp"
#include "sogdd/quadrature.hpp"

namespace sogdd {

double periodic_energy(const std::function<double(double)>& f, int samples) {
  if (samples < 2) throw ParameterError("energy needs at least 2 samples");
  const double h = std::numbers::pi / samples;
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double v = f(k * h);
    total += v * v;
  }
  return 2.0 * h * total;
}

double energy(const CornerModelParams& p, ModelPoint at, double sigma, int samples) {
  return periodic_energy([&](double theta) { return psi_closed_form(p, at, sigma, theta); },
                         samples);
}

void SigmaGrid::validate() const {
  if (!(step > 0.0) || step > 0.01 + 1e-12) throw ParameterError("sigma grid step must be in (0, 0.01]");
  if (!(min > 0.0) || min > 0.5 || max < 3.0) {
    throw ParameterError("sigma grid must cover (0.5, 3.0) with a positive lower end");
  }
}

std::vector<double> SigmaGrid::points() const {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((max - min) / step + 1e-9));
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(min + static_cast<double>(i) * step);
  return out;
}

std::optional<ScaleInterval> ScaleAdmissibility::primary() const {
  if (intervals.empty()) return std::nullopt;
  return intervals.front();
}

namespace {

double energy_difference(const CornerModelParams& p, double sigma) {
  return energy(p, ModelPoint::corner(), sigma) - energy(p, ModelPoint::edge(p.d), sigma);
}

double refine_root(const CornerModelParams& p, double lo, double hi) {
  double f_lo = energy_difference(p, lo);
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = energy_difference(p, mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

QuadraticFit fit_quadratic(const ScaleAdmissibility& a, double endpoint) {
  const double scale = a.params.contrast() * a.params.contrast();
  // Accumulate normal equations in t = sigma - endpoint for conditioning.
  std::array<double, 5> moments{};
  std::array<double, 3> rhs{};
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < a.sigma.size(); ++i) {
    const double s = a.sigma[i];
    if (s < 0.8 * endpoint || s > 1.2 * endpoint) continue;
    const double v = std::pow(s, 4) * a.difference[i] / scale;
    const double t = s - endpoint;
    samples.emplace_back(t, v);
    double tp = 1.0;
    for (int k = 0; k < 5; ++k, tp *= t) {
      moments[static_cast<std::size_t>(k)] += tp;
      if (k < 3) rhs[static_cast<std::size_t>(k)] += tp * v;
    }
  }
  QuadraticFit fit;
  fit.endpoint = endpoint;
  if (samples.size() < 3) return fit;

  // Solve [m0 m1 m2; m1 m2 m3; m2 m3 m4] [C B A]^T = rhs by Cramer's rule.
  auto det3 = [](const std::array<double, 9>& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  };
  const std::array<double, 9> base{moments[0], moments[1], moments[2], moments[1], moments[2],
                                   moments[3], moments[2], moments[3], moments[4]};
  const double det = det3(base);
  if (det == 0.0) return fit;
  std::array<double, 3> coef{};
  for (int col = 0; col < 3; ++col) {
    auto m = base;
    for (int row = 0; row < 3; ++row) m[static_cast<std::size_t>(row * 3 + col)] = rhs[static_cast<std::size_t>(row)];
    coef[static_cast<std::size_t>(col)] = det3(m) / det;
  }
  const double C = coef[0], B = coef[1], A = coef[2];
  double sq = 0.0;
  for (const auto& [t, v] : samples) {
    const double r = A * t * t + B * t + C - v;
    sq += r * r;
  }
  fit.residual = std::sqrt(sq / static_cast<double>(samples.size()));
  fit.a = A;
  fit.b = B - 2.0 * A * endpoint;
  fit.c = C - B * endpoint + A * endpoint * endpoint;
  const double disc = fit.b * fit.b - 4.0 * fit.a * fit.c;
  if (fit.a != 0.0 && disc >= 0.0) {
    const double sq_disc = std::sqrt(disc);
    fit.roots = {(-fit.b - sq_disc) / (2.0 * fit.a), (-fit.b + sq_disc) / (2.0 * fit.a)};
    std::sort(fit.roots.begin(), fit.roots.end());
  }
  return fit;
}

}  // namespace

ScaleAdmissibility admissible_interval(const CornerModelParams& p, const SigmaGrid& grid) {
  p.validate();
  grid.validate();
  ScaleAdmissibility out;
  out.params = p;
  out.sigma = grid.points();
  const std::size_t n = out.sigma.size();
  out.energy_corner.resize(n);
  out.energy_edge.resize(n);
  out.difference.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.energy_corner[i] = energy(p, ModelPoint::corner(), out.sigma[i]);
    out.energy_edge[i] = energy(p, ModelPoint::edge(p.d), out.sigma[i]);
    out.difference[i] = out.energy_corner[i] - out.energy_edge[i];
  }

  std::optional<ScaleInterval> open;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = out.difference[i] > 0.0;
    if (positive && !open) {
      ScaleInterval iv;
      if (i == 0) {
        iv.lo = out.sigma[0];
      } else {
        iv.lo = refine_root(p, out.sigma[i - 1], out.sigma[i]);
        iv.lo_bounded = true;
      }
      open = iv;
    } else if (!positive && open) {
      open->hi = refine_root(p, out.sigma[i - 1], out.sigma[i]);
      open->hi_bounded = true;
      out.intervals.push_back(*open);
      open.reset();
    }
  }
  if (open) {
    open->hi = out.sigma.back();
    out.intervals.push_back(*open);
  }

  for (const auto& iv : out.intervals) {
    if (iv.lo_bounded) out.fits.push_back(fit_quadratic(out, iv.lo));
    if (iv.hi_bounded) out.fits.push_back(fit_quadratic(out, iv.hi));
  }

  if (out.intervals.empty()) {
    out.diagnostic = "corner energy never exceeds edge energy on the grid";
  } else if (!out.intervals.front().lo_bounded && !out.intervals.front().hi_bounded &&
             out.intervals.size() == 1) {
    out.diagnostic = "corner energy exceeds edge energy on the whole grid (unbounded interval)";
  } else if (!out.intervals.front().lo_bounded) {
    out.diagnostic = "admissible interval is unbounded below on the grid";
  }
  return out;
}

std::vector<double> default_sweep_angles() {
  constexpr double pi = std::numbers::pi;
  return {pi / 12, pi / 8, pi / 6, pi / 4, pi / 3, 5 * pi / 12};
}

SweepSummary sweep_admissibility(ModelKind kind, double d, const SigmaGrid& grid,
                                 const std::vector<double>& angles, double t1, double t2) {
  grid.validate();
  SweepSummary summary;
  const std::vector<double> betas = kind == ModelKind::end_type ? angles : std::vector<double>{0.0};
  for (double a : angles)
    for (double b : betas) summary.rows.push_back({a, b, std::nullopt});

  parallel_for(static_cast<int>(summary.rows.size()), [&](int i) {
    auto& row = summary.rows[static_cast<std::size_t>(i)];
    CornerModelParams p{kind, t1, t2, row.alpha, row.beta, d};
    row.interval = admissible_interval(p, grid).primary();
  });

  for (const auto& row : summary.rows) {
    if (!row.interval) continue;
    if (row.interval->lo_bounded) {
      summary.min_lower = std::min(summary.min_lower.value_or(row.interval->lo), row.interval->lo);
    }
    if (row.interval->hi_bounded) {
      summary.min_upper = std::min(summary.min_upper.value_or(row.interval->hi), row.interval->hi);
    }
  }
  return summary;
}

ModelProfiles model_profiles(const CornerModelParams& p, double sigma, int samples) {
  p.validate();
  if (samples < 1) throw ParameterError("profile needs at least one sample");
  ModelProfiles out;
  out.corner_quadrature.provenance = Provenance::quadrature;
  out.edge_quadrature.provenance = Provenance::quadrature;
  for (auto* prof : {&out.corner_closed, &out.corner_quadrature, &out.edge_closed, &out.edge_quadrature}) {
    prof->theta.resize(static_cast<std::size_t>(samples));
    prof->psi.resize(static_cast<std::size_t>(samples));
  }
  const ModelPoint corner = ModelPoint::corner();
  const ModelPoint edge = ModelPoint::edge(p.d);
  parallel_for(samples, [&](int k) {
    const auto i = static_cast<std::size_t>(k);
    const double theta = 2.0 * std::numbers::pi * k / samples;
    for (auto* prof : {&out.corner_closed, &out.corner_quadrature, &out.edge_closed, &out.edge_quadrature}) {
      prof->theta[i] = theta;
    }
    out.corner_closed.psi[i] = psi_closed_form(p, corner, sigma, theta);
    out.edge_closed.psi[i] = psi_closed_form(p, edge, sigma, theta);
    out.corner_quadrature.psi[i] = psi_quadrature(p, corner, sigma, theta);
    out.edge_quadrature.psi[i] = psi_quadrature(p, edge, sigma, theta);
  });
  return out;
}

double relative_sup_deviation(const SogddProfile& a, const SogddProfile& b) {
  if (a.psi.size() != b.psi.size()) throw ParameterError("profiles differ in length");
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < a.psi.size(); ++i) {
    diff = std::max(diff, std::abs(a.psi[i] - b.psi[i]));
    ref = std::max(ref, std::abs(b.psi[i]));
  }
  return diff / std::max(ref, 1.0);
}

}  // namespace sogdd
