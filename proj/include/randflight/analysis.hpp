// Copyright 2026 The randflight Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Numerical integration of the flight densities, CDF construction with
// endpoint atoms, statistical comparison of samples against the closed
// forms, difference tables, and convergence-rate fits.
//
// All integrals use the substitution x = ct sin(theta).  The marginal
// density carries a 1/sqrt(c^2 t^2 - x^2) boundary singularity; the
// substitution's Jacobian ct cos(theta) cancels it symbolically, so every
// integrand below is smooth on the closed theta interval and plain
// Gauss-Kronrod panels converge at spectral rate.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "randflight/densities.hpp"
#include "randflight/montecarlo.hpp"
#include "randflight/params.hpp"
#include "randflight/quadrature.hpp"

namespace randflight {

// Which absolutely continuous density to integrate.
//
//  - telegraph_ac:   AC part of the line process, over x in [-ct, ct].
//  - marginal:       coordinate marginal of the planar flight, same range.
//  - planar_radial:  2*pi*r times the planar AC density, over r in [0, ct];
//                    its integral over [0, ct] is the AC disk mass.
enum class DensityKind { telegraph_ac, marginal, planar_radial };

// Which one-dimensional law a CDF or sample comparison refers to.
enum class LawKind { telegraph, marginal };

namespace detail {

// Integrand in theta after the substitution x = ct sin(theta) (or
// r = ct sin(theta) for the radial kind).  The inverse square root of the
// marginal and radial densities cancels against the Jacobian, leaving:
//
//   telegraph_ac:  (lambda/2c) e^{w-lambda t} [I0^(w) s + ct I1^(w)]
//   marginal:      e^{-lambda t}/pi
//                    + (lambda/2c) e^{w-lambda t} [I0^(w) + L0^(w)] s
//   planar_radial: lambda t sin(theta) e^{w-lambda t}
//
// with s = ct cos(theta) and w = (lambda/c) s.  cos(theta) can round to a
// tiny negative value when theta sits within one ulp of +-pi/2; s is
// clamped at zero so w stays in the Bessel domain.
template <DensityKind Kind>
double theta_integrand(double theta, double t, const FlightParams& p) {
  const double ct = p.c * t;
  const double lambda_t = p.lambda * t;
  double s = ct * std::cos(theta);
  if (s < 0.0) s = 0.0;
  const double w = (p.lambda / p.c) * s;
  const double damping = std::exp(damped_exponent(w, lambda_t));
  if constexpr (Kind == DensityKind::telegraph_ac) {
    return (p.lambda / (2.0 * p.c)) * damping *
           (bessel_i_scaled(0, w) * s + ct * bessel_i_scaled(1, w));
  } else if constexpr (Kind == DensityKind::marginal) {
    return std::exp(-lambda_t) / std::numbers::pi +
           (p.lambda / (2.0 * p.c)) * damping *
               (bessel_i_scaled(0, w) + struve_l0_scaled(w)) * s;
  } else {
    return lambda_t * std::sin(theta) * damping;
  }
}

// Maps a support coordinate to its theta preimage, clamping roundoff
// excursions outside [-1, 1].
inline double theta_of(double x, double ct) {
  return std::asin(std::clamp(x / ct, -1.0, 1.0));
}

template <DensityKind Kind>
QuadratureResult integrate_density_impl(double t, const FlightParams& p,
                                        double a, double b) {
  const double ct = p.c * t;
  const double lower_limit =
      Kind == DensityKind::planar_radial ? 0.0 : -ct;
  if (!(a <= b)) {
    throw std::invalid_argument("integrate_density: lower bound exceeds upper bound");
  }
  if (a < lower_limit || b > ct) {
    throw std::domain_error("integrate_density: interval extends outside the support");
  }
  auto f = [t, &p](double theta) {
    return theta_integrand<Kind>(theta, t, p);
  };
  return integrate_adaptive(f, theta_of(a, ct), theta_of(b, ct));
}

}  // namespace detail

// Integrates the chosen AC density over [a, b] with absolute tolerance
// 1e-10.  [a, b] must lie inside [-ct, ct] (or [0, ct] for the radial
// kind); an interval reaching outside the support throws std::domain_error.
inline QuadratureResult integrate_density(DensityKind which, double t,
                                          const FlightParams& p, double a,
                                          double b) {
  detail::require_time(t);
  detail::require_finite(a, "integration bound a");
  detail::require_finite(b, "integration bound b");
  switch (which) {
    case DensityKind::telegraph_ac:
      return detail::integrate_density_impl<DensityKind::telegraph_ac>(t, p, a, b);
    case DensityKind::marginal:
      return detail::integrate_density_impl<DensityKind::marginal>(t, p, a, b);
    case DensityKind::planar_radial:
      return detail::integrate_density_impl<DensityKind::planar_radial>(t, p, a, b);
  }
  throw std::invalid_argument("integrate_density: unknown density kind");
}

// Distribution function Pr{X(t) <= x} of the chosen law, right-continuous.
// The telegraph law places mass e^{-lambda t}/2 on each endpoint +-ct, so
// its CDF jumps there; the marginal law is continuous.  Arguments outside
// the support clamp to 0 or 1.
inline double cdf(LawKind which, double x, double t, const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const double ct = p.c * t;
  if (x < -ct) return 0.0;
  if (x >= ct) return 1.0;
  const double atom = which == LawKind::telegraph ? std::exp(-p.lambda * t) : 0.0;
  const double upper = detail::theta_of(x, ct);
  auto f = [which, t, &p](double theta) {
    return which == LawKind::telegraph
               ? detail::theta_integrand<DensityKind::telegraph_ac>(theta, t, p)
               : detail::theta_integrand<DensityKind::marginal>(theta, t, p);
  };
  const double ac_mass =
      integrate_adaptive(f, -0.5 * std::numbers::pi, upper).value;
  return std::clamp(0.5 * atom + ac_mass, 0.0, 1.0);
}

// Cached CDF of a one-dimensional law at fixed (t, p).  Construction
// tabulates prefix integrals of the AC density over a uniform theta
// partition; each query then costs one 15-point panel over the partial
// panel containing the query point.  Panels are smooth analytic integrands
// of oscillation scale lambda*t over [-pi/2, pi/2], so the panel count
// scales with lambda*t to keep the per-panel phase change small.
class LawCdf {
 public:
  LawCdf(LawKind which, double t, const FlightParams& p,
         std::size_t panels = 0)
      : which_(which),
        t_(t),
        params_(p),
        ct_(p.c * t),
        atom_(which == LawKind::telegraph ? std::exp(-p.lambda * t) : 0.0) {
    detail::require_time(t);
    if (panels == 0) {
      const double scaled = 16.0 * p.lambda * t;
      panels = std::max<std::size_t>(
          2048, scaled < 1e7 ? static_cast<std::size_t>(scaled) : 0);
      if (panels > (1u << 22)) panels = 1u << 22;
    }
    if (panels < 16) {
      throw std::invalid_argument("LawCdf: need at least 16 panels");
    }
    panels_ = panels;
    prefix_.assign(panels_ + 1, 0.0);
    const double step = std::numbers::pi / static_cast<double>(panels_);
    double running = 0.0;
    for (std::size_t i = 0; i < panels_; ++i) {
      const double lo = -0.5 * std::numbers::pi + step * static_cast<double>(i);
      const double hi = -0.5 * std::numbers::pi + step * static_cast<double>(i + 1);
      double kron = 0.0;
      double gauss = 0.0;
      detail::kronrod_panel([this](double theta) { return integrand(theta); },
                            lo, hi, &kron, &gauss);
      running += kron;
      prefix_[i + 1] = running;
    }
  }

  double time() const { return t_; }
  const FlightParams& params() const { return params_; }

  // Left and right limits of the CDF at x, as a pair (F(x-), F(x)).  The
  // two differ only at the telegraph endpoint atoms.
  std::pair<double, double> limits(double x) const {
    if (x < -ct_) return {0.0, 0.0};
    if (x > ct_) return {1.0, 1.0};
    if (x == -ct_) {
      return {0.0, std::clamp(0.5 * atom_, 0.0, 1.0)};
    }
    if (x == ct_) {
      return {std::clamp(0.5 * atom_ + prefix_[panels_], 0.0, 1.0), 1.0};
    }
    const double value = std::clamp(0.5 * atom_ + ac_below(x), 0.0, 1.0);
    return {value, value};
  }

  // Right-continuous CDF value Pr{X <= x}.
  double operator()(double x) const {
    if (x >= ct_) return 1.0;
    return limits(x).second;
  }

  // Left limit Pr{X < x}.
  double left_limit(double x) const { return limits(x).first; }

  // Generalized inverse: smallest x with F(x) >= u, for u in (0, 1).
  // Values of u inside an endpoint atom return that endpoint exactly.
  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
      throw std::domain_error("quantile: u must lie in (0, 1)");
    }
    if (u <= 0.5 * atom_) return -ct_;
    if (u >= 1.0 - 0.5 * atom_) return ct_;
    double lo = -ct_;
    double hi = ct_;
    for (int iteration = 0; iteration < 200 && hi - lo > 1e-15 * ct_;
         ++iteration) {
      const double mid = 0.5 * (lo + hi);
      if (operator()(mid) >= u) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

 private:
  double integrand(double theta) const {
    return which_ == LawKind::telegraph
               ? detail::theta_integrand<DensityKind::telegraph_ac>(theta, t_, params_)
               : detail::theta_integrand<DensityKind::marginal>(theta, t_, params_);
  }

  // AC mass of (-ct, x] for x strictly inside the support: full panels
  // from the prefix table plus one partial panel.
  double ac_below(double x) const {
    const double theta = detail::theta_of(x, ct_);
    const double step = std::numbers::pi / static_cast<double>(panels_);
    double offset = (theta + 0.5 * std::numbers::pi) / step;
    if (offset < 0.0) offset = 0.0;
    std::size_t index = static_cast<std::size_t>(offset);
    if (index >= panels_) index = panels_ - 1;
    const double lo = -0.5 * std::numbers::pi + step * static_cast<double>(index);
    if (theta <= lo) return prefix_[index];
    double kron = 0.0;
    double gauss = 0.0;
    detail::kronrod_panel([this](double u) { return integrand(u); }, lo,
                          theta, &kron, &gauss);
    return prefix_[index] + kron;
  }

  LawKind which_;
  double t_;
  FlightParams params_;
  double ct_;
  double atom_;
  std::size_t panels_ = 0;
  std::vector<double> prefix_;
};

// Kolmogorov-Smirnov sup distance between the empirical CDF of a scalar
// batch and the analytic CDF of the chosen law.  At every distinct sample
// value the analytic CDF is evaluated one-sided (left and right limits), so
// endpoint atoms are compared correctly; the two atom locations +-ct are
// also injected as candidate sup points because the analytic jump there can
// dominate even with no sample on the atom.
inline double ks_distance(const SampleBatch& batch, LawKind which, double t,
                          const FlightParams& p) {
  if (batch.planar) {
    throw std::invalid_argument(
        "ks_distance: planar batches must be projected to one coordinate first");
  }
  if (batch.n() == 0) {
    throw std::invalid_argument("ks_distance: empty batch");
  }
  if (batch.horizon != t || !(batch.params == p)) {
    throw std::invalid_argument(
        "ks_distance: batch was generated under different (t, params)");
  }
  LawCdf law(which, t, p);
  std::vector<double> sorted(batch.x1);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double distance = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto [left, right] = law.limits(sorted[i]);
    const double below = static_cast<double>(i) / n;
    const double through = static_cast<double>(j) / n;
    distance = std::max(distance, std::abs(left - below));
    distance = std::max(distance, std::abs(right - through));
    i = j;
  }
  const double ct = p.c * t;
  for (double x : {-ct, ct}) {
    const auto [left, right] = law.limits(x);
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), x);
    const double below = static_cast<double>(lo - sorted.begin()) / n;
    const double through = static_cast<double>(hi - sorted.begin()) / n;
    distance = std::max(distance, std::abs(left - below));
    distance = std::max(distance, std::abs(right - through));
  }
  return distance;
}

// One row of the density-difference table.
struct DiffRow {
  double t;
  double f;         // telegraph AC density at (x, t)
  double g;         // planar marginal density at (x, t)
  double abs_diff;  // |f - g|, computed from the stored values
};

// Evaluates both one-dimensional densities at a fixed point x across a
// list of times.  x must lie strictly inside the support at every listed
// time, so |x| < c * min(ts) is required.
inline std::vector<DiffRow> difference_table(double x, const FlightParams& p,
                                             const std::vector<double>& ts) {
  if (ts.empty()) {
    throw std::invalid_argument("difference_table: empty time list");
  }
  detail::require_finite(x, "position x");
  for (double t : ts) {
    detail::require_time(t);
    if (!detail::classify_support(x, t, p).interior) {
      throw std::domain_error(
          "difference_table: x must lie strictly inside the support at every t");
    }
  }
  std::vector<DiffRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    const double f = telegraph_density(x, t, p).ac;
    const double g = marginal_density(x, t, p);
    rows.push_back({t, f, g, std::abs(f - g)});
  }
  return rows;
}

// Least-squares power-law fit.
struct RateFit {
  double slope;
  double intercept;
  double r_squared;    // coefficient of determination, clamped to [0, 1]
  std::size_t points;  // number of points entering the fit
};

// Unweighted least-squares line through (ln t, ln v).  Requires at least 3
// strictly increasing positive ts and strictly positive values.
inline RateFit fit_loglog(const std::vector<double>& ts,
                          const std::vector<double>& values) {
  if (ts.size() != values.size()) {
    throw std::invalid_argument("fit_loglog: ts and values differ in length");
  }
  if (ts.size() < 3) {
    throw std::invalid_argument("fit_loglog: need at least 3 points");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0.0) || !std::isfinite(ts[i])) {
      throw std::domain_error("fit_loglog: times must be positive and finite");
    }
    if (i > 0 && !(ts[i] > ts[i - 1])) {
      throw std::invalid_argument("fit_loglog: times must be strictly increasing");
    }
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::domain_error("fit_loglog: values must be positive and finite");
    }
  }
  const std::size_t n = ts.size();
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += std::log(ts[i]);
    mean_y += std::log(values[i]);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(ts[i]) - mean_x;
    const double dy = std::log(values[i]) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0)) {
    throw std::domain_error("fit_loglog: degenerate abscissae");
  }
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_x;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::log(values[i]);
    const double predicted = intercept + slope * std::log(ts[i]);
    ss_res += (y - predicted) * (y - predicted);
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  const double r_squared =
      ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return {slope, intercept, r_squared, n};
}

// Fits |f - g| at fixed x against t on log-log axes; the slope estimates
// the convergence exponent of the density difference.  Points where the
// difference underflows to exactly zero carry no log information and are
// dropped; fewer than 3 surviving points is an error.
inline RateFit fit_convergence_rate(double x, const FlightParams& p,
                                    const std::vector<double>& ts) {
  if (ts.size() < 3) {
    throw std::invalid_argument("fit_convergence_rate: need at least 3 times");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1])) {
      throw std::invalid_argument(
          "fit_convergence_rate: times must be strictly increasing");
    }
  }
  const std::vector<DiffRow> rows = difference_table(x, p, ts);
  std::vector<double> kept_ts;
  std::vector<double> kept_diffs;
  for (const DiffRow& row : rows) {
    if (row.abs_diff > 0.0) {
      kept_ts.push_back(row.t);
      kept_diffs.push_back(row.abs_diff);
    }
  }
  if (kept_ts.size() < 3) {
    throw std::domain_error(
        "fit_convergence_rate: fewer than 3 points with nonzero difference");
  }
  return fit_loglog(kept_ts, kept_diffs);
}

// One row of a density-comparison grid.
struct GridRow {
  double x;
  double f;  // telegraph AC density
  double g;  // marginal density
};

// Evaluates both densities on a uniform grid over
// (-ct(1 - eps), ct(1 - eps)) with eps = 1e-3.  The grid formula is
// symmetric in exact arithmetic and in floating point: x_i and x_{n-1-i}
// are bitwise negations of each other, so grid symmetry tests can compare
// rows exactly.
inline std::vector<GridRow> figure_grid(double t, const FlightParams& p,
                                        std::size_t n_points) {
  detail::require_time(t);
  if (n_points < 2) {
    throw std::invalid_argument("figure_grid: need at least 2 points");
  }
  const double limit = p.c * t * (1.0 - 1e-3);
  std::vector<GridRow> rows;
  rows.reserve(n_points);
  const double denominator = static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double numerator =
        2.0 * static_cast<double>(i) - (static_cast<double>(n_points) - 1.0);
    const double x = limit * (numerator / denominator);
    rows.push_back(
        {x, telegraph_density(x, t, p).ac, marginal_density(x, t, p)});
  }
  return rows;
}

}  // namespace randflight
