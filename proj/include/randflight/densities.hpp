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

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randflight/params.hpp"
#include "randflight/special_functions.hpp"

namespace randflight {

// A law split into its absolutely continuous density at the query point and
// the total mass e^{-lambda t} of the singular component (two endpoint atoms
// for the telegraph process, a uniform circle measure for the planar flight).
// in_support is true only strictly inside the open support.
struct DensitySplit {
  double ac;
  double singular_mass;
  bool in_support;
};

namespace detail {

// Relative half-width of the band around |x| = ct treated as boundary.
// Inside the band, sqrt(c^2 t^2 - x^2) has lost all precision.
inline constexpr double kBoundaryRelTol = 1e-12;

struct SupportGeometry {
  double ct;
  double s;  // sqrt(c^2 t^2 - x^2), meaningful only when interior
  double w;  // (lambda/c) * s, meaningful only when interior
  bool interior;
};

inline SupportGeometry classify_support(double x, double t,
                                        const FlightParams& p) {
  const double ct = p.c * t;
  const double ax = std::abs(x);
  if (ax >= ct * (1.0 - kBoundaryRelTol)) {
    return {ct, 0.0, 0.0, false};
  }
  const double s = std::sqrt((ct - ax) * (ct + ax));
  return {ct, s, (p.lambda / p.c) * s, true};
}

// Exponent of the uniform estimate e^{w - lambda t} <= 1; the clamp only
// absorbs last-bit rounding, since w <= lambda t holds exactly in reals.
inline double damped_exponent(double w, double lambda_t) {
  return std::min(w - lambda_t, 0.0);
}

}  // namespace detail

// Telegraph process density at position x, time t: AC part on |x| < ct plus
// endpoint atoms of mass e^{-lambda t}/2 at each of +-ct (reported as the
// total singular mass).  Points within the boundary band report ac = 0.
inline DensitySplit telegraph_density(double x, double t,
                                      const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const double singular_mass = std::exp(-p.lambda * t);
  const auto geometry = detail::classify_support(x, t, p);
  if (!geometry.interior) {
    return {0.0, singular_mass, false};
  }
  const double bracket =
      bessel_i_scaled(0, geometry.w) +
      (geometry.ct / geometry.s) * bessel_i_scaled(1, geometry.w);
  const ScaledValue product{
      bracket, detail::damped_exponent(geometry.w, p.lambda * t)};
  return {(p.lambda / (2.0 * p.c)) * product.resolve(), singular_mass, true};
}

// The same AC density organized as the damped-wave fundamental solution:
// (e^{-lambda t}/2c) [lambda I_0(w) + dI_0(w)/dt], with the time derivative
// expanded through I_0' = I_1 and dw/dt = lambda c t / s.  Algebraically
// identical to telegraph_density(...).ac; computed with a different term
// grouping as a cross-check.
inline double telegraph_density_derivative_form(double x, double t,
                                                const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const auto geometry = detail::classify_support(x, t, p);
  if (!geometry.interior) {
    throw std::domain_error(
        "telegraph_density_derivative_form: requires |x| < ct strictly "
        "inside the support");
  }
  const double damping =
      std::exp(detail::damped_exponent(geometry.w, p.lambda * t));
  const double rate_term =
      p.lambda * damping * bessel_i_scaled(0, geometry.w);
  const double derivative_term = (p.lambda * geometry.ct / geometry.s) *
                                 damping * bessel_i_scaled(1, geometry.w);
  return (rate_term + derivative_term) / (2.0 * p.c);
}

// Planar flight density at a point of the plane: AC part on the open disk
// ||x|| < ct plus the singular mass e^{-lambda t} spread uniformly over the
// circle of radius ct.
inline DensitySplit planar_density(const PlanarPoint& pt, double t,
                                   const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(pt.x1, "coordinate x1");
  detail::require_finite(pt.x2, "coordinate x2");
  const double singular_mass = std::exp(-p.lambda * t);
  const auto geometry = detail::classify_support(pt.norm(), t, p);
  if (!geometry.interior) {
    return {0.0, singular_mass, false};
  }
  const ScaledValue product{
      1.0 / geometry.s, detail::damped_exponent(geometry.w, p.lambda * t)};
  return {(p.lambda / (2.0 * std::numbers::pi * p.c)) * product.resolve(),
          singular_mass, true};
}

// Marginal density of either coordinate of the planar flight.  Fully
// absolutely continuous; diverges like (c^2 t^2 - x^2)^{-1/2} toward the
// boundary, so boundary-band points are a domain error (integrate with a
// substitution instead of evaluating there).
inline double marginal_density(double x, double t, const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const auto geometry = detail::classify_support(x, t, p);
  if (!geometry.interior) {
    throw std::domain_error(
        "marginal_density: unbounded at |x| = ct; evaluate strictly inside "
        "the support");
  }
  const double spread_atom = std::exp(-p.lambda * t) /
                             (std::numbers::pi * geometry.s);
  const ScaledValue bessel_struve{
      bessel_i_scaled(0, geometry.w) + struve_l0_scaled(geometry.w),
      detail::damped_exponent(geometry.w, p.lambda * t)};
  return spread_atom + (p.lambda / (2.0 * p.c)) * bessel_struve.resolve();
}

// Tail of the telegraph AC density beyond the shared I_0 term:
// R = (lambda t / 2) e^{-lambda t} I_1(w) / sqrt(c^2 t^2 - x^2).
inline double tail_R(double x, double t, const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const auto geometry = detail::classify_support(x, t, p);
  if (!geometry.interior) {
    throw std::domain_error("tail_R: requires |x| < ct");
  }
  const ScaledValue product{
      bessel_i_scaled(1, geometry.w),
      detail::damped_exponent(geometry.w, p.lambda * t)};
  return (p.lambda * t / (2.0 * geometry.s)) * product.resolve();
}

// Tail of the marginal density beyond the shared I_0 term:
// Q = e^{-lambda t} / (pi sqrt(c^2 t^2 - x^2)) + (lambda/2c) e^{-lambda t} L_0(w).
inline double tail_Q(double x, double t, const FlightParams& p) {
  detail::require_time(t);
  detail::require_finite(x, "position x");
  const auto geometry = detail::classify_support(x, t, p);
  if (!geometry.interior) {
    throw std::domain_error("tail_Q: requires |x| < ct");
  }
  const double spread_atom = std::exp(-p.lambda * t) /
                             (std::numbers::pi * geometry.s);
  const ScaledValue product{
      struve_l0_scaled(geometry.w),
      detail::damped_exponent(geometry.w, p.lambda * t)};
  return spread_atom + (p.lambda / (2.0 * p.c)) * product.resolve();
}

// Common large-t limit of both tails: (1/2c) sqrt(lambda / (2 pi t)).
inline double leading_term(double t, const FlightParams& p) {
  detail::require_time(t);
  return (0.5 / p.c) * std::sqrt(p.lambda / (2.0 * std::numbers::pi * t));
}

}  // namespace randflight
