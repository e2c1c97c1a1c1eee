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
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace randflight {

// A nonnegative quantity value * e^{scale_exponent}, kept factored so that the
// unscaled product is never formed (it overflows for exponents beyond ~709).
struct ScaledValue {
  double value;
  double scale_exponent;

  // Safe only when scale_exponent <= 0 or the product is known to fit.
  double resolve() const { return value * std::exp(scale_exponent); }
};

namespace detail {

// Arguments at or below the crossover are summed by power series; above it the
// large-argument asymptotic expansion is tried first.
inline constexpr double kSeriesAsymptoticCrossover = 25.0;

inline void require_bessel_domain(int nu, double z) {
  if (nu < 0) {
    throw std::domain_error("bessel_i: order nu must be >= 0");
  }
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw std::domain_error("bessel_i: argument z must be finite and >= 0");
  }
}

// e^{-z} * sum_k (z/2)^{nu+2k} / (k! (nu+k)!), stopping once the next term
// falls below 1e-16 of the running sum.  Valid for any z >= 0; intended for
// z <= the crossover where the scaled prefactor cannot underflow to zero
// while the true value is representable.
inline double bessel_series_scaled(int nu, double z) {
  if (z == 0.0) return nu == 0 ? 1.0 : 0.0;
  const double half = 0.5 * z;
  const double half_sq = half * half;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    term *= half_sq / (static_cast<double>(k) * (static_cast<double>(nu) + k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  double log_prefactor = -z;
  if (nu > 0) {
    log_prefactor += nu * std::log(half) - std::lgamma(nu + 1.0);
  }
  // exp underflows to 0 for log_prefactor < -745; the scaled value truly is
  // below the smallest double there.
  return std::exp(log_prefactor) * sum;
}

// Large-argument expansion e^{-z} I_nu(z) ~ (1/sqrt(2 pi z)) sum_k t_k with
// t_0 = 1 and t_k = -t_{k-1} (4 nu^2 - (2k-1)^2) / (8 k z).  Returns a value
// only when the smallest term certifies a truncation bound <= 1e-13 relative;
// otherwise the expansion cannot reach the target accuracy at this (nu, z).
inline std::optional<double> bessel_asymptotic_scaled(int nu, double z) {
  const double mu = 4.0 * static_cast<double>(nu) * static_cast<double>(nu);
  double term = 1.0;
  double sum = 1.0;
  bool certified = false;
  for (int k = 1; k <= 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (-(mu - odd * odd) / (8.0 * k * z));
    if (std::abs(next) >= std::abs(term)) {
      // Divergence onset; the first omitted term bounds the truncation error.
      certified = std::abs(next) <= 1e-13 * std::abs(sum);
      break;
    }
    term = next;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      certified = true;
      break;
    }
  }
  if (!certified) return std::nullopt;
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

// Normalized backward recurrence: run I_{k-1} = I_{k+1} + (2k/z) I_k downward
// from a trial order, then normalize with e^z = I_0 + 2 sum_{k>=1} I_k, which
// yields e^{-z} I_nu directly.  The start order is raised until two runs
// agree to 1e-14 relative.
inline double bessel_backward_scaled(int nu, double z) {
  int start = nu + static_cast<int>(2.0 * std::sqrt(z)) + 40;
  double previous = -1.0;
  for (int attempt = 0; attempt < 14; ++attempt) {
    long double above = 0.0L;
    long double current = 1.0L;
    long double tail = 0.0L;  // sum of v_k for k >= 1, accumulated on the way down
    long double target = (start == nu) ? current : 0.0L;
    for (int k = start; k >= 1; --k) {
      const long double below =
          above + (2.0L * static_cast<long double>(k) / static_cast<long double>(z)) * current;
      tail += current;
      if (k - 1 == nu) target = below;
      above = current;
      current = below;
      if (current > 1e300L) {
        current *= 1e-300L;
        above *= 1e-300L;
        tail *= 1e-300L;
        target *= 1e-300L;
      }
    }
    const long double norm = current + 2.0L * tail;
    const double result = static_cast<double>(target / norm);
    if (previous >= 0.0 && std::abs(result - previous) <= 1e-14 * std::abs(result)) {
      return result;
    }
    previous = result;
    start += start / 2 + 16;
  }
  throw std::runtime_error("bessel_i_scaled: backward recurrence did not stabilize");
}

}  // namespace detail

// e^{-z} I_nu(z) for integer nu >= 0 and z >= 0.  Relative accuracy ~1e-13.
inline double bessel_i_scaled(int nu, double z) {
  detail::require_bessel_domain(nu, z);
  if (z == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (z <= detail::kSeriesAsymptoticCrossover) {
    return detail::bessel_series_scaled(nu, z);
  }
  if (const auto asymptotic = detail::bessel_asymptotic_scaled(nu, z)) {
    return *asymptotic;
  }
  return detail::bessel_backward_scaled(nu, z);
}

// ln I_nu(z); returns -inf for nu >= 1 at z = 0.
inline double log_bessel_i(int nu, double z) {
  detail::require_bessel_domain(nu, z);
  if (z == 0.0) {
    return nu == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double scaled = bessel_i_scaled(nu, z);
  if (scaled > 0.0) {
    return std::log(scaled) + z;
  }
  // The scaled value underflowed (huge order).  In that regime the series sum
  // is moderate, so the logarithm splits into prefactor and sum exactly.
  const double half = 0.5 * z;
  const double half_sq = half * half;
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= 100000; ++k) {
    term *= half_sq / (static_cast<double>(k) * (static_cast<double>(nu) + k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return nu * std::log(half) - std::lgamma(nu + 1.0) + std::log(sum);
}

// e^{-z} L_0(z) where L_0 is the modified Struve function of order zero,
// L_0(z) = sum_k (z/2)^{2k+1} / Gamma(k + 3/2)^2.
inline double struve_l0_scaled(double z) {
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw std::domain_error("struve_l0: argument z must be finite and >= 0");
  }
  if (z == 0.0) return 0.0;
  if (z <= detail::kSeriesAsymptoticCrossover) {
    // Gamma(3/2)^2 = pi/4, so the first term is (z/2) * 4/pi.
    const double half_sq = 0.25 * z * z;
    double term = 2.0 * z / std::numbers::pi;
    double sum = term;
    for (int k = 0; k <= 1000; ++k) {
      const double shifted = k + 1.5;
      term *= half_sq / (shifted * shifted);
      sum += term;
      if (term < 1e-16 * sum) break;
    }
    return std::exp(-z) * sum;
  }
  // Above the crossover, I_0(z) - L_0(z) ~ (2/pi) sum_k ((2k-1)!!)^2 / z^{2k+1}
  // with the sum truncated at its smallest term; the scaled correction term
  // e^{-z} (2/pi) C(z) is exact to well below 1e-15 relative for z > 25.
  double term = 1.0 / z;
  double correction = term;
  for (int k = 0; k <= 200; ++k) {
    const double odd = 2.0 * k + 1.0;
    const double next = term * (odd * odd) / (z * z);
    if (next >= term) break;
    term = next;
    correction += term;
    if (term < 1e-17 * correction) break;
  }
  return bessel_i_scaled(0, z) -
         (2.0 / std::numbers::pi) * std::exp(-z) * correction;
}

// Alternative representation of e^{-z} L_0(z) as the alternating Bessel sum
// (4/pi) sum_k (-1)^k e^{-z} I_{2k+1}(z) / (2k+1); truncation below
// 1e-16 x |partial sum| is bounded by the first omitted term.
inline double struve_l0_scaled_bessel_sum(double z) {
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw std::domain_error("struve_l0: argument z must be finite and >= 0");
  }
  if (z == 0.0) return 0.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k <= 5000; ++k) {
    const int order = 2 * k + 1;
    const double term = sign * bessel_i_scaled(order, z) / order;
    if (k > 0 && std::abs(term) < 1e-16 * std::abs(sum)) break;
    sum += term;
    sign = -sign;
  }
  return (4.0 / std::numbers::pi) * sum;
}

}  // namespace randflight
