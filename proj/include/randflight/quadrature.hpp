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
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace randflight {

struct QuadratureResult {
  double value;
  double error_estimate;
  std::size_t evaluations;
};

namespace detail {

// Gauss-7 / Kronrod-15 nodes and weights on [-1, 1].  The Gauss rule is
// embedded at the odd-index nodes plus the center.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename F>
void kronrod_panel(F&& f, double a, double b, double* kronrod15,
                   double* gauss7) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);
  double kron = kKronrodWeights[7] * f_center;
  double gauss = kGaussWeights[3] * f_center;
  for (int j = 0; j < 7; ++j) {
    const double offset = half * kKronrodNodes[j];
    const double pair = f(center - offset) + f(center + offset);
    kron += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  *kronrod15 = kron * half;
  *gauss7 = gauss * half;
}

}  // namespace detail

// Adaptive interval-halving quadrature: each panel is accepted once the
// embedded-rule discrepancy |K15 - G7| meets its proportional share of the
// absolute tolerance.  The evaluation budget guards nontermination; panels
// that reach the depth cap are accepted with their discrepancy recorded in
// the error estimate.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b,
                                    double abs_tol = 1e-10,
                                    std::size_t max_evaluations = 1000000) {
  if (!(a <= b)) {
    throw std::invalid_argument("integrate_adaptive: requires a <= b");
  }
  if (a == b) return {0.0, 0.0, 0};

  struct Segment {
    double a;
    double b;
    double tol;
    int depth;
  };
  std::vector<Segment> pending{{a, b, abs_tol, 0}};
  QuadratureResult result{0.0, 0.0, 0};
  while (!pending.empty()) {
    const Segment segment = pending.back();
    pending.pop_back();
    result.evaluations += 15;
    if (result.evaluations > max_evaluations) {
      throw std::runtime_error(
          "integrate_adaptive: evaluation budget exhausted");
    }
    double kron = 0.0;
    double gauss = 0.0;
    detail::kronrod_panel(f, segment.a, segment.b, &kron, &gauss);
    const double discrepancy = std::abs(kron - gauss);
    if (discrepancy <= segment.tol || segment.depth >= 60) {
      result.value += kron;
      result.error_estimate += discrepancy;
      continue;
    }
    const double middle = 0.5 * (segment.a + segment.b);
    const double child_tol = 0.5 * segment.tol;
    pending.push_back({segment.a, middle, child_tol, segment.depth + 1});
    pending.push_back({middle, segment.b, child_tol, segment.depth + 1});
  }
  return result;
}

}  // namespace randflight
