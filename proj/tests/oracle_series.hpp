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

// Extended-precision brute-force series references used only by tests.
// Deliberately independent of the library: fixed term counts, no adaptive
// stopping, no shared code.  Valid for z up to ~30 where the long double
// partial sums stay well inside range.

namespace oracle {

// e^{-z} I_nu(z) as a plain partial sum of (z/2)^{nu+2k} / (k! (nu+k)!).
inline long double bessel_i_scaled_reference(int nu, long double z, int terms) {
  const long double half = 0.5L * z;
  long double term = 1.0L;
  for (int j = 1; j <= nu; ++j) term *= half / j;
  long double sum = 0.0L;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= (half * half) / ((k + 1.0L) * (nu + k + 1.0L));
  }
  return sum * std::exp(-z);
}

// e^{-z} L_0(z) as a plain partial sum of (z/2)^{2k+1} / Gamma(k+3/2)^2.
inline long double struve_l0_scaled_reference(long double z, int terms) {
  long double term = 2.0L * z / std::numbers::pi_v<long double>;
  long double sum = 0.0L;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    const long double shifted = k + 1.5L;
    term *= (0.25L * z * z) / (shifted * shifted);
  }
  return sum * std::exp(-z);
}

}  // namespace oracle
