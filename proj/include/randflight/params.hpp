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
#include <stdexcept>
#include <string>

namespace randflight {

// Motion parameters shared by the telegraph process and the planar flight:
// speed c > 0 and Poisson switching rate lambda > 0.
struct FlightParams {
  double c;
  double lambda;

  FlightParams(double speed, double rate) : c(speed), lambda(rate) {
    if (!(std::isfinite(speed) && speed > 0.0)) {
      throw std::domain_error("FlightParams: speed c must be finite and > 0");
    }
    if (!(std::isfinite(rate) && rate > 0.0)) {
      throw std::domain_error("FlightParams: rate lambda must be finite and > 0");
    }
  }
};

inline bool operator==(const FlightParams& a, const FlightParams& b) {
  return a.c == b.c && a.lambda == b.lambda;
}

// A point of the plane; no invariant beyond finiteness of the coordinates.
struct PlanarPoint {
  double x1;
  double x2;

  double norm() const { return std::hypot(x1, x2); }
};

namespace detail {

inline void require_time(double t) {
  if (!(std::isfinite(t) && t > 0.0)) {
    throw std::domain_error("time t must be finite and > 0");
  }
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

}  // namespace detail

}  // namespace randflight
