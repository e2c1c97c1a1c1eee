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

// CSV cell formatting.  All formatting is locale-independent: cells use
// the C-locale decimal point and never emit grouping separators, and
// records are newline-terminated per RFC 4180.

#pragma once

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace randflight {
namespace csv {

// Fixed-point cell with the given number of decimals.  Rounding follows
// IEEE printf semantics (round half to even), so displayed values are the
// correctly rounded decimals of the underlying double.
inline std::string cell_fixed(double value, int precision) {
  if (precision < 0 || precision > 17) {
    throw std::invalid_argument("cell_fixed: precision must lie in [0, 17]");
  }
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, "%.*f", precision, value);
  return std::string(buffer);
}

// Shortest decimal representation that round-trips to the same double.
// Used for coordinate and time columns, where the value is an input rather
// than a rounded result.
inline std::string cell_number(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (result.ec != std::errc()) {
    throw std::runtime_error("cell_number: formatting failed");
  }
  return std::string(buffer, result.ptr);
}

}  // namespace csv
}  // namespace randflight
