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

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "randflight/params.hpp"

namespace randflight {

// Terminal positions of n independent sample paths.  Scalar batches store
// positions in x1; planar batches store coordinate pairs in (x1, x2).
// boundary_flags marks zero-switch paths, which land on the support boundary.
// Identical (params, horizon, n, seed) reproduce identical batches
// bit-for-bit regardless of how the generation loop was chunked.
struct SampleBatch {
  FlightParams params;
  double horizon;
  std::uint64_t seed;
  bool planar;
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<unsigned char> boundary_flags;

  std::size_t n() const { return x1.size(); }
};

namespace detail {

// Philox 4x32 counter-based generator, 10 rounds.
inline constexpr std::uint32_t kPhiloxMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxWeyl1 = 0xBB67AE85u;

// One 128-bit block keyed by the 64-bit seed; the counter is the pair
// (sample index, draw block), so every sample owns a disjoint stream.
inline std::array<std::uint32_t, 4> philox_block(std::uint64_t key,
                                                 std::uint64_t sample_index,
                                                 std::uint64_t draw_block) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  std::uint32_t c0 = static_cast<std::uint32_t>(draw_block);
  std::uint32_t c1 = static_cast<std::uint32_t>(draw_block >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(sample_index);
  std::uint32_t c3 = static_cast<std::uint32_t>(sample_index >> 32);
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t product0 =
        static_cast<std::uint64_t>(kPhiloxMult0) * c0;
    const std::uint64_t product1 =
        static_cast<std::uint64_t>(kPhiloxMult1) * c2;
    const std::uint32_t next0 =
        static_cast<std::uint32_t>(product1 >> 32) ^ c1 ^ k0;
    const std::uint32_t next1 = static_cast<std::uint32_t>(product1);
    const std::uint32_t next2 =
        static_cast<std::uint32_t>(product0 >> 32) ^ c3 ^ k1;
    const std::uint32_t next3 = static_cast<std::uint32_t>(product0);
    c0 = next0;
    c1 = next1;
    c2 = next2;
    c3 = next3;
    k0 += kPhiloxWeyl0;
    k1 += kPhiloxWeyl1;
  }
  return {c0, c1, c2, c3};
}

// Per-sample draw stream over the Philox blocks of one sample index.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t sample_index)
      : seed_(seed), sample_(sample_index) {}

  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_unit() {
    if (cursor_ == 2) refill();
    const std::uint64_t bits = words_[cursor_++];
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  // Inverse-CDF exponential; one uniform draw per event.
  double next_exponential(double rate) {
    return -std::log(next_unit()) / rate;
  }

 private:
  void refill() {
    const auto block = philox_block(seed_, sample_, draw_block_++);
    words_[0] = (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
    words_[1] = (static_cast<std::uint64_t>(block[3]) << 32) | block[2];
    cursor_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t sample_;
  std::uint64_t draw_block_ = 0;
  std::array<std::uint64_t, 2> words_{};
  int cursor_ = 2;
};

// Fixed-size generation chunks; the decomposition never affects values
// because streams are keyed by absolute sample index.
inline constexpr std::size_t kChunkSamples = std::size_t{1} << 16;

inline void run_chunked(
    std::size_t n, const std::function<void(std::size_t, std::size_t)>& fill) {
  const std::size_t chunks = (n + kChunkSamples - 1) / kChunkSamples;
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, chunks));
  if (chunks <= 1 || workers <= 1) {
    fill(0, n);
    return;
  }
  std::atomic<std::size_t> next_chunk{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned worker = 0; worker < workers; ++worker) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t chunk = next_chunk.fetch_add(1);
        if (chunk >= chunks) return;
        const std::size_t begin = chunk * kChunkSamples;
        fill(begin, std::min(n, begin + kChunkSamples));
      }
    });
  }
  for (auto& thread : pool) thread.join();
}

inline void require_sample_count(std::size_t n) {
  if (n < 1) throw std::domain_error("simulate: n must be >= 1");
}

}  // namespace detail

// Telegraph sample paths: start at 0 with velocity +-c equiprobably, flip
// the sign at exponential(lambda) epochs, stop at the horizon.  Zero-switch
// paths land bitwise-exactly on +-ct; the final clamp only absorbs last-bit
// rounding of interior paths.
inline SampleBatch simulate_telegraph(const FlightParams& p, double t,
                                      std::size_t n, std::uint64_t seed) {
  detail::require_time(t);
  detail::require_sample_count(n);
  SampleBatch batch{p,  t,  seed, false, std::vector<double>(n),
                    {}, std::vector<unsigned char>(n)};
  const double ct = p.c * t;
  detail::run_chunked(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      detail::SampleStream stream(seed, i);
      double direction = stream.next_unit() < 0.5 ? 1.0 : -1.0;
      double remaining = t;
      double position = 0.0;
      std::size_t switches = 0;
      for (;;) {
        const double epoch = stream.next_exponential(p.lambda);
        if (epoch >= remaining) {
          position += direction * (p.c * remaining);
          break;
        }
        position += direction * (p.c * epoch);
        remaining -= epoch;
        direction = -direction;
        ++switches;
      }
      batch.x1[i] = std::clamp(position, -ct, ct);
      batch.boundary_flags[i] = switches == 0 ? 1 : 0;
    }
  });
  return batch;
}

// Planar sample paths: direction angle uniform on [0, 2 pi) at time 0,
// redrawn at exponential(lambda) epochs; the position is the sum of the
// straight segments.  Positions are nudged radially inward by at most one
// ulp so that ||x|| <= ct holds exactly.
inline SampleBatch simulate_planar(const FlightParams& p, double t,
                                   std::size_t n, std::uint64_t seed) {
  detail::require_time(t);
  detail::require_sample_count(n);
  SampleBatch batch{p,
                    t,
                    seed,
                    true,
                    std::vector<double>(n),
                    std::vector<double>(n),
                    std::vector<unsigned char>(n)};
  const double ct = p.c * t;
  const double two_pi = 2.0 * std::numbers::pi;
  detail::run_chunked(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      detail::SampleStream stream(seed, i);
      double angle = two_pi * stream.next_unit();
      double remaining = t;
      double x1 = 0.0;
      double x2 = 0.0;
      std::size_t switches = 0;
      for (;;) {
        const double epoch = stream.next_exponential(p.lambda);
        const double segment = epoch >= remaining ? remaining : epoch;
        x1 += std::cos(angle) * (p.c * segment);
        x2 += std::sin(angle) * (p.c * segment);
        if (epoch >= remaining) break;
        remaining -= epoch;
        angle = two_pi * stream.next_unit();
        ++switches;
      }
      const double radius = std::hypot(x1, x2);
      if (radius > ct) {
        const double shrink = ct / radius;
        x1 *= shrink;
        x2 *= shrink;
      }
      batch.x1[i] = x1;
      batch.x2[i] = x2;
      batch.boundary_flags[i] = switches == 0 ? 1 : 0;
    }
  });
  return batch;
}

// Chosen coordinate of every planar sample.  The projection of the circle
// mass is absolutely continuous, so boundary flags are cleared.
inline SampleBatch project_marginal(const SampleBatch& batch, int axis) {
  if (!batch.planar) {
    throw std::invalid_argument(
        "project_marginal: batch must hold planar samples");
  }
  if (axis != 1 && axis != 2) {
    throw std::invalid_argument("project_marginal: axis must be 1 or 2");
  }
  return SampleBatch{batch.params,
                     batch.horizon,
                     batch.seed,
                     false,
                     axis == 1 ? batch.x1 : batch.x2,
                     {},
                     std::vector<unsigned char>(batch.n(), 0)};
}

// Raw-sample export: header `x` (scalar) or `x1,x2` (planar), one sample per
// record, 17 significant digits.
inline void write_samples_csv(const SampleBatch& batch, std::ostream& os) {
  char line[80];
  if (batch.planar) {
    os << "x1,x2\n";
    for (std::size_t i = 0; i < batch.n(); ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", batch.x1[i],
                    batch.x2[i]);
      os << line;
    }
  } else {
    os << "x\n";
    for (std::size_t i = 0; i < batch.n(); ++i) {
      std::snprintf(line, sizeof line, "%.17g\n", batch.x1[i]);
      os << line;
    }
  }
}

}  // namespace randflight
