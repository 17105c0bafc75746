// Copyright 2026 The camfault Authors.
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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace camfault {

/// Identifier of the generator algorithm; recorded in every manifest so
/// datasets stay regenerable across releases. Bump on any change to the
/// draw semantics below.
inline constexpr const char* kRngAlgorithm = "xoshiro256**/splitmix64-substreams/v1";

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 output function (Steele, Lea, Flood). Bijective on u64.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Derives the seed of an independent sub-stream. Because stream indices
/// enter through an odd-multiplier offset and SplitMix64's finalizer is a
/// bijection, distinct streams of one master seed can never collide.
inline constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  return detail::splitmix64(master + (stream + 1) * detail::kGolden);
}

/// Deterministic pseudo-random generator with fixed cross-platform draw
/// semantics (unlike std::uniform_*_distribution, which the standard leaves
/// implementation-defined). State advances only through next_u64().
///
///   - integers: xoshiro256** raw 64-bit output, bounded draws by masked
///     rejection (unbiased);
///   - unit interval: top 53 bits scaled by 2^-53, so [0, 1).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) {
    // Standard xoshiro seeding: fill state from a SplitMix64 chain.
    std::uint64_t x = seed;
    for (auto& s : state_) {
      x += detail::kGolden;
      s = detail::splitmix64(x - detail::kGolden);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("uniform: lo > hi");
    return lo + (hi - lo) * next_double();
  }

  /// Uniform integer in [0, n). Masked rejection keeps the draw unbiased
  /// and platform-independent.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded: n must be positive");
    if (n == 1) return 0;
    const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    std::uint64_t x;
    do {
      x = next_u64() & mask;
    } while (x >= n);
    return x;
  }

  /// Uniform integer in [lo, hi], both ends inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    return lo + static_cast<std::int64_t>(
                    bounded(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_[4];
};

}  // namespace camfault
