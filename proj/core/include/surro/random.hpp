// Copyright 2026 The Surro Authors
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

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace surro {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent seed for a sub-stage from a parent seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream + 0x9e3779b97f4a7c15ULL));
}

/// Sequential SplitMix64 generator. Satisfies UniformRandomBitGenerator and
/// produces the same stream on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by Rng (std::shuffle's algorithm is
/// implementation-defined, which breaks cross-platform reproducibility).
template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

/// Stateless counter-based uniform stream: the value at (key, counter) does
/// not depend on how the stream is traversed, so draws can be generated in
/// any batch layout or thread split and still be identical.
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(mix64(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
  }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform_open(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Inverse of the standard normal CDF for p in (0, 1).
double normal_quantile(double p);

}  // namespace surro
