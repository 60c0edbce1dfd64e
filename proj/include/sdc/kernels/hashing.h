// Copyright 2026 The sdcscreen Authors.
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
#include <span>

namespace sdc {

inline std::uint64_t double_bits(double value) {
  return std::bit_cast<std::uint64_t>(value);
}

inline double double_from_bits(std::uint64_t bits) {
  return std::bit_cast<double>(bits);
}

// splitmix64 finalizer. Used both as a mixing function and, together with
// SplitMix64 below, as the operand-stream generator.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// state_{n+1} = state_n + 0x9E3779B97F4A7C15, output = mix64(state_{n+1}).
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Modulo bias is below 2^-40 for the
  // bounds used here and is accepted.
  constexpr std::uint64_t next_below(std::uint64_t bound) {
    return next() % bound;
  }

  constexpr std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;

inline constexpr std::uint64_t fnv1a64_step(std::uint64_t hash,
                                            std::uint8_t byte) {
  return (hash ^ byte) * kFnvPrime;
}

inline std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                             std::uint64_t hash = kFnvOffsetBasis) {
  for (std::uint8_t b : bytes) hash = fnv1a64_step(hash, b);
  return hash;
}

// Feeds the eight little-endian bytes of `word`.
inline constexpr std::uint64_t fnv1a64_word(std::uint64_t hash,
                                            std::uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    hash = fnv1a64_step(hash, static_cast<std::uint8_t>(word >> (8 * i)));
  }
  return hash;
}

}  // namespace sdc
