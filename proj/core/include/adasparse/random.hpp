// Copyright 2026 The adasparse Authors
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

#ifndef ADASPARSE_RANDOM_HPP_
#define ADASPARSE_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace adasparse {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a of a label, used to name independent random streams.
constexpr std::uint64_t tag(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based seed splitting: every random object in an experiment gets a
// seed derived from the single experiment seed and a path of labels/counters.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t key) {
  return mix64(parent ^ mix64(key + 0x9e3779b97f4a7c15ULL));
}

template <typename... Keys>
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t key,
                                    Keys... rest) {
  return derive_seed(derive_seed(parent, key), static_cast<std::uint64_t>(rest)...);
}

// SplitMix64 generator. Satisfies UniformRandomBitGenerator; all derived
// draws are implemented here so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform on [0, bound), unbiased (rejection on the top partial block).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }

  double gaussian() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double sign() { return ((*this)() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace adasparse

#endif  // ADASPARSE_RANDOM_HPP_
