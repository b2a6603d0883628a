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

#ifndef ADASPARSE_HASHING_HPP_
#define ADASPARSE_HASHING_HPP_

#include <cstdint>
#include <vector>

namespace adasparse {

// Wide product type for modular arithmetic; __extension__ keeps -Wpedantic quiet.
__extension__ typedef unsigned __int128 uint128_t;

// Deterministic primality test for all 64-bit inputs (Miller-Rabin with the
// first twelve prime bases).
bool is_prime(std::uint64_t n);

// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

// t-wise independent family: a uniformly seeded polynomial of degree t-1 over
// GF(p), reduced into [0, range). The prime is the smallest prime >= the
// domain size, raised to >= 2*range when range exceeds the domain so the
// final modulus never more than doubles a bucket's probability.
class KWiseHash {
 public:
  KWiseHash(unsigned independence, std::uint64_t domain, std::uint64_t range,
            std::uint64_t seed);

  // Explicit coefficients (constant term first); used to enumerate families.
  static KWiseHash from_coefficients(std::vector<std::uint64_t> coefficients,
                                     std::uint64_t prime, std::uint64_t domain,
                                     std::uint64_t range);

  static std::uint64_t choose_prime(std::uint64_t domain, std::uint64_t range);

  // Throws std::out_of_range when i >= domain.
  std::uint64_t operator()(std::uint64_t i) const;

  // No domain check; for hot loops whose indices are already validated.
  std::uint64_t eval_unchecked(std::uint64_t i) const {
    return field_value_unchecked(i) % range_;
  }

  // poly(i) mod p, before range reduction.
  std::uint64_t field_value(std::uint64_t i) const;

  unsigned independence() const { return static_cast<unsigned>(coefficients_.size()); }
  std::uint64_t domain() const { return domain_; }
  std::uint64_t range() const { return range_; }
  std::uint64_t prime() const { return prime_; }
  const std::vector<std::uint64_t>& coefficients() const { return coefficients_; }

 private:
  // acc * x + c stays below 2^64 for primes up to 2^32.
  static constexpr std::uint64_t kNarrowPrime = std::uint64_t{1} << 32;

  KWiseHash() = default;

  std::uint64_t field_value_unchecked(std::uint64_t i) const {
    // Horner, highest degree first.
    if (prime_ <= kNarrowPrime) {
      std::uint64_t acc = 0;
      const std::uint64_t x = i % prime_;
      for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        acc = (acc * x + *it) % prime_;
      }
      return acc;
    }
    uint128_t acc = 0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
      acc = (acc * i + *it) % prime_;
    }
    return static_cast<std::uint64_t>(acc);
  }

  std::vector<std::uint64_t> coefficients_;
  std::uint64_t prime_ = 2;
  std::uint64_t domain_ = 1;
  std::uint64_t range_ = 1;
};

// t-wise independent signs in {-1, +1}.
class SignHash {
 public:
  SignHash(unsigned independence, std::uint64_t domain, std::uint64_t seed)
      : base_(independence, domain, 2, seed) {}

  int operator()(std::uint64_t i) const { return base_(i) == 0 ? -1 : 1; }
  int eval_unchecked(std::uint64_t i) const {
    return base_.eval_unchecked(i) == 0 ? -1 : 1;
  }
  const KWiseHash& base() const { return base_; }

 private:
  KWiseHash base_;
};

// t-wise independent uniforms on (0, 1]: (h(i) + 1) / 2^31 with h into [0, 2^31).
class UniformHash {
 public:
  static constexpr std::uint64_t kResolution = std::uint64_t{1} << 31;

  UniformHash(unsigned independence, std::uint64_t domain, std::uint64_t seed)
      : base_(independence, domain, kResolution, seed) {}

  double operator()(std::uint64_t i) const { return scale(base_(i)); }
  double eval_unchecked(std::uint64_t i) const { return scale(base_.eval_unchecked(i)); }

 private:
  static double scale(std::uint64_t v) {
    return static_cast<double>(v + 1) / static_cast<double>(kResolution);
  }
  KWiseHash base_;
};

double uniform_unit(unsigned independence, std::uint64_t domain, std::uint64_t seed,
                    std::uint64_t i);

}  // namespace adasparse

#endif  // ADASPARSE_HASHING_HPP_
