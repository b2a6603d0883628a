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

#include "adasparse/hashing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "adasparse/random.hpp"

namespace adasparse {
namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128_t>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

std::uint64_t KWiseHash::choose_prime(std::uint64_t domain, std::uint64_t range) {
  const std::uint64_t floor = range > domain ? 2 * range : std::max(domain, range);
  return next_prime(floor);
}

KWiseHash::KWiseHash(unsigned independence, std::uint64_t domain, std::uint64_t range,
                     std::uint64_t seed)
    : prime_(choose_prime(domain, range)), domain_(domain), range_(range) {
  if (independence < 1) throw std::invalid_argument("KWiseHash: independence must be >= 1");
  if (domain < 1 || range < 1) {
    throw std::invalid_argument("KWiseHash: domain and range must be >= 1");
  }
  Rng rng(seed);
  coefficients_.resize(independence);
  for (auto& c : coefficients_) c = rng.below(prime_);
}

KWiseHash KWiseHash::from_coefficients(std::vector<std::uint64_t> coefficients,
                                       std::uint64_t prime, std::uint64_t domain,
                                       std::uint64_t range) {
  if (coefficients.empty()) throw std::invalid_argument("KWiseHash: no coefficients");
  if (!is_prime(prime) || prime < domain) {
    throw std::invalid_argument("KWiseHash: modulus must be a prime >= domain");
  }
  if (range < 1) throw std::invalid_argument("KWiseHash: range must be >= 1");
  KWiseHash h;
  for (auto& c : coefficients) c %= prime;
  h.coefficients_ = std::move(coefficients);
  h.prime_ = prime;
  h.domain_ = domain;
  h.range_ = range;
  return h;
}

std::uint64_t KWiseHash::field_value(std::uint64_t i) const {
  if (i >= domain_) {
    throw std::out_of_range("hash input " + std::to_string(i) + " outside domain " +
                            std::to_string(domain_));
  }
  return field_value_unchecked(i);
}

std::uint64_t KWiseHash::operator()(std::uint64_t i) const {
  return field_value(i) % range_;
}

double uniform_unit(unsigned independence, std::uint64_t domain, std::uint64_t seed,
                    std::uint64_t i) {
  return UniformHash(independence, domain, seed)(i);
}

}  // namespace adasparse
