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

#ifndef ADASPARSE_TYPES_HPP_
#define ADASPARSE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace adasparse {

// Coordinate index into a signal. Signals at desk scale stay well below 2^32.
using Index = std::uint32_t;

// The hidden real vector. Entries are finite and there is at least one.
class Signal {
 public:
  explicit Signal(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

// One row of the measurement matrix in sparse form. Indices are unique;
// the oracle enforces this when the query is measured.
struct LinearQuery {
  std::vector<Index> indices;
  std::vector<double> coefficients;

  void add(Index index, double coefficient) {
    indices.push_back(index);
    coefficients.push_back(coefficient);
  }
  void reserve(std::size_t n) {
    indices.reserve(n);
    coefficients.reserve(n);
  }
  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

// All queries submitted in one adaptive round.
using QueryBatch = std::vector<LinearQuery>;

struct Metering {
  std::uint64_t measurements = 0;
  std::uint64_t rounds = 0;
  std::uint64_t direct_observations = 0;

  friend bool operator==(const Metering&, const Metering&) = default;
};

// Why a recovery primitive produced no index. Callers treat every value other
// than kNone as a failed attempt.
enum class Failure {
  kNone,
  kNoSignal,     // first measurement numerically zero
  kOutOfRange,   // decoded position outside the admissible range
  kEmpty,        // nothing left to search (empty sample or empty bucket)
  kNotIsolated,  // iteration budget exhausted with several survivors
};

const char* to_string(Failure failure);

// Sparse estimate of a signal together with the cost of producing it.
// values[i] is the estimate at support[i]; support is sorted ascending.
struct RecoveryResult {
  std::vector<Index> support;
  std::vector<double> values;
  Metering metering;

  std::vector<double> dense(std::size_t n) const;
};

}  // namespace adasparse

#endif  // ADASPARSE_TYPES_HPP_
