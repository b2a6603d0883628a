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

#include "adasparse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adasparse {

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("signal must be nonempty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("signal entries must be finite");
  }
}

const char* to_string(Failure failure) {
  switch (failure) {
    case Failure::kNone: return "none";
    case Failure::kNoSignal: return "no-signal";
    case Failure::kOutOfRange: return "out-of-range";
    case Failure::kEmpty: return "empty";
    case Failure::kNotIsolated: return "not-isolated";
  }
  return "unknown";
}

std::vector<double> RecoveryResult::dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) out.at(support[i]) = values[i];
  return out;
}

MeasurementOracle::MeasurementOracle(Signal signal)
    : signal_(std::move(signal)), stamp_(signal_.size(), 0) {}

void MeasurementOracle::validate(const QueryBatch& batch) {
  if (batch.empty()) throw std::invalid_argument("query batch must be nonempty");
  const std::size_t n = signal_.size();
  for (const LinearQuery& q : batch) {
    if (q.indices.size() != q.coefficients.size()) {
      throw std::invalid_argument("query has mismatched index/coefficient counts");
    }
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    for (std::size_t t = 0; t < q.indices.size(); ++t) {
      const Index i = q.indices[t];
      if (i >= n) {
        throw std::out_of_range("query index " + std::to_string(i) +
                                " outside signal of dimension " + std::to_string(n));
      }
      if (stamp_[i] == epoch_) {
        throw std::invalid_argument("query repeats index " + std::to_string(i));
      }
      stamp_[i] = epoch_;
      if (!std::isfinite(q.coefficients[t])) {
        throw std::invalid_argument("query coefficient must be finite");
      }
    }
  }
}

std::vector<double> MeasurementOracle::measure(const QueryBatch& batch) {
  validate(batch);
  std::vector<double> out;
  out.reserve(batch.size());
  for (const LinearQuery& q : batch) {
    double acc = 0.0;
    for (std::size_t t = 0; t < q.indices.size(); ++t) {
      acc += q.coefficients[t] * signal_[q.indices[t]];
    }
    out.push_back(acc);
  }
  counters_.measurements += batch.size();
  counters_.rounds += 1;
  if (recording_) recorded_.push_back(batch);
  return out;
}

std::map<Index, double> MeasurementOracle::observe_direct(std::span<const Index> indices) {
  std::map<Index, double> out;
  for (Index i : indices) {
    if (i >= signal_.size()) {
      throw std::out_of_range("direct observation index " + std::to_string(i) +
                              " outside signal of dimension " +
                              std::to_string(signal_.size()));
    }
  }
  for (Index i : indices) out.emplace(i, signal_[i]);
  if (out.empty()) return out;
  counters_.direct_observations += out.size();
  counters_.measurements += out.size();
  counters_.rounds += 1;
  return out;
}

}  // namespace adasparse
