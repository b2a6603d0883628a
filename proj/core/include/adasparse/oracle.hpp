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

#ifndef ADASPARSE_ORACLE_HPP_
#define ADASPARSE_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "adasparse/types.hpp"

namespace adasparse {

// Anything that answers a batch of linear queries against a hidden vector.
// Each call to measure() is one adaptive round.
class Measurer {
 public:
  virtual ~Measurer() = default;

  virtual std::uint64_t dimension() const = 0;
  virtual std::vector<double> measure(const QueryBatch& batch) = 0;
};

// Holds the hidden signal and meters every access to it. There is no
// accessor for the signal: recovery code sees x only through measure() and
// observe_direct(). One oracle is one recovery episode; counters never reset.
class MeasurementOracle final : public Measurer {
 public:
  explicit MeasurementOracle(Signal signal);

  std::uint64_t dimension() const override { return signal_.size(); }

  // Exact inner products, in batch order. Rejects the whole batch (counters
  // unchanged) on an empty batch, an out-of-range or repeated index, or a
  // non-finite coefficient.
  std::vector<double> measure(const QueryBatch& batch) override;

  // Exact x_i for each distinct requested index. Counts as one round and
  // |indices| measurements; an empty request costs nothing.
  std::map<Index, double> observe_direct(std::span<const Index> indices);

  Metering metering() const { return counters_; }

  // Keeps a copy of every measured batch, for inspecting query structure.
  void set_recording(bool on) { recording_ = on; }
  const std::vector<QueryBatch>& recorded_batches() const { return recorded_; }

 private:
  void validate(const QueryBatch& batch);

  Signal signal_;
  Metering counters_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  bool recording_ = false;
  std::vector<QueryBatch> recorded_;
};

}  // namespace adasparse

#endif  // ADASPARSE_ORACLE_HPP_
