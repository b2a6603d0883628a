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

#ifndef ADASPARSE_COUNTSKETCH_HPP_
#define ADASPARSE_COUNTSKETCH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adasparse/constants.hpp"
#include "adasparse/hashing.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/types.hpp"

namespace adasparse {

struct CountSketchParams {
  std::size_t width = 1;
  std::size_t depth = 1;
  // Number of coordinates reported (s_out).
  std::size_t output_size = 1;
};

// width = ceil(c_w k / eps), depth = ceil(c_d ln(dimension / delta)),
// output_size = 2k.
CountSketchParams countsketch_params(std::size_t k, double eps, double delta,
                                     std::uint64_t dimension, const Constants& constants);

// Nonadaptive CountSketch over an explicit coordinate set. Row r sends
// coordinate i to bucket h_r(i) with sign s_r(i); the full query set is
// fixed at construction.
class CountSketch {
 public:
  CountSketch(std::vector<Index> coordinates, CountSketchParams params, std::uint64_t ambient,
              std::uint64_t seed);

  std::size_t measurement_count() const { return params_.width * params_.depth; }
  const CountSketchParams& params() const { return params_; }
  std::span<const Index> coordinates() const { return coordinates_; }

  // Appends width * depth queries, row-major. Empty buckets yield empty queries.
  void append_queries(QueryBatch& batch) const;

  // Median-of-rows estimate for every coordinate, aligned with coordinates().
  std::vector<double> estimates(std::span<const double> values) const;

  // The output_size coordinates with the largest |estimate| (ties: lower
  // index), sorted by index. Zero estimates are dropped unless keep_zeros.
  RecoveryResult decode(std::span<const double> values, bool keep_zeros = false) const;

 private:
  std::vector<Index> coordinates_;
  CountSketchParams params_;
  std::vector<KWiseHash> buckets_;
  std::vector<SignHash> signs_;
};

// One nonadaptive round over every coordinate of `measurer`; reports the
// top 2k coordinates with their estimates.
RecoveryResult countsketch_recover(Measurer& measurer, std::size_t k, double eps, double delta,
                                   std::uint64_t seed, const Constants& constants);

}  // namespace adasparse

#endif  // ADASPARSE_COUNTSKETCH_HPP_
