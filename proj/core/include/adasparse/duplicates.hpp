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

#ifndef ADASPARSE_DUPLICATES_HPP_
#define ADASPARSE_DUPLICATES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "adasparse/constants.hpp"
#include "adasparse/types.hpp"

namespace adasparse {

// n items, each in [1, n-1], read sequentially any number of times. The
// implied frequency vector is x_i = count(i) - 1 over i in [1, n-1], so
// sum x_i = 1 and some x_i > 0.
class MultiPassStream {
 public:
  explicit MultiPassStream(std::vector<std::uint64_t> items);

  std::uint64_t length() const { return items_.size(); }
  // Largest admissible item, n - 1.
  std::uint64_t universe() const { return items_.size() - 1; }
  std::size_t passes_used() const { return passes_; }

  // One sequential pass: visit(item) for every item in order.
  template <typename Visit>
  void pass(Visit&& visit) {
    ++passes_;
    for (std::uint64_t item : items_) visit(item);
  }

 private:
  std::vector<std::uint64_t> items_;
  std::size_t passes_ = 0;
};

// One pass evaluating every query on x. Query indices must lie in [1, n-1].
std::vector<double> stream_measure(MultiPassStream& stream, const QueryBatch& batch);

struct DuplicateRun {
  std::optional<std::uint64_t> index;
  std::size_t passes = 0;
  std::size_t max_state_words = 0;
  std::size_t repetitions = 0;
  std::size_t parts = 0;
  std::vector<std::uint64_t> candidates;
};

// Number of parts 4m with m = ceil(log2(1 / dup_eps)).
std::size_t duplicate_parts(const Constants& constants);
// Outer amplification so that dup_C * A repetitions fail with probability <= delta.
std::size_t duplicate_amplification(double delta);

// Finds some i with x_i > 0, or reports failure (index empty). Every
// repetition scales x by 4-wise independent 1/t_i, splits [1, n-1] into parts
// with a pairwise hash and runs adaptive 1-sparse recovery on each part; all
// parts and repetitions share passes. A final pass counts the candidates, so
// a reported index is always a duplicate.
DuplicateRun find_duplicate(MultiPassStream& stream, double delta, std::uint64_t seed,
                            const Constants& constants);

struct PassMeter {
  std::size_t passes = 0;
  std::size_t max_state_words = 0;
};
PassMeter meter_passes(const DuplicateRun& run);

// Fixtures. one_duplicate: 1..n-1 followed by d. all_same: n copies of `item`.
std::vector<std::uint64_t> one_duplicate_stream(std::uint64_t n, std::uint64_t d);
std::vector<std::uint64_t> all_same_stream(std::uint64_t n, std::uint64_t item = 1);
std::vector<std::uint64_t> random_stream(std::uint64_t n, std::uint64_t seed);
// Fisher-Yates with a seeded generator; same seed, same order everywhere.
void shuffle_stream(std::vector<std::uint64_t>& items, std::uint64_t seed);

std::vector<std::uint64_t> read_stream(std::istream& in);
std::vector<std::uint64_t> read_stream(const std::filesystem::path& path);
void write_stream(std::ostream& out, std::span<const std::uint64_t> items);

}  // namespace adasparse

#endif  // ADASPARSE_DUPLICATES_HPP_
