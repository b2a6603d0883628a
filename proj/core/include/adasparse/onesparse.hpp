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

#ifndef ADASPARSE_ONESPARSE_HPP_
#define ADASPARSE_ONESPARSE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "adasparse/hashing.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/types.hpp"

namespace adasparse {

// Relative threshold below which the first measurement counts as zero.
inline constexpr double kNoSignalGuard = 1e-12;

// Bucket counts are capped so that D + h(i) stays exactly representable and
// b/a - D keeps sub-unit resolution in double precision.
inline constexpr std::uint64_t kMaxBuckets = std::uint64_t{1} << 40;

// Parameters of one shrink step: noise reduction factor B, failure
// probability delta, and the bucket count D derived from them.
struct ShrinkParams {
  double noise_factor = 2.0;
  double failure = 0.25;
  std::uint64_t buckets = 64;

  // D = ceil(scale * 4 B^2 / delta), clamped to [2, kMaxBuckets].
  static ShrinkParams from(double noise_factor, double failure, double scale);
};

// B_0 = 2, B_{i+1} = B_i^{3/2}, delta_i = 2^-i / 4, length r = min{i : B_i >= n}.
class OneSparseSchedule {
 public:
  explicit OneSparseSchedule(std::uint64_t n);

  std::size_t length() const { return length_; }
  // log2 B_i = 1.5^i, exact in double for the lengths that occur.
  static double log2_noise_factor(std::size_t i);
  static double noise_factor(std::size_t i);
  static double failure(std::size_t i);
  ShrinkParams params(std::size_t i, double scale) const;

 private:
  std::size_t length_;
};

// Outcome of a single-index primitive.
struct LocateOutcome {
  std::optional<Index> index;
  Failure failure = Failure::kNone;

  bool ok() const { return index.has_value(); }
};

// Two non-adaptive measurements a = sum s(i) x_i, b = sum (n' + pos(i)) s(i) x_i
// restricted to `active`, whose entries are relabeled 1..n' in the given order.
// Returns the entry at position round(b/a - n').
LocateOutcome locate_pair(Measurer& measurer, std::span<const Index> active,
                          std::uint64_t sign_seed);

// One NonAdaptiveShrink step: pairwise h into [D], per-index signs s1 and
// per-bucket signs s2. Hashes are keyed on the global index so that the
// surviving set has an implicit description {i : h(i) = p*}.
class ShrinkStep {
 public:
  ShrinkStep(std::uint64_t ambient, std::uint64_t buckets, std::uint64_t seed);

  std::uint64_t buckets() const { return buckets_; }
  std::uint64_t bucket(Index i) const { return h_.eval_unchecked(i); }
  double sign(Index i) const {
    return static_cast<double>(s1_.eval_unchecked(i) * s2_.eval_unchecked(bucket(i)));
  }
  // Coefficients of x_i in the two measurements (a, b).
  std::pair<double, double> coefficients(Index i) const {
    const std::uint64_t p = bucket(i);
    const double s = static_cast<double>(s1_.eval_unchecked(i) * s2_.eval_unchecked(p));
    return {s, s * (static_cast<double>(buckets_) + static_cast<double>(p + 1))};
  }
  std::pair<LinearQuery, LinearQuery> queries(std::span<const Index> active) const;

  // Bucket selected by the measured pair, or the reason none was.
  std::variant<std::uint64_t, Failure> decode(double a, double b,
                                              std::size_t active_size) const;

 private:
  std::uint64_t buckets_;
  KWiseHash h_;
  SignHash s1_;
  SignHash s2_;
};

struct ShrinkOutcome {
  std::vector<Index> survivors;
  Failure failure = Failure::kNone;

  bool ok() const { return failure == Failure::kNone; }
};

// One NonAdaptiveShrink call: one round, two measurements.
ShrinkOutcome shrink(Measurer& measurer, std::span<const Index> active,
                     const ShrinkParams& params, std::uint64_t seed);

struct OneSparseOutcome {
  std::optional<Index> index;
  Failure failure = Failure::kNone;
  // The active set when the search stopped (a single index on success).
  std::vector<Index> survivors;
  std::size_t rounds = 0;

  bool ok() const { return index.has_value(); }
};

// AdaptiveOneSparseRec as a resumable state machine, so that many searches
// can share adaptive rounds. Each round the search asks for two functionals
// (pending_queries, or coefficients() for implicit evaluation) and is
// advanced with their values.
//
// Shrink steps follow the schedule for |active| until one index survives; a
// set of two is resolved with two singleton measurements. The search gives up
// with kNotIsolated once the schedule is exhausted.
class OneSparseSearch {
 public:
  OneSparseSearch(std::vector<Index> active, std::uint64_t ambient, double shrink_scale,
                  std::uint64_t seed);

  bool finished() const { return finished_; }
  std::size_t rounds() const { return rounds_; }
  std::span<const Index> active() const { return active_; }

  std::pair<LinearQuery, LinearQuery> pending_queries() const;

  // Coefficients of the pending pair at i, or nullopt when i has been
  // excluded by an earlier step. Assumes i belongs to the initial active set.
  std::optional<std::pair<double, double>> coefficients(Index i) const;

  void advance(double a, double b);

  OneSparseOutcome outcome() const;

 private:
  struct Direct {
    Index first;
    Index second;
  };

  void settle();
  void fail(Failure why);

  std::uint64_t ambient_;
  double shrink_scale_;
  std::uint64_t seed_;
  OneSparseSchedule schedule_;
  std::vector<Index> active_;
  // Completed shrink steps and the bucket each one kept.
  std::vector<std::pair<ShrinkStep, std::uint64_t>> kept_;
  std::optional<ShrinkStep> pending_shrink_;
  std::optional<Direct> pending_direct_;
  std::size_t step_ = 0;
  std::size_t rounds_ = 0;
  bool finished_ = false;
  Failure failure_ = Failure::kNone;
};

// Runs every unfinished search to completion, packing the pending pairs of
// all live searches into one batch per round. Returns the number of rounds.
std::size_t run_lockstep(Measurer& measurer, std::span<OneSparseSearch> searches);

OneSparseOutcome recover_one_sparse(Measurer& measurer, std::vector<Index> active,
                                    double shrink_scale, std::uint64_t seed);

}  // namespace adasparse

#endif  // ADASPARSE_ONESPARSE_HPP_
