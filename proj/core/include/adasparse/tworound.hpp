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

#ifndef ADASPARSE_TWOROUND_HPP_
#define ADASPARSE_TWOROUND_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "adasparse/constants.hpp"
#include "adasparse/countsketch.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/types.hpp"

namespace adasparse {

// N = smallest power of two >= (c_N k / eps)^N_exp, at least 2 and at most 2^31.
std::uint64_t reduced_dimension(std::size_t k, double eps, const Constants& constants);

// t = ceil(t_reduce * log2 N), at least 2.
unsigned reduction_independence(std::uint64_t reduced, const Constants& constants);

// Coordinates of x that hash to one bucket of y.
struct BucketView {
  std::uint64_t bucket = 0;
  std::span<const Index> preimages;
};

// y_b = sum_{h(j) = b} sigma(j) x_j for a t-wise independent h: [n] -> [N]
// and t-wise independent signs sigma. Buckets and signs are tabulated once.
class HashReduction {
 public:
  HashReduction(std::uint64_t n, std::uint64_t reduced, unsigned independence,
                std::uint64_t seed);

  std::uint64_t dimension() const { return n_; }
  std::uint64_t reduced_dimension() const { return reduced_; }
  std::uint64_t bucket(Index j) const { return bucket_[j]; }
  double sign(Index j) const { return sign_[j]; }

  BucketView view(std::uint64_t b) const;
  // Buckets with at least one preimage, ascending.
  const std::vector<Index>& occupied() const { return occupied_; }

 private:
  std::uint64_t n_;
  std::uint64_t reduced_;
  std::vector<std::uint32_t> bucket_;
  std::vector<double> sign_;
  // CSR layout: preimages of bucket b are members_[offset_[slot(b)] ..].
  std::vector<Index> occupied_;
  std::vector<std::size_t> offset_;
  std::vector<Index> members_;
};

// Pullback of a query on y to the equivalent query on x: the coefficient of
// x_j is sigma(j) times the query's coefficient at h(j).
LinearQuery reduce_query(const HashReduction& reduction, const LinearQuery& on_y);

// Presents y to recovery code. Each measure() is one round on the base.
class ReducedMeasurer final : public Measurer {
 public:
  ReducedMeasurer(Measurer& base, const HashReduction& reduction)
      : base_(base), reduction_(reduction) {}

  std::uint64_t dimension() const override { return reduction_.reduced_dimension(); }
  std::vector<double> measure(const QueryBatch& batch) override;

 private:
  Measurer& base_;
  const HashReduction& reduction_;
};

// Nonadaptive identification of the dominant coordinate of one bucket:
// CountSketch with s_out = 1, eps = 1 and failure probability fail_prob.
class BucketIdentifier {
 public:
  BucketIdentifier(const BucketView& bucket, std::uint64_t ambient, double fail_prob,
                   std::uint64_t seed, const Constants& constants);

  std::size_t measurement_count() const { return sketch_.measurement_count(); }
  void append_queries(QueryBatch& batch) const { sketch_.append_queries(batch); }
  LocateOutcome decode(std::span<const double> values) const;

 private:
  CountSketch sketch_;
};

LocateOutcome bucket_identify(Measurer& measurer, const BucketView& bucket, double fail_prob,
                              std::uint64_t seed, const Constants& constants);

// A first-round recovery procedure run on y: (measurer, k, eps, delta, seed).
using FirstRound =
    std::function<RecoveryResult(Measurer&, std::size_t, double, double, std::uint64_t)>;

struct TwoRoundResult {
  RecoveryResult result;
  std::uint64_t reduced_dimension = 0;
  std::uint64_t round1_measurements = 0;
  std::uint64_t round2_measurements = 0;
  // S: buckets reported by the first round.
  std::vector<Index> heavy_buckets;
};

// Round 1 recovers y with (k, eps/5, N, 1/100); round 2 identifies HH(b) in
// every reported bucket b with one shared batch. x_hat places sigma(HH(b)) y_hat_b
// at HH(b). The default first round is CountSketch, which always reports 2k
// buckets so the second round is never empty.
TwoRoundResult two_round_recover(MeasurementOracle& oracle, std::size_t k, double eps,
                                 std::uint64_t seed, const Constants& constants,
                                 const FirstRound& first_round = nullptr);

// For w sorted by decreasing magnitude: when |w_1|^p > 0.9 ||w||_p^p and
// ||w - w_hat||_p^p <= 2 ||w off top-1||_p^p, checks that w_hat's largest
// entry is at position 1 and |w_hat_1|^p > (3/5) ||w||_p^p. Returns false only
// when the hypotheses hold and the conclusion does not.
bool check_bittest_property(std::span<const double> w, std::span<const double> w_hat, int p);

}  // namespace adasparse

#endif  // ADASPARSE_TWOROUND_HPP_
