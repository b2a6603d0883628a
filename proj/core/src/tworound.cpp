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

#include "adasparse/tworound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "adasparse/hashing.hpp"
#include "adasparse/random.hpp"

namespace adasparse {
namespace {

constexpr std::uint64_t kMaxReduced = std::uint64_t{1} << 31;

// Round-1 CountSketch on y; keeps zero estimates so S always has 2k buckets.
RecoveryResult sketch_first_round(Measurer& measurer, const HashReduction& reduction,
                                  std::size_t k, double eps, double delta, std::uint64_t seed,
                                  const Constants& constants) {
  const CountSketch sketch(reduction.occupied(),
                           countsketch_params(k, eps, delta, reduction.reduced_dimension(),
                                              constants),
                           reduction.reduced_dimension(), seed);
  QueryBatch batch;
  sketch.append_queries(batch);
  const std::vector<double> values = measurer.measure(batch);
  RecoveryResult out = sketch.decode(values, /*keep_zeros=*/true);
  out.metering = {batch.size(), 1, 0};
  return out;
}

CountSketchParams identifier_params(double fail_prob, std::uint64_t ambient,
                                    const Constants& constants) {
  CountSketchParams p = countsketch_params(1, 1.0, fail_prob, ambient, constants);
  p.output_size = 1;
  return p;
}

}  // namespace

std::uint64_t reduced_dimension(std::size_t k, double eps, const Constants& constants) {
  if (k < 1) throw std::invalid_argument("reduced_dimension: k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("reduced_dimension: eps must be positive");
  const double target =
      std::pow(constants.reduce_dim * static_cast<double>(k) / eps, constants.reduce_exponent);
  if (!(target < static_cast<double>(kMaxReduced))) return kMaxReduced;
  return std::max<std::uint64_t>(2, std::bit_ceil(static_cast<std::uint64_t>(std::ceil(target))));
}

unsigned reduction_independence(std::uint64_t reduced, const Constants& constants) {
  const double t = std::ceil(constants.reduce_independence *
                             std::log2(static_cast<double>(std::max<std::uint64_t>(reduced, 2))));
  return static_cast<unsigned>(std::max(2.0, t));
}

HashReduction::HashReduction(std::uint64_t n, std::uint64_t reduced, unsigned independence,
                             std::uint64_t seed)
    : n_(n), reduced_(reduced) {
  if (n < 1) throw std::invalid_argument("HashReduction: n must be >= 1");
  if (reduced < 1 || reduced > kMaxReduced) {
    throw std::invalid_argument("HashReduction: reduced dimension must be in [1, 2^31]");
  }
  const KWiseHash h(independence, n, reduced, derive_seed(seed, tag("reduce.h")));
  const SignHash sigma(independence, n, derive_seed(seed, tag("reduce.sigma")));
  bucket_.resize(n);
  sign_.resize(n);
  for (std::uint64_t j = 0; j < n; ++j) {
    bucket_[j] = static_cast<std::uint32_t>(h.eval_unchecked(j));
    sign_[j] = sigma.eval_unchecked(j);
  }

  members_.resize(n);
  for (std::uint64_t j = 0; j < n; ++j) members_[j] = static_cast<Index>(j);
  std::stable_sort(members_.begin(), members_.end(),
                   [&](Index a, Index b) { return bucket_[a] < bucket_[b]; });
  for (std::size_t pos = 0; pos < members_.size(); ++pos) {
    const Index b = bucket_[members_[pos]];
    if (occupied_.empty() || occupied_.back() != b) {
      occupied_.push_back(b);
      offset_.push_back(pos);
    }
  }
  offset_.push_back(members_.size());
}

BucketView HashReduction::view(std::uint64_t b) const {
  const auto it = std::lower_bound(occupied_.begin(), occupied_.end(), b);
  if (it == occupied_.end() || *it != b) return {b, {}};
  const auto slot = static_cast<std::size_t>(it - occupied_.begin());
  return {b, std::span<const Index>(members_).subspan(offset_[slot],
                                                       offset_[slot + 1] - offset_[slot])};
}

LinearQuery reduce_query(const HashReduction& reduction, const LinearQuery& on_y) {
  LinearQuery out;
  for (std::size_t q = 0; q < on_y.size(); ++q) {
    if (on_y.indices[q] >= reduction.reduced_dimension()) {
      throw std::out_of_range("reduce_query: index outside the reduced dimension");
    }
    const BucketView v = reduction.view(on_y.indices[q]);
    for (Index j : v.preimages) out.add(j, reduction.sign(j) * on_y.coefficients[q]);
  }
  return out;
}

std::vector<double> ReducedMeasurer::measure(const QueryBatch& batch) {
  QueryBatch pulled;
  pulled.reserve(batch.size());
  for (const auto& q : batch) pulled.push_back(reduce_query(reduction_, q));
  return base_.measure(pulled);
}

BucketIdentifier::BucketIdentifier(const BucketView& bucket, std::uint64_t ambient,
                                   double fail_prob, std::uint64_t seed,
                                   const Constants& constants)
    : sketch_({bucket.preimages.begin(), bucket.preimages.end()},
              identifier_params(fail_prob, ambient, constants), ambient, seed) {
  if (bucket.preimages.empty()) throw std::invalid_argument("BucketIdentifier: empty bucket");
}

LocateOutcome BucketIdentifier::decode(std::span<const double> values) const {
  const RecoveryResult r = sketch_.decode(values);
  if (r.support.empty()) return {std::nullopt, Failure::kOutOfRange};
  return {r.support.front(), Failure::kNone};
}

LocateOutcome bucket_identify(Measurer& measurer, const BucketView& bucket, double fail_prob,
                              std::uint64_t seed, const Constants& constants) {
  const BucketIdentifier id(bucket, measurer.dimension(), fail_prob, seed, constants);
  QueryBatch batch;
  id.append_queries(batch);
  return id.decode(measurer.measure(batch));
}

TwoRoundResult two_round_recover(MeasurementOracle& oracle, std::size_t k, double eps,
                                 std::uint64_t seed, const Constants& constants,
                                 const FirstRound& first_round) {
  if (k < 1) throw std::invalid_argument("two_round_recover: k must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("two_round_recover: eps in (0,1]");
  const std::uint64_t n = oracle.dimension();
  TwoRoundResult out;
  out.reduced_dimension = reduced_dimension(k, eps, constants);
  const HashReduction reduction(n, out.reduced_dimension,
                                reduction_independence(out.reduced_dimension, constants),
                                derive_seed(seed, tag("reduction")));

  ReducedMeasurer on_y(oracle, reduction);
  const Metering before = oracle.metering();
  const double eps1 = eps / 5.0;
  constexpr double kFirstRoundFailure = 0.01;
  const std::uint64_t first_seed = derive_seed(seed, tag("round1"));
  const RecoveryResult y_hat =
      first_round ? first_round(on_y, k, eps1, kFirstRoundFailure, first_seed)
                  : sketch_first_round(on_y, reduction, k, eps1, kFirstRoundFailure, first_seed,
                                       constants);
  out.round1_measurements = oracle.metering().measurements - before.measurements;
  out.heavy_buckets = y_hat.support;

  std::vector<BucketIdentifier> ids;
  std::vector<std::size_t> which;
  QueryBatch batch;
  const double fail_prob = 1.0 / static_cast<double>(k);
  for (std::size_t s = 0; s < y_hat.support.size(); ++s) {
    const BucketView view = reduction.view(y_hat.support[s]);
    if (view.preimages.empty()) continue;
    ids.emplace_back(view, n, fail_prob, derive_seed(seed, tag("round2"), view.bucket),
                     constants);
    ids.back().append_queries(batch);
    which.push_back(s);
  }
  if (!batch.empty()) {
    const Metering mid = oracle.metering();
    const std::vector<double> values = oracle.measure(batch);
    out.round2_measurements = oracle.metering().measurements - mid.measurements;
    std::vector<std::pair<Index, double>> placed;
    std::size_t offset = 0;
    for (std::size_t t = 0; t < ids.size(); ++t) {
      const std::size_t count = ids[t].measurement_count();
      const LocateOutcome hh = ids[t].decode(std::span(values).subspan(offset, count));
      offset += count;
      if (!hh.ok()) continue;
      const double value = reduction.sign(*hh.index) * y_hat.values[which[t]];
      if (value != 0.0) placed.emplace_back(*hh.index, value);
    }
    std::sort(placed.begin(), placed.end());
    for (const auto& [j, v] : placed) {
      out.result.support.push_back(j);
      out.result.values.push_back(v);
    }
  }
  out.result.metering = oracle.metering();
  return out;
}

bool check_bittest_property(std::span<const double> w, std::span<const double> w_hat, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("check_bittest_property: p must be 1 or 2");
  if (w.empty() || w.size() != w_hat.size()) {
    throw std::invalid_argument("check_bittest_property: vectors must be nonempty, same size");
  }
  auto pw = [p](double v) { return p == 1 ? std::abs(v) : v * v; };
  double norm = 0.0;
  double off_top = 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    norm += pw(w[i]);
    if (i > 0) off_top += pw(w[i]);
    diff += pw(w[i] - w_hat[i]);
  }
  const bool hypotheses = pw(w[0]) > 0.9 * norm && diff <= 2.0 * off_top;
  if (!hypotheses) return true;
  for (std::size_t i = 1; i < w_hat.size(); ++i) {
    if (std::abs(w_hat[i]) > std::abs(w_hat[0])) return false;
  }
  return pw(w_hat[0]) > 0.6 * norm;
}

}  // namespace adasparse
