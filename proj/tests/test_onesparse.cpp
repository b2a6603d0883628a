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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "adasparse/constants.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/random.hpp"
#include "adasparse/signals.hpp"

namespace adasparse {
namespace {

std::vector<Index> iota_indices(std::size_t n, Index first = 0) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), first);
  return v;
}

// x_j = spike, other active entries i.i.d. Gaussian scaled to tail_norm.
std::vector<double> spike_with_tail(std::size_t n, Index j, double spike, double tail_norm,
                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  double sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == j) continue;
    x[i] = rng.gaussian();
    sq += x[i] * x[i];
  }
  for (auto& v : x) v *= tail_norm / std::sqrt(sq);
  x[j] = spike;
  return x;
}

TEST(OneSparseSchedule, LengthsByHand) {
  // r = least i with 1.5^i >= log2 n.
  EXPECT_EQ(OneSparseSchedule(1).length(), 0u);
  EXPECT_EQ(OneSparseSchedule(2).length(), 0u);
  EXPECT_EQ(OneSparseSchedule(3).length(), 2u);
  EXPECT_EQ(OneSparseSchedule(4).length(), 2u);
  EXPECT_EQ(OneSparseSchedule(1024).length(), 6u);   // 1.5^6 = 11.39 >= 10
  EXPECT_EQ(OneSparseSchedule(4096).length(), 7u);   // 1.5^6 < 12 <= 1.5^7
  EXPECT_EQ(OneSparseSchedule(1u << 20).length(), 8u);
  EXPECT_EQ(OneSparseSchedule(1u << 30).length(), 9u);
}

TEST(OneSparseSchedule, IdentitiesUpTo2To30) {
  for (int e = 1; e <= 30; ++e) {
    const std::uint64_t n = std::uint64_t{1} << e;
    const OneSparseSchedule s(n);
    const std::size_t r = s.length();
    // B_r >= n, compared in log2 space: 1.5^r >= e.
    EXPECT_GE(std::pow(1.5, static_cast<double>(r)), static_cast<double>(e));
    if (r > 0) {
      EXPECT_LT(std::pow(1.5, static_cast<double>(r - 1)), static_cast<double>(e));
    }
    // sum_{i<r} 2^-i / 4 < 1/2.
    double sum = 0;
    for (std::size_t i = 0; i < r; ++i) sum += OneSparseSchedule::failure(i);
    EXPECT_LT(sum, 0.5);
    EXPECT_LE(static_cast<double>(r),
              std::ceil(std::log(static_cast<double>(e)) / std::log(1.5)) + 2);
  }
}

TEST(ShrinkParams, BucketFormula) {
  EXPECT_EQ(ShrinkParams::from(2.0, 0.25, 1.0).buckets, 64u);
  EXPECT_EQ(ShrinkParams::from(2.0, 0.25, 0.125).buckets, 8u);
  EXPECT_EQ(ShrinkParams::from(1.0, 0.9, 0.01).buckets, 2u);  // clamped to D >= 2
  EXPECT_EQ(OneSparseSchedule(1u << 30).params(20, 1.0).buckets, kMaxBuckets);
  EXPECT_THROW(ShrinkParams::from(2.0, 0.0, 1.0), std::invalid_argument);
}

TEST(LocatePair, NoiselessSpikeIsExact) {
  // Active = coordinates 1..16, x = 5 e_7.
  std::vector<double> x(17, 0.0);
  x[7] = 5.0;
  MeasurementOracle oracle{Signal(x)};
  const auto active = iota_indices(16, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LocateOutcome out = locate_pair(oracle, active, seed);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(*out.index, 7u);
  }
  EXPECT_EQ(oracle.metering().measurements, 100u);
  EXPECT_EQ(oracle.metering().rounds, 50u);
}

TEST(LocatePair, ZeroSignalReportsNoSignal) {
  MeasurementOracle oracle(Signal(std::vector<double>(8, 0.0)));
  const auto out = locate_pair(oracle, iota_indices(8), 3);
  EXPECT_FALSE(out.ok());
  EXPECT_EQ(out.failure, Failure::kNoSignal);
}

TEST(LocatePair, HeavySpikeOverTail) {
  const auto x = spike_with_tail(64, 10, 1000.0, 0.3, 17);
  MeasurementOracle oracle{Signal(x)};
  const auto active = iota_indices(64);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto out = locate_pair(oracle, active, derive_seed(seed, tag("signs")));
    hits += out.ok() && *out.index == 10 ? 1 : 0;
  }
  EXPECT_GE(hits, 750);
}

TEST(Shrink, NoiselessKeepsSpike) {
  std::vector<double> x(300, 0.0);
  x[123] = -2.5;
  MeasurementOracle oracle{Signal(x)};
  const auto active = iota_indices(300);
  for (std::uint64_t d : {2u, 3u, 17u, 1000u}) {
    const ShrinkOutcome out = shrink(oracle, active, {2.0, 0.25, d}, d * 7);
    ASSERT_TRUE(out.ok());
    EXPECT_TRUE(std::binary_search(out.survivors.begin(), out.survivors.end(), 123u));
  }
}

TEST(Shrink, ContainmentSizeAndNoiseReduction) {
  // D = 64 corresponds to B = 2, delta = 1/4 at scale 1.
  const ShrinkParams params = ShrinkParams::from(2.0, 0.25, 1.0);
  ASSERT_EQ(params.buckets, 64u);
  const auto x = spike_with_tail(256, 5, 100.0, 0.1, 99);
  MeasurementOracle oracle{Signal(x)};
  const auto active = iota_indices(256);
  double tail_sq = 0;
  for (std::size_t i = 0; i < x.size(); ++i) tail_sq += i == 5 ? 0 : x[i] * x[i];
  int contained = 0;
  int quiet = 0;
  constexpr int kTrials = 500;
  for (int t = 0; t < kTrials; ++t) {
    const ShrinkOutcome out = shrink(oracle, active, params, derive_seed(5, t));
    const bool has = std::binary_search(out.survivors.begin(), out.survivors.end(), 5u);
    if (has && out.survivors.size() <= 1 + 256 / 4) ++contained;
    double rest = 0;
    for (Index i : out.survivors) rest += i == 5 ? 0 : x[i] * x[i];
    if (has && std::sqrt(rest) <= std::sqrt(tail_sq) / 2.0) ++quiet;
  }
  EXPECT_GE(contained, kTrials * 3 / 4);
  EXPECT_GE(quiet, kTrials * 3 / 4);
  EXPECT_EQ(oracle.metering().measurements, 2u * kTrials);
  EXPECT_EQ(oracle.metering().rounds, static_cast<std::uint64_t>(kTrials));
}

TEST(RecoverOneSparse, NoiselessSpikeEverySeed) {
  std::vector<double> x(1024, 0.0);
  x[3] = 1.0;
  const std::size_t bound = 2 * (static_cast<std::size_t>(std::ceil(std::log(10.0) / std::log(1.5))) + 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    MeasurementOracle oracle{Signal(x)};
    const auto out = recover_one_sparse(oracle, iota_indices(1024), 0.125, seed);
    ASSERT_TRUE(out.ok()) << to_string(out.failure);
    EXPECT_EQ(*out.index, 3u);
    EXPECT_LE(oracle.metering().measurements, bound);
    EXPECT_EQ(oracle.metering().rounds, out.rounds);
  }
}

TEST(RecoverOneSparse, TrivialActiveSets) {
  MeasurementOracle oracle(Signal({0.0, 4.0, -9.0}));
  const auto single = recover_one_sparse(oracle, {1}, 0.125, 1);
  ASSERT_TRUE(single.ok());
  EXPECT_EQ(*single.index, 1u);
  EXPECT_EQ(oracle.metering().measurements, 0u);

  const auto pair = recover_one_sparse(oracle, {1, 2}, 0.125, 1);
  ASSERT_TRUE(pair.ok());
  EXPECT_EQ(*pair.index, 2u);
  EXPECT_EQ(oracle.metering(), (Metering{2, 1, 0}));

  const auto zeros = recover_one_sparse(oracle, {0}, 0.125, 1);
  EXPECT_TRUE(zeros.ok());  // a single candidate needs no measurement
  MeasurementOracle blank(Signal({0.0, 0.0}));
  EXPECT_EQ(recover_one_sparse(blank, {0, 1}, 0.125, 1).failure, Failure::kNoSignal);
  EXPECT_THROW(recover_one_sparse(blank, {}, 0.125, 1), std::invalid_argument);
}

TEST(RecoverOneSparse, HeavyHitterAtCalibratedRatio) {
  const Constants c;
  int hits = 0;
  constexpr int kTrials = 400;
  for (int t = 0; t < kTrials; ++t) {
    const Signal x = generate_signal(
        {SignalModel::kGaussianTail, 4096, 1, c.heavy_ratio, 1.0}, derive_seed(11, t));
    const Index j = static_cast<Index>(
        std::max_element(x.values().begin(), x.values().end(),
                         [](double a, double b) { return std::abs(a) < std::abs(b); }) -
        x.values().begin());
    MeasurementOracle oracle(x);
    const auto out = recover_one_sparse(oracle, iota_indices(4096), c.shrink_scale,
                                        derive_seed(12, t));
    hits += out.ok() && *out.index == j ? 1 : 0;
  }
  EXPECT_GE(hits, kTrials / 2);
}

TEST(RecoverOneSparse, QueriesStayInsideActiveSet) {
  std::vector<double> x(500);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.01 * static_cast<double>(i % 7);
  x[250] = 50.0;
  std::vector<Index> active;
  for (Index i = 100; i < 400; i += 3) active.push_back(i);
  active.push_back(250);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  MeasurementOracle oracle{Signal(x)};
  oracle.set_recording(true);
  OneSparseSearch search(active, 500, 0.125, 4);
  std::vector<Index> previous = active;
  while (!search.finished()) {
    const std::set<Index> allowed(search.active().begin(), search.active().end());
    const auto [qa, qb] = search.pending_queries();
    for (Index i : qa.indices) EXPECT_TRUE(allowed.count(i));
    for (Index i : qb.indices) EXPECT_TRUE(allowed.count(i));
    // The implicit coefficients agree with the explicit queries.
    for (std::size_t e = 0; e < qa.size(); ++e) {
      const auto c = search.coefficients(qa.indices[e]);
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(c->first, qa.coefficients[e]);
    }
    for (Index i : active) {
      if (!allowed.count(i)) {
        EXPECT_FALSE(search.coefficients(i).has_value());
      }
    }
    const auto v = oracle.measure({qa, qb});
    search.advance(v[0], v[1]);
  }
  EXPECT_TRUE(search.outcome().ok());
}

TEST(RunLockstep, SharedRoundsMatchIndividualRuns) {
  std::vector<OneSparseSearch> searches;
  std::vector<double> x(2000, 0.0);
  for (Index j : {10u, 700u, 1999u}) x[j] = 3.0 + j;
  // Three disjoint active sets, each with one spike.
  const std::vector<std::vector<Index>> sets = {iota_indices(600), iota_indices(600, 600),
                                                iota_indices(800, 1200)};
  MeasurementOracle shared{Signal(x)};
  for (std::size_t s = 0; s < sets.size(); ++s) searches.emplace_back(sets[s], 2000, 0.125, s);
  const std::size_t rounds = run_lockstep(shared, searches);
  EXPECT_EQ(shared.metering().rounds, rounds);

  std::size_t longest = 0;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    MeasurementOracle solo{Signal(x)};
    const auto out = recover_one_sparse(solo, sets[s], 0.125, s);
    EXPECT_EQ(out.index, searches[s].outcome().index);
    longest = std::max(longest, out.rounds);
    total += solo.metering().measurements;
  }
  EXPECT_EQ(rounds, longest);
  EXPECT_EQ(shared.metering().measurements, total);
}

TEST(RecoverOneSparse, MeasurementsGrowSlowly) {
  // Mean measurements per n against log2 log2 n: slopes agree within 20%.
  std::vector<double> per_loglog;
  for (int e : {10, 14, 18, 22}) {
    const std::uint64_t n = std::uint64_t{1} << e;
    double total = 0;
    constexpr int kTrials = 12;
    for (int t = 0; t < kTrials; ++t) {
      std::vector<double> x(n, 0.0);
      x[derive_seed(e, t) % n] = 1.0;
      MeasurementOracle oracle{Signal(x)};
      recover_one_sparse(oracle, iota_indices(n), 0.125, derive_seed(e, t, 1));
      total += static_cast<double>(oracle.metering().measurements);
    }
    per_loglog.push_back(total / kTrials / std::log2(static_cast<double>(e)));
  }
  const double mean =
      std::accumulate(per_loglog.begin(), per_loglog.end(), 0.0) / per_loglog.size();
  for (double v : per_loglog) EXPECT_NEAR(v, mean, 0.2 * mean);
}

}  // namespace
}  // namespace adasparse
