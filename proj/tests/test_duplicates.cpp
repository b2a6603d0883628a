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
#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "adasparse/constants.hpp"
#include "adasparse/duplicates.hpp"
#include "adasparse/hashing.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/random.hpp"

namespace adasparse {
namespace {

// x_i = (count of i) - 1 for i in [1, n-1]; slot 0 is unused.
std::vector<double> frequencies(const std::vector<std::uint64_t>& items) {
  std::vector<double> x(items.size(), -1.0);
  x[0] = 0.0;
  for (std::uint64_t v : items) x[v] += 1.0;
  return x;
}

TEST(MultiPassStream, ValidatesItems) {
  EXPECT_THROW(MultiPassStream({1}), std::invalid_argument);
  EXPECT_THROW(MultiPassStream({1, 2}), std::invalid_argument);
  EXPECT_THROW(MultiPassStream({0, 1, 1}), std::invalid_argument);
  MultiPassStream s({1, 2, 1});
  EXPECT_EQ(s.length(), 3u);
  EXPECT_EQ(s.universe(), 2u);
  EXPECT_EQ(s.passes_used(), 0u);
}

TEST(MultiPassStream, PassesReplayIdentically) {
  MultiPassStream s(random_stream(100, 3));
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
  s.pass([&](std::uint64_t v) { first.push_back(v); });
  s.pass([&](std::uint64_t v) { second.push_back(v); });
  EXPECT_EQ(first, second);
  EXPECT_EQ(s.passes_used(), 2u);
}

TEST(StreamMeasure, SmallExamples) {
  MultiPassStream pair({1, 1});
  LinearQuery q;
  q.add(1, 1.0);
  EXPECT_EQ(stream_measure(pair, {q}), std::vector<double>{1.0});
  EXPECT_EQ(pair.passes_used(), 1u);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MultiPassStream s(random_stream(64, seed));
    LinearQuery ones;
    for (Index i = 1; i < 64; ++i) ones.add(i, 1.0);
    EXPECT_EQ(stream_measure(s, {ones})[0], 1.0);
  }
  LinearQuery bad;
  bad.add(0, 1.0);
  EXPECT_THROW(stream_measure(pair, {bad}), std::out_of_range);
}

TEST(StreamMeasure, MatchesBruteForceFrequencies) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t n = 2 + rng.below(500);
    const auto items = random_stream(n, derive_seed(6, t));
    const std::vector<double> x = frequencies(items);
    QueryBatch batch(3);
    for (auto& q : batch) {
      for (Index i = 1; i < n; ++i) {
        if (rng.bernoulli(0.5)) q.add(i, rng.gaussian());
      }
    }
    MultiPassStream s(items);
    const auto got = stream_measure(s, batch);
    EXPECT_EQ(s.passes_used(), 1u);
    for (std::size_t q = 0; q < batch.size(); ++q) {
      double expected = 0.0;
      double scale = 0.0;
      for (std::size_t e = 0; e < batch[q].size(); ++e) {
        expected += batch[q].coefficients[e] * x[batch[q].indices[e]];
        scale += std::abs(batch[q].coefficients[e] * x[batch[q].indices[e]]);
      }
      EXPECT_NEAR(got[q], expected, 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST(StreamMeasure, ScalingIdentity) {
  // z_i = x_i / t_i measured coordinate-wise through the stream.
  const auto items = random_stream(1000, 8);
  const std::vector<double> x = frequencies(items);
  const UniformHash t(4, 1000, 9);
  QueryBatch batch;
  for (Index i = 1; i < 1000; ++i) {
    LinearQuery q;
    q.add(i, 1.0 / t(i));
    batch.push_back(std::move(q));
  }
  MultiPassStream s(items);
  const auto z = stream_measure(s, batch);
  for (Index i = 1; i < 1000; ++i) {
    const double expected = x[i] / t(i);
    EXPECT_NEAR(z[i - 1], expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(FindDuplicate, AllSameStream) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MultiPassStream s(all_same_stream(512));
    const DuplicateRun run = find_duplicate(s, 0.25, seed, Constants{});
    ASSERT_TRUE(run.index.has_value());
    EXPECT_EQ(*run.index, 1u);
  }
}

TEST(FindDuplicate, PlantedDuplicateInShuffledOrder) {
  const Constants c;
  int found = 0;
  constexpr int kTrials = 30;
  for (int t = 0; t < kTrials; ++t) {
    const std::uint64_t d = 1 + derive_seed(30, t) % 1023;
    auto items = one_duplicate_stream(1024, d);
    shuffle_stream(items, derive_seed(31, t));
    MultiPassStream s(items);
    const DuplicateRun run = find_duplicate(s, 0.25, derive_seed(32, t), c);
    if (run.index) {
      EXPECT_EQ(*run.index, d);
      ++found;
    }
  }
  EXPECT_GE(found, kTrials * 3 / 4);
}

TEST(FindDuplicate, OutputsAreAlwaysDuplicates) {
  const Constants c;
  for (int t = 0; t < 20; ++t) {
    const auto items = random_stream(700, derive_seed(40, t));
    const std::vector<double> x = frequencies(items);
    MultiPassStream s(items);
    const DuplicateRun run = find_duplicate(s, 0.25, derive_seed(41, t), c);
    if (run.index) {
      EXPECT_GT(x[*run.index], 0.0);
    }
    EXPECT_TRUE(std::is_sorted(run.candidates.begin(), run.candidates.end()));
  }
}

TEST(FindDuplicate, PassAndStateBounds) {
  const Constants c;
  for (std::uint64_t n : {256u, 4096u, 65536u}) {
    MultiPassStream s(one_duplicate_stream(n, n / 3));
    const DuplicateRun run = find_duplicate(s, 0.25, n, c);
    EXPECT_EQ(run.parts, 24u);
    EXPECT_EQ(run.repetitions, 22u);
    // Lockstep shrinking, a direct pair, and the verification pass.
    EXPECT_LE(run.passes, OneSparseSchedule(n).length() + 2);
    EXPECT_EQ(run.passes, s.passes_used());
    EXPECT_LE(run.max_state_words, 2 * run.repetitions * run.parts + run.candidates.size());
    const PassMeter m = meter_passes(run);
    EXPECT_EQ(m.passes, run.passes);
    EXPECT_EQ(m.max_state_words, run.max_state_words);
  }
}

TEST(FindDuplicate, PassesDoNotScaleWithRepetitionsOrParts) {
  Constants few;
  few.dup_repetitions = 1;
  few.dup_eps = 0.25;
  Constants many;
  many.dup_repetitions = 4;
  many.dup_eps = 1.0 / 1024;
  const std::uint64_t n = 8192;
  const std::size_t bound = OneSparseSchedule(n).length() + 2;
  for (const Constants& c : {few, many}) {
    MultiPassStream s(one_duplicate_stream(n, 77));
    EXPECT_LE(find_duplicate(s, 0.25, 5, c).passes, bound);
  }
}

TEST(Amplification, Counts) {
  EXPECT_EQ(duplicate_amplification(0.25), 11u);  // ln 4 / ln(8/7) = 10.38
  EXPECT_EQ(duplicate_amplification(1.0), 1u);
  EXPECT_EQ(duplicate_parts(Constants{}), 24u);
  EXPECT_THROW(duplicate_amplification(0.0), std::invalid_argument);
}

// Fraction of draws of t with ||z off top-m||_2 > sqrt(m) ||x||_1 / 20.
double tail_exceed_rate(const std::vector<double>& x, std::size_t m, int draws,
                        std::uint64_t seed) {
  double l1 = 0.0;
  for (double v : x) l1 += std::abs(v);
  int large = 0;
  for (int d = 0; d < draws; ++d) {
    const UniformHash t(4, x.size(), derive_seed(seed, d));
    std::vector<double> z2;
    for (Index i = 1; i < x.size(); ++i) z2.push_back(std::pow(x[i] / t(i), 2));
    std::nth_element(z2.begin(), z2.begin() + static_cast<std::ptrdiff_t>(m), z2.end(),
                     std::greater<>());
    const double tail =
        std::sqrt(std::accumulate(z2.begin() + static_cast<std::ptrdiff_t>(m), z2.end(), 0.0));
    if (tail > std::sqrt(static_cast<double>(m)) * l1 / 20.0) ++large;
  }
  return static_cast<double>(large) / draws;
}

TEST(ScaledFrequencies, TailIsSmallForPlantedDuplicate) {
  auto items = one_duplicate_stream(1u << 12, 999);
  EXPECT_EQ(tail_exceed_rate(frequencies(items), 8, 1000, 51), 0.0);
}

TEST(ScaledFrequencies, TailIsUsuallySmallOnceMIsLargeEnough) {
  // For a uniformly random stream (||x||_1 ~ 0.73 n) the 1/20 constant needs
  // m around 32; at m = 8 and m = 16 nearly every draw exceeds the bound.
  const std::vector<double> x = frequencies(random_stream(1u << 12, 50));
  EXPECT_LE(tail_exceed_rate(x, 32, 1000, 52), 0.1);
}

TEST(StreamIo, RoundTripAndErrors) {
  const auto items = random_stream(50, 2);
  std::stringstream ss;
  write_stream(ss, items);
  EXPECT_EQ(read_stream(ss), items);
  std::istringstream commented("# fixture\n1\n\n  2 \n1\n");
  EXPECT_EQ(read_stream(commented), (std::vector<std::uint64_t>{1, 2, 1}));
  std::istringstream bad("1\n2x\n");
  EXPECT_THROW(read_stream(bad), std::invalid_argument);
  std::istringstream negative("-1\n");
  EXPECT_THROW(read_stream(negative), std::invalid_argument);
}

TEST(Fixtures, ShapesAndErrors) {
  const auto one = one_duplicate_stream(6, 4);
  EXPECT_EQ(one, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 4}));
  auto shuffled = one;
  shuffle_stream(shuffled, 3);
  EXPECT_TRUE(std::is_permutation(one.begin(), one.end(), shuffled.begin()));
  EXPECT_THROW(one_duplicate_stream(6, 6), std::invalid_argument);
  EXPECT_THROW(all_same_stream(1), std::invalid_argument);
  for (std::uint64_t v : random_stream(30, 1)) {
    EXPECT_GE(v, 1u);
    EXPECT_LE(v, 29u);
  }
}

}  // namespace
}  // namespace adasparse
