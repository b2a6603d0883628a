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

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "adasparse/constants.hpp"
#include "adasparse/evaluators.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/random.hpp"
#include "adasparse/signal_io.hpp"
#include "adasparse/types.hpp"

namespace adasparse {
namespace {

LinearQuery query(std::vector<Index> idx, std::vector<double> coef) {
  return {std::move(idx), std::move(coef)};
}

TEST(Signal, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Signal(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(Signal({1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  EXPECT_THROW(Signal({std::numeric_limits<double>::infinity()}), std::invalid_argument);
  EXPECT_EQ(Signal({1.0, 2.0}).size(), 2u);
}

TEST(Oracle, SingletonAndSumQueries) {
  MeasurementOracle oracle(Signal({0, 0, 0, 3, 0, 0, 0, 0}));
  const auto v = oracle.measure({query({3}, {1.0})});
  EXPECT_EQ(v, std::vector<double>{3.0});
  EXPECT_EQ(oracle.metering(), (Metering{1, 1, 0}));

  MeasurementOracle ones(Signal({1, 1, 1, 1}));
  const auto w = ones.measure({query({0, 1, 2, 3}, {1, 1, 1, 1}), query({0, 2}, {2, -1})});
  EXPECT_EQ(w, (std::vector<double>{4.0, 1.0}));
  EXPECT_EQ(ones.metering(), (Metering{2, 1, 0}));
}

TEST(Oracle, EachBatchIsOneRound) {
  MeasurementOracle oracle(Signal({1, 2, 3}));
  oracle.measure({query({0}, {1}), query({1}, {1}), query({2}, {1})});
  oracle.measure({query({0, 1}, {1, 1})});
  EXPECT_EQ(oracle.metering(), (Metering{4, 2, 0}));
}

TEST(Oracle, RejectsBadBatchesWithoutCharging) {
  MeasurementOracle oracle(Signal({1, 2, 3}));
  EXPECT_THROW(oracle.measure({}), std::invalid_argument);
  EXPECT_THROW(oracle.measure({query({0}, {1}), query({3}, {1})}), std::out_of_range);
  EXPECT_THROW(oracle.measure({query({1, 1}, {1, 1})}), std::invalid_argument);
  EXPECT_THROW(oracle.measure({query({1}, {std::numeric_limits<double>::infinity()})}),
               std::invalid_argument);
  EXPECT_EQ(oracle.metering(), (Metering{0, 0, 0}));
  // The same index in two different queries is fine.
  EXPECT_NO_THROW(oracle.measure({query({1}, {1}), query({1}, {2})}));
}

TEST(Oracle, EmptyQueryMeasuresZero) {
  MeasurementOracle oracle(Signal({5}));
  EXPECT_EQ(oracle.measure({LinearQuery{}}), std::vector<double>{0.0});
}

TEST(Oracle, DirectObservation) {
  MeasurementOracle oracle(Signal({1.5, -2.0, 0.0, 7.0}));
  const std::vector<Index> idx = {3, 1, 3};
  const auto obs = oracle.observe_direct(idx);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs.at(1), -2.0);
  EXPECT_EQ(obs.at(3), 7.0);
  EXPECT_EQ(oracle.metering(), (Metering{2, 1, 2}));
  EXPECT_TRUE(oracle.observe_direct({}).empty());
  EXPECT_EQ(oracle.metering(), (Metering{2, 1, 2}));
  const std::vector<Index> bad = {4};
  EXPECT_THROW(oracle.observe_direct(bad), std::out_of_range);
}

TEST(Oracle, RecordsBatches) {
  MeasurementOracle oracle(Signal({1, 2}));
  oracle.set_recording(true);
  oracle.measure({query({0}, {1})});
  ASSERT_EQ(oracle.recorded_batches().size(), 1u);
  EXPECT_EQ(oracle.recorded_batches()[0][0].indices, std::vector<Index>{0});
}

TEST(Evaluators, TopKTiesGoToLowerIndex) {
  const std::vector<double> x = {1, -3, 3, 0, 2};
  EXPECT_EQ(top_k_support(x, 2), (std::vector<Index>{1, 2}));
  EXPECT_EQ(top_k_support(x, 1), (std::vector<Index>{1}));
  EXPECT_EQ(top_k_support(x, 0), std::vector<Index>{});
  EXPECT_THROW(top_k_support(x, 6), std::invalid_argument);
}

TEST(Evaluators, TailError) {
  const std::vector<double> x = {3, 0, -1, 2, 0.5};
  EXPECT_DOUBLE_EQ(tail_error(x, 1), 0 + 1 + 4 + 0.25);
  EXPECT_DOUBLE_EQ(tail_error(x, 2), 1 + 0.25);
  EXPECT_DOUBLE_EQ(tail_error(x, 1, 1), 1 + 2 + 0.5);
  EXPECT_DOUBLE_EQ(tail_error(x, 5), 0.0);
  EXPECT_THROW(tail_error(x, 1, 3), std::invalid_argument);
}

TEST(Evaluators, HeavyHitters) {
  // Tail off the top 2 has squared mass 1 + 0.25 = 1.25.
  const std::vector<double> x = {3, 0, -1, 2, 0.5};
  EXPECT_EQ(heavy_hitters(x, 2, 1.0), (std::vector<Index>{0, 3}));
  EXPECT_EQ(heavy_hitters(x, 2, 5.0), (std::vector<Index>{0}));
  EXPECT_EQ(heavy_hitters(x, 2, 100.0), std::vector<Index>{});
}

TEST(Evaluators, RecoveryError) {
  const std::vector<double> x = {1, 2, 3};
  RecoveryResult r;
  r.support = {1};
  r.values = {2.5};
  EXPECT_DOUBLE_EQ(recovery_error(x, r), std::sqrt(1 + 0.25 + 9));
  EXPECT_DOUBLE_EQ(l2_distance(x, x), 0.0);
  EXPECT_EQ(r.dense(3), (std::vector<double>{0, 2.5, 0}));
}

TEST(SignalIo, RoundTripsExactly) {
  const Signal x({0.1, -1e-300, 3.141592653589793, 0.0, 12345678.9});
  std::stringstream ss;
  write_signal(ss, x);
  const Signal y = read_signal(ss);
  ASSERT_EQ(y.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(y[i], x[i]);
}

TEST(SignalIo, SkipsCommentsAndRejectsGarbage) {
  std::istringstream ok("# header\n1.5\n\n-2\n");
  const Signal x = read_signal(ok);
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x[1], -2.0);
  std::istringstream bad("1.0\nabc\n");
  EXPECT_THROW(read_signal(bad), std::invalid_argument);
}

TEST(Constants, ParseOverridesAndRejects) {
  std::istringstream in("# tuned\nC=12\nC'=0.5\n c_w = 6 \ndup_C=3\n");
  const Constants c = parse_constants(in);
  EXPECT_EQ(c.heavy_ratio, 12.0);
  EXPECT_EQ(c.shrink_scale, 0.5);
  EXPECT_EQ(c.sketch_width, 6.0);
  EXPECT_EQ(c.dup_repetitions, 3u);
  EXPECT_EQ(c.sketch_depth, Constants{}.sketch_depth);

  std::istringstream unknown("nope=1\n");
  EXPECT_THROW(parse_constants(unknown), std::invalid_argument);
  std::istringstream negative("C=-1\n");
  EXPECT_THROW(parse_constants(negative), std::invalid_argument);
  std::istringstream fractional("dup_C=1.5\n");
  EXPECT_THROW(parse_constants(fractional), std::invalid_argument);
}

TEST(Constants, WriteThenParseIsIdentity) {
  Constants c;
  c.subsample = 0.3;
  c.pass_slope = 1.25;
  std::stringstream ss;
  write_constants(ss, c);
  const Constants d = parse_constants(ss);
  EXPECT_EQ(d.subsample, 0.3);
  EXPECT_EQ(d.pass_slope, 1.25);
  EXPECT_EQ(d.heavy_ratio, c.heavy_ratio);
}

TEST(Random, SeedDerivationIsDeterministicAndSeparates) {
  EXPECT_EQ(derive_seed(1, tag("a"), 3), derive_seed(1, tag("a"), 3));
  EXPECT_NE(derive_seed(1, tag("a"), 3), derive_seed(1, tag("a"), 4));
  EXPECT_NE(derive_seed(1, tag("a")), derive_seed(1, tag("b")));
  EXPECT_NE(derive_seed(1, tag("a")), derive_seed(2, tag("a")));
}

TEST(Random, DrawsStayInRange) {
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(rng.below(7), 7u);
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = rng.uniform_open();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Random, GaussianMoments) {
  Rng rng(7);
  double sum = 0;
  double sq = 0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / kN, 0.0, 0.01);
  EXPECT_NEAR(sq / kN, 1.0, 0.02);
}

}  // namespace
}  // namespace adasparse
