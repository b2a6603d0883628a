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
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adasparse/experiment.hpp"

namespace adasparse {
namespace {

ExperimentSpec small_spec(Scheme scheme) {
  ExperimentSpec s;
  s.scheme = scheme;
  s.n = 2048;
  s.k = 4;
  s.eps = 0.5;
  s.delta = 0.2;
  s.trials = 8;
  s.seed = 7;
  s.model = SignalModel::kGaussianTail;
  return s;
}

std::string csv(const ResultRow& row) {
  std::ostringstream out;
  emit_csv(out, std::span(&row, 1));
  return out.str();
}

TEST(Names, RoundTrip) {
  for (Scheme s : {Scheme::kOneSparse, Scheme::kKAdaptive, Scheme::kTwoRound,
                   Scheme::kCountSketch, Scheme::kDuplicate}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  for (StreamPattern p :
       {StreamPattern::kOneDuplicate, StreamPattern::kAllSame, StreamPattern::kRandom}) {
    EXPECT_EQ(parse_stream_pattern(to_string(p)), p);
  }
  for (SignalModel m : {SignalModel::kExactSparse, SignalModel::kFlatTail,
                        SignalModel::kGaussianTail, SignalModel::kPowerLaw}) {
    EXPECT_EQ(parse_signal_model(to_string(m)), m);
  }
  EXPECT_EQ(parse_signal_model("k-spike+gaussian-tail"), SignalModel::kGaussianTail);
  EXPECT_EQ(parse_signal_model("k-spike+flat-tail"), SignalModel::kFlatTail);
  EXPECT_THROW(parse_scheme("magic"), std::invalid_argument);
  EXPECT_THROW(parse_signal_model("noise"), std::invalid_argument);
}

TEST(Validate, RejectsOutOfRangeSpecs) {
  ExperimentSpec s = small_spec(Scheme::kKAdaptive);
  EXPECT_NO_THROW(validate(s));
  auto bad = [&](auto mutate) {
    ExperimentSpec t = s;
    mutate(t);
    EXPECT_THROW(validate(t), std::invalid_argument);
    EXPECT_THROW(run_experiment(t), std::invalid_argument);
  };
  bad([](ExperimentSpec& t) { t.trials = 0; });
  bad([](ExperimentSpec& t) { t.n = 1; });
  bad([](ExperimentSpec& t) { t.k = 0; });
  bad([](ExperimentSpec& t) { t.k = t.n + 1; });
  bad([](ExperimentSpec& t) { t.eps = 0.0; });
  bad([](ExperimentSpec& t) { t.eps = 2.0; });
  bad([](ExperimentSpec& t) { t.delta = 1.0; });
  bad([](ExperimentSpec& t) { t.spike_ratio = -1.0; });
  bad([](ExperimentSpec& t) { t.workers = 0; });
}

TEST(RunExperiment, ExactSparseAdaptiveIsPerfect) {
  ExperimentSpec s = small_spec(Scheme::kKAdaptive);
  s.model = SignalModel::kExactSparse;
  s.trials = 20;
  const ResultRow row = run_experiment(s);
  EXPECT_GE(row.success_rate, 0.8);
  EXPECT_LE(row.max_support, 2 * s.k);
  EXPECT_GT(row.mean_measurements, 0.0);
  EXPECT_GT(row.mean_direct, 0.0);
  EXPECT_EQ(row.unsound, 0u);
}

TEST(RunExperiment, EverySchemeRuns) {
  for (Scheme scheme : {Scheme::kOneSparse, Scheme::kKAdaptive, Scheme::kTwoRound,
                        Scheme::kCountSketch, Scheme::kDuplicate}) {
    ExperimentSpec s = small_spec(scheme);
    s.trials = 3;
    const ResultRow row = run_experiment(s);
    EXPECT_GE(row.success_rate, 0.0);
    EXPECT_LE(row.success_rate, 1.0);
    EXPECT_GT(row.mean_rounds, 0.0) << to_string(scheme);
    if (scheme == Scheme::kTwoRound) {
      EXPECT_EQ(row.mean_rounds, 2.0);
    }
    if (scheme == Scheme::kCountSketch) {
      EXPECT_EQ(row.mean_rounds, 1.0);
    }
  }
}

TEST(RunExperiment, DeterministicAcrossRunsAndWorkers) {
  ExperimentSpec s = small_spec(Scheme::kKAdaptive);
  s.trials = 12;
  const std::string one = csv(run_experiment(s));
  EXPECT_EQ(one, csv(run_experiment(s)));
  s.workers = 4;
  EXPECT_EQ(one, csv(run_experiment(s)));
  s.seed = 8;
  EXPECT_NE(one, csv(run_experiment(s)));
}

TEST(Csv, HeaderAndRowShape) {
  ExperimentSpec s = small_spec(Scheme::kCountSketch);
  s.trials = 2;
  const std::string text = csv(run_experiment(s));
  std::istringstream lines(text);
  std::string header;
  std::string row;
  std::string extra;
  ASSERT_TRUE(std::getline(lines, header));
  ASSERT_TRUE(std::getline(lines, row));
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header, csv_header());
  EXPECT_EQ(std::count(header.begin(), header.end(), ','),
            std::count(row.begin(), row.end(), ','));
  EXPECT_EQ(row.rfind("countsketch,spike-gaussian,2048,4,0.500000,0.200000,2,7,", 0), 0u);
  EXPECT_THROW(emit_csv(std::cout, {}), std::invalid_argument);
}

TEST(DuplicateTrials, ReportPassesAndSoundness) {
  ExperimentSpec s = small_spec(Scheme::kDuplicate);
  s.n = 1024;
  s.delta = 0.25;
  s.trials = 10;
  for (StreamPattern p :
       {StreamPattern::kOneDuplicate, StreamPattern::kAllSame, StreamPattern::kRandom}) {
    s.stream = p;
    const ResultRow row = run_experiment(s);
    EXPECT_EQ(row.unsound, 0u);
    EXPECT_GE(row.success_rate, 0.7) << to_string(p);
    EXPECT_GT(row.mean_rounds, 1.0);
  }
}

}  // namespace
}  // namespace adasparse
