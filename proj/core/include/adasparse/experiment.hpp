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

#ifndef ADASPARSE_EXPERIMENT_HPP_
#define ADASPARSE_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "adasparse/constants.hpp"
#include "adasparse/signals.hpp"

namespace adasparse {

enum class Scheme { kOneSparse, kKAdaptive, kTwoRound, kCountSketch, kDuplicate };

std::string to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

// Stream fixtures for the duplicate scheme.
enum class StreamPattern { kOneDuplicate, kAllSame, kRandom };
std::string to_string(StreamPattern pattern);
StreamPattern parse_stream_pattern(std::string_view name);

struct ExperimentSpec {
  Scheme scheme = Scheme::kKAdaptive;
  std::uint64_t n = 4096;
  std::uint64_t k = 1;
  double eps = 0.5;
  double delta = 0.2;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  SignalModel model = SignalModel::kGaussianTail;
  double spike_ratio = 10.0;
  double alpha = 1.0;
  // Used only by the duplicate scheme; streams are always shuffled.
  StreamPattern stream = StreamPattern::kOneDuplicate;
  unsigned workers = 1;
  Constants constants;
};

// Throws std::invalid_argument when the spec violates a scheme precondition.
void validate(const ExperimentSpec& spec);

// Outcome of a single trial.
struct TrialOutcome {
  bool success = false;
  bool unsound = false;
  double measurements = 0.0;
  double rounds = 0.0;
  double direct = 0.0;
  double error_ratio = 0.0;
  std::uint64_t support = 0;
};

TrialOutcome run_trial(const ExperimentSpec& spec, std::uint64_t trial);

// Aggregate over all trials. For the duplicate scheme, rounds are passes and
// measurements are the peak working-state words.
struct ResultRow {
  ExperimentSpec spec;
  double success_rate = 0.0;
  double mean_measurements = 0.0;
  double median_measurements = 0.0;
  double mean_rounds = 0.0;
  double median_rounds = 0.0;
  double mean_direct = 0.0;
  double mean_error_ratio = 0.0;
  std::uint64_t max_support = 0;
  std::uint64_t unsound = 0;
};

// Trials run on spec.workers threads; results are aggregated in trial order,
// so the row depends only on the spec.
ResultRow run_experiment(const ExperimentSpec& spec);

// Column names, in output order.
std::string csv_header();
void emit_csv(std::ostream& out, std::span<const ResultRow> rows);
void emit_csv(const std::filesystem::path& path, std::span<const ResultRow> rows);

}  // namespace adasparse

#endif  // ADASPARSE_EXPERIMENT_HPP_
