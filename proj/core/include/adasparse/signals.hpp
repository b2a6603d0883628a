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

#ifndef ADASPARSE_SIGNALS_HPP_
#define ADASPARSE_SIGNALS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adasparse/types.hpp"

namespace adasparse {

enum class SignalModel {
  kExactSparse,   // k spikes, zero elsewhere
  kFlatTail,      // k spikes plus +-c on every other coordinate
  kGaussianTail,  // k spikes plus i.i.d. Gaussian noise elsewhere
  kPowerLaw,      // +-(rank)^-alpha at randomly permuted positions
};

// "exact-sparse", "spike-flat", "spike-gaussian", "power-law".
std::string to_string(SignalModel model);
// Also accepts "k-spike+flat-tail" and "k-spike+gaussian-tail".
SignalModel parse_signal_model(std::string_view name);

struct SignalSpec {
  SignalModel model = SignalModel::kGaussianTail;
  std::uint64_t n = 1024;
  std::uint64_t k = 1;
  // Spike magnitude; tails are scaled to unit l2 norm.
  double spike_ratio = 10.0;
  double alpha = 1.0;
};

// k distinct positions, uniformly at random, sorted.
std::vector<Index> random_positions(std::uint64_t n, std::uint64_t k, std::uint64_t seed);

Signal generate_signal(const SignalSpec& spec, std::uint64_t seed);

}  // namespace adasparse

#endif  // ADASPARSE_SIGNALS_HPP_
