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

#include "adasparse/signals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "adasparse/random.hpp"

namespace adasparse {
namespace {

void scale_to_unit(std::vector<double>& x, const std::vector<char>& is_spike) {
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_spike[i]) sq += x[i] * x[i];
  }
  if (sq == 0.0) return;
  const double s = 1.0 / std::sqrt(sq);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_spike[i]) x[i] *= s;
  }
}

}  // namespace

std::string to_string(SignalModel model) {
  switch (model) {
    case SignalModel::kExactSparse: return "exact-sparse";
    case SignalModel::kFlatTail: return "spike-flat";
    case SignalModel::kGaussianTail: return "spike-gaussian";
    case SignalModel::kPowerLaw: return "power-law";
  }
  return "unknown";
}

SignalModel parse_signal_model(std::string_view name) {
  if (name == "exact-sparse") return SignalModel::kExactSparse;
  if (name == "spike-flat" || name == "k-spike+flat-tail") return SignalModel::kFlatTail;
  if (name == "spike-gaussian" || name == "k-spike+gaussian-tail") {
    return SignalModel::kGaussianTail;
  }
  if (name == "power-law") return SignalModel::kPowerLaw;
  throw std::invalid_argument("unknown signal model: " + std::string(name));
}

std::vector<Index> random_positions(std::uint64_t n, std::uint64_t k, std::uint64_t seed) {
  if (k > n) throw std::invalid_argument("random_positions: k > n");
  // Floyd's sampling: k draws, no rejection loop.
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  std::vector<Index> out;
  out.reserve(k);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(static_cast<Index>(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Signal generate_signal(const SignalSpec& spec, std::uint64_t seed) {
  if (spec.n < 1) throw std::invalid_argument("generate_signal: n must be >= 1");
  if (spec.k > spec.n) throw std::invalid_argument("generate_signal: k > n");
  if (!(spec.spike_ratio > 0.0) || !std::isfinite(spec.spike_ratio)) {
    throw std::invalid_argument("generate_signal: spike ratio must be positive");
  }
  const std::size_t n = spec.n;
  std::vector<double> x(n, 0.0);
  Rng rng(derive_seed(seed, tag("values")));

  if (spec.model == SignalModel::kPowerLaw) {
    if (!(spec.alpha > 0.0)) throw std::invalid_argument("generate_signal: alpha must be > 0");
    std::vector<Index> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Index>(i);
    Rng shuffle(derive_seed(seed, tag("perm")));
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[shuffle.below(i)]);
    for (std::size_t r = 0; r < n; ++r) {
      x[perm[r]] = rng.sign() * std::pow(static_cast<double>(r + 1), -spec.alpha);
    }
    return Signal(std::move(x));
  }

  std::vector<char> is_spike(n, 0);
  for (Index p : random_positions(spec.n, spec.k, derive_seed(seed, tag("spikes")))) {
    is_spike[p] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_spike[i]) {
      x[i] = rng.sign() * spec.spike_ratio;
    } else if (spec.model == SignalModel::kFlatTail) {
      x[i] = rng.sign();
    } else if (spec.model == SignalModel::kGaussianTail) {
      x[i] = rng.gaussian();
    }
  }
  if (spec.model != SignalModel::kExactSparse) scale_to_unit(x, is_spike);
  return Signal(std::move(x));
}

}  // namespace adasparse
