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

#include "adasparse/ksparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "adasparse/random.hpp"

namespace adasparse {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

double pow2_neg(std::uint64_t e) {
  return e > 2000 ? 0.0 : std::ldexp(1.0, -static_cast<int>(e));
}

// 2^e > k, evaluated without rounding.
bool pow2_exceeds(std::uint64_t e, std::uint64_t k) {
  return e >= 64 || (std::uint64_t{1} << e) > k;
}

std::vector<Index> largest_observed(const std::map<Index, double>& observed,
                                    const std::vector<Index>& candidates, std::size_t budget) {
  std::vector<Index> order;
  for (Index i : candidates) {
    if (observed.at(i) != 0.0) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(observed.at(a));
    const double mb = std::abs(observed.at(b));
    return ma != mb ? ma > mb : a < b;
  });
  if (order.size() > budget) order.resize(budget);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

RoundSchedule::RoundSchedule(std::uint64_t k, double eps, double delta)
    : k_(k), eps_(eps), delta_(delta) {
  if (k < 1) throw std::invalid_argument("RoundSchedule: k must be >= 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("RoundSchedule: eps in (0,1]");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("RoundSchedule: delta in (0,1)");
  }
  std::uint64_t f_exp = 5;
  std::uint64_t deficit = 0;
  levels_.reserve(4);
  for (std::size_t i = 0;; ++i) {
    RecursionLevel level;
    level.eps = eps / (std::numbers::e * std::ldexp(1.0, static_cast<int>(i)));
    level.delta = std::ldexp(delta, -static_cast<int>(i + 1));
    level.f_exponent = f_exp;
    level.k_deficit = deficit;
    level.f = pow2_neg(f_exp);
    level.k = deficit > 2000 ? 0.0
                             : std::ldexp(static_cast<double>(k), -static_cast<int>(deficit));
    levels_.push_back(level);
    if (pow2_exceeds(f_exp, k)) break;
    deficit = saturating_add(deficit, f_exp);
    // 1 / (4^(i+1) f_i) = 2^(f_exp - 2(i+1)).
    const std::uint64_t shift = 2 * (i + 1);
    f_exp = f_exp - shift >= 64 ? kSaturated : std::uint64_t{1} << (f_exp - shift);
  }
}

std::size_t RoundSchedule::active_levels() const {
  std::size_t n = 0;
  while (n < levels_.size() && levels_[n].k >= 1.0) ++n;
  return n;
}

std::size_t RoundSchedule::budget(const RecursionLevel& level) {
  return static_cast<std::size_t>(std::floor(level.k));
}

std::size_t RoundSchedule::samples(const RecursionLevel& level, double samples_constant) {
  const double log_inv = static_cast<double>(level.f_exponent) * std::numbers::ln2 -
                         std::log(level.delta);
  return static_cast<std::size_t>(std::ceil(samples_constant * (level.k / level.eps) * log_inv));
}

bool RoundSchedule::delta_sum_below_delta() const {
  double sum = 0.0;
  for (const auto& level : levels_) sum += level.delta;
  return sum < delta_;
}

bool RoundSchedule::eps_product_within() const {
  long double product = 1.0L;
  for (const auto& level : levels_) product *= 1.0L + static_cast<long double>(level.eps);
  return product <= 1.0L + 2.0L * static_cast<long double>(eps_);
}

bool RoundSchedule::last_f_below_inverse_k() const {
  return pow2_exceeds(levels_.back().f_exponent, k_);
}

bool RoundSchedule::sparsity_sum_within() const {
  // sum_i 2^-deficit_i <= 2 is exact in binary floating point.
  double sum = 0.0;
  for (const auto& level : levels_) sum += pow2_neg(level.k_deficit);
  return sum <= 2.0;
}

std::vector<Index> subsample(std::span<const Index> active, double p, std::uint64_t seed) {
  std::vector<Index> out;
  if (!(p > 0.0)) return out;
  if (p >= 1.0) return {active.begin(), active.end()};
  Rng rng(seed);
  const double log_keep_fail = std::log1p(-p);
  const double n = static_cast<double>(active.size());
  double pos = 0.0;
  for (;;) {
    pos += std::floor(std::log(rng.uniform_open()) / log_keep_fail);
    if (pos >= n) break;
    out.push_back(active[static_cast<std::size_t>(pos)]);
    pos += 1.0;
  }
  return out;
}

double subsample_rate(double sparsity, const Constants& constants) {
  return std::min(1.0, 1.0 / (4.0 * constants.subsample * constants.subsample * sparsity));
}

LocateOutcome sample_heavy(Measurer& measurer, std::span<const Index> active,
                           double sparsity, std::uint64_t seed, const Constants& constants) {
  if (!(sparsity >= 1.0)) throw std::invalid_argument("sample_heavy: sparsity must be >= 1");
  std::vector<Index> sample =
      subsample(active, subsample_rate(sparsity, constants), derive_seed(seed, tag("sample")));
  if (sample.empty()) return {std::nullopt, Failure::kEmpty};
  const OneSparseOutcome out = recover_one_sparse(
      measurer, std::move(sample), constants.shrink_scale, derive_seed(seed, tag("search")));
  return {out.index, out.failure};
}

PartialOutcome recover_partial(MeasurementOracle& oracle, std::span<const Index> active,
                               double k, double eps, double f, double delta,
                               std::uint64_t seed, const Constants& constants) {
  if (!(k >= 1.0)) throw std::invalid_argument("recover_partial: k must be >= 1");
  if (!(f > 0.0 && f < 1.0)) throw std::invalid_argument("recover_partial: f in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("recover_partial: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("recover_partial: delta in (0,1)");
  }
  PartialOutcome out;
  const double sparsity = std::max(1.0, k / eps);
  out.samples = static_cast<std::size_t>(
      std::ceil(constants.samples * sparsity * (-std::log(f) - std::log(delta))));
  const double rate = subsample_rate(sparsity, constants);

  std::vector<OneSparseSearch> searches;
  searches.reserve(out.samples);
  for (std::size_t t = 0; t < out.samples; ++t) {
    std::vector<Index> sample = subsample(active, rate, derive_seed(seed, tag("sample"), t));
    if (sample.empty()) continue;
    searches.emplace_back(std::move(sample), oracle.dimension(), constants.shrink_scale,
                          derive_seed(seed, tag("search"), t));
  }
  out.rounds = run_lockstep(oracle, searches);

  std::vector<Index> candidates;
  for (const auto& search : searches) {
    const OneSparseOutcome o = search.outcome();
    if (o.ok()) {
      candidates.push_back(*o.index);
      ++out.located;
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (!candidates.empty()) {
    out.observed = oracle.observe_direct(candidates);
    ++out.rounds;
  }
  out.kept = largest_observed(out.observed, candidates, static_cast<std::size_t>(std::floor(k)));
  return out;
}

RecoveryResult recover_k_sparse(MeasurementOracle& oracle, std::uint64_t k, double eps,
                                double delta, std::uint64_t seed, const Constants& constants,
                                KSparseTrace* trace) {
  const std::uint64_t n = oracle.dimension();
  if (k < 1 || k > n) throw std::invalid_argument("recover_k_sparse: need 1 <= k <= n");
  const RoundSchedule schedule(k, eps, delta);

  std::vector<char> in_output(n, 0);
  std::vector<Index> residual(n);
  for (std::uint64_t i = 0; i < n; ++i) residual[i] = static_cast<Index>(i);
  std::map<Index, double> observed;

  for (std::size_t i = 0; i < schedule.active_levels(); ++i) {
    const RecursionLevel& level = schedule.levels()[i];
    PartialOutcome part = recover_partial(oracle, residual, level.k, level.eps, level.f,
                                          level.delta, derive_seed(seed, tag("level"), i),
                                          constants);
    for (Index j : part.kept) in_output[j] = 1;
    observed.merge(part.observed);
    std::erase_if(residual, [&](Index j) { return in_output[j] != 0; });
    if (trace) {
      trace->kept_per_level.push_back(part.kept);
      trace->rounds_per_level.push_back(part.rounds);
      trace->samples_per_level.push_back(part.samples);
    }
  }

  RecoveryResult result;
  for (std::uint64_t j = 0; j < n; ++j) {
    if (!in_output[j]) continue;
    result.support.push_back(static_cast<Index>(j));
    result.values.push_back(observed.at(static_cast<Index>(j)));
  }
  result.metering = oracle.metering();
  return result;
}

}  // namespace adasparse
