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

#include "adasparse/onesparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adasparse/random.hpp"

namespace adasparse {
namespace {

// Rounds b/a - offset to a position in [1, limit].
std::variant<std::uint64_t, Failure> decode_position(double a, double b, double offset,
                                                     std::uint64_t limit,
                                                     std::size_t support) {
  if (!(std::abs(a) > kNoSignalGuard * std::sqrt(static_cast<double>(support)))) {
    return Failure::kNoSignal;
  }
  const double v = b / a - offset;
  if (!(v >= 0.5 && v < static_cast<double>(limit) + 0.5)) return Failure::kOutOfRange;
  return static_cast<std::uint64_t>(std::floor(v + 0.5));
}

}  // namespace

ShrinkParams ShrinkParams::from(double noise_factor, double failure, double scale) {
  if (!(noise_factor >= 1.0) || !(failure > 0.0 && failure < 1.0) || !(scale > 0.0)) {
    throw std::invalid_argument("ShrinkParams: need B >= 1, delta in (0,1), scale > 0");
  }
  const double d = std::ceil(scale * 4.0 * noise_factor * noise_factor / failure);
  const double capped = std::clamp(d, 2.0, static_cast<double>(kMaxBuckets));
  return {noise_factor, failure, static_cast<std::uint64_t>(capped)};
}

OneSparseSchedule::OneSparseSchedule(std::uint64_t n) : length_(0) {
  const double target = n <= 1 ? 0.0 : std::log2(static_cast<double>(n));
  while (log2_noise_factor(length_) < target) ++length_;
}

double OneSparseSchedule::log2_noise_factor(std::size_t i) {
  return std::pow(1.5, static_cast<double>(i));
}

double OneSparseSchedule::noise_factor(std::size_t i) {
  return std::exp2(log2_noise_factor(i));
}

double OneSparseSchedule::failure(std::size_t i) {
  return std::ldexp(0.25, -static_cast<int>(i));
}

ShrinkParams OneSparseSchedule::params(std::size_t i, double scale) const {
  // Past ~2^40 buckets the bound saturates; avoid overflow in B^2.
  const double log2_b = log2_noise_factor(i);
  if (log2_b > 40.0) return {std::exp2(40.0), failure(i), kMaxBuckets};
  return ShrinkParams::from(noise_factor(i), failure(i), scale);
}

LocateOutcome locate_pair(Measurer& measurer, std::span<const Index> active,
                          std::uint64_t sign_seed) {
  if (active.empty()) throw std::invalid_argument("locate_pair: active set is empty");
  const SignHash s(2, measurer.dimension(), sign_seed);
  const double offset = static_cast<double>(active.size());
  LinearQuery qa;
  LinearQuery qb;
  qa.reserve(active.size());
  qb.reserve(active.size());
  for (std::size_t pos = 0; pos < active.size(); ++pos) {
    const double sign = s(active[pos]);
    qa.add(active[pos], sign);
    qb.add(active[pos], (offset + static_cast<double>(pos + 1)) * sign);
  }
  QueryBatch batch;
  batch.push_back(std::move(qa));
  batch.push_back(std::move(qb));
  const std::vector<double> v = measurer.measure(batch);
  const auto decoded = decode_position(v[0], v[1], offset, active.size(), active.size());
  if (const Failure* f = std::get_if<Failure>(&decoded)) return {std::nullopt, *f};
  return {active[std::get<std::uint64_t>(decoded) - 1], Failure::kNone};
}

ShrinkStep::ShrinkStep(std::uint64_t ambient, std::uint64_t buckets, std::uint64_t seed)
    : buckets_(buckets),
      h_(2, ambient, buckets, derive_seed(seed, tag("shrink.h"))),
      s1_(2, ambient, derive_seed(seed, tag("shrink.s1"))),
      s2_(2, buckets, derive_seed(seed, tag("shrink.s2"))) {
  if (buckets < 2) throw std::invalid_argument("ShrinkStep: need at least 2 buckets");
}

std::pair<LinearQuery, LinearQuery> ShrinkStep::queries(std::span<const Index> active) const {
  LinearQuery qa;
  LinearQuery qb;
  qa.reserve(active.size());
  qb.reserve(active.size());
  for (Index i : active) {
    if (i >= h_.domain()) throw std::out_of_range("ShrinkStep: index outside ambient domain");
    const auto [ca, cb] = coefficients(i);
    qa.add(i, ca);
    qb.add(i, cb);
  }
  return {std::move(qa), std::move(qb)};
}

std::variant<std::uint64_t, Failure> ShrinkStep::decode(double a, double b,
                                                        std::size_t active_size) const {
  const auto pos = decode_position(a, b, static_cast<double>(buckets_), buckets_, active_size);
  if (const Failure* f = std::get_if<Failure>(&pos)) return *f;
  return std::get<std::uint64_t>(pos) - 1;
}

ShrinkOutcome shrink(Measurer& measurer, std::span<const Index> active,
                     const ShrinkParams& params, std::uint64_t seed) {
  if (active.empty()) throw std::invalid_argument("shrink: active set is empty");
  const ShrinkStep step(measurer.dimension(), params.buckets, seed);
  auto [qa, qb] = step.queries(active);
  QueryBatch batch;
  batch.push_back(std::move(qa));
  batch.push_back(std::move(qb));
  const std::vector<double> v = measurer.measure(batch);
  const auto decoded = step.decode(v[0], v[1], active.size());
  if (const Failure* f = std::get_if<Failure>(&decoded)) return {{}, *f};
  const std::uint64_t kept = std::get<std::uint64_t>(decoded);
  ShrinkOutcome out;
  for (Index i : active) {
    if (step.bucket(i) == kept) out.survivors.push_back(i);
  }
  if (out.survivors.empty()) out.failure = Failure::kEmpty;
  return out;
}

OneSparseSearch::OneSparseSearch(std::vector<Index> active, std::uint64_t ambient,
                                 double shrink_scale, std::uint64_t seed)
    : ambient_(ambient),
      shrink_scale_(shrink_scale),
      seed_(seed),
      schedule_(active.size()),
      active_(std::move(active)) {
  if (active_.empty()) throw std::invalid_argument("OneSparseSearch: active set is empty");
  settle();
}

void OneSparseSearch::fail(Failure why) {
  failure_ = why;
  finished_ = true;
  pending_shrink_.reset();
  pending_direct_.reset();
}

void OneSparseSearch::settle() {
  pending_shrink_.reset();
  pending_direct_.reset();
  if (active_.empty()) return fail(Failure::kEmpty);
  if (active_.size() == 1) {
    finished_ = true;
    return;
  }
  if (active_.size() == 2) {
    pending_direct_ = Direct{active_[0], active_[1]};
    return;
  }
  if (step_ >= std::max<std::size_t>(schedule_.length(), 1)) {
    return fail(Failure::kNotIsolated);
  }
  const ShrinkParams params = schedule_.params(step_, shrink_scale_);
  pending_shrink_.emplace(ambient_, params.buckets, derive_seed(seed_, tag("step"), step_));
}

std::pair<LinearQuery, LinearQuery> OneSparseSearch::pending_queries() const {
  if (finished_) throw std::logic_error("OneSparseSearch: no pending queries");
  if (pending_direct_) {
    LinearQuery first;
    LinearQuery second;
    first.add(pending_direct_->first, 1.0);
    second.add(pending_direct_->second, 1.0);
    return {std::move(first), std::move(second)};
  }
  return pending_shrink_->queries(active_);
}

std::optional<std::pair<double, double>> OneSparseSearch::coefficients(Index i) const {
  if (finished_) return std::nullopt;
  for (const auto& [step, kept] : kept_) {
    if (step.bucket(i) != kept) return std::nullopt;
  }
  if (pending_direct_) {
    if (i == pending_direct_->first) return std::pair{1.0, 0.0};
    if (i == pending_direct_->second) return std::pair{0.0, 1.0};
    return std::nullopt;
  }
  return pending_shrink_->coefficients(i);
}

void OneSparseSearch::advance(double a, double b) {
  if (finished_) throw std::logic_error("OneSparseSearch: advanced after finishing");
  ++rounds_;
  if (pending_direct_) {
    const Direct d = *pending_direct_;
    if (a == 0.0 && b == 0.0) return fail(Failure::kNoSignal);
    active_ = {std::abs(b) > std::abs(a) ? d.second : d.first};
    pending_direct_.reset();
    finished_ = true;
    return;
  }
  const ShrinkStep& step = *pending_shrink_;
  const auto decoded = step.decode(a, b, active_.size());
  if (const Failure* f = std::get_if<Failure>(&decoded)) return fail(*f);
  const std::uint64_t kept = std::get<std::uint64_t>(decoded);
  std::erase_if(active_, [&](Index i) { return step.bucket(i) != kept; });
  kept_.emplace_back(step, kept);
  ++step_;
  settle();
}

OneSparseOutcome OneSparseSearch::outcome() const {
  OneSparseOutcome out;
  out.rounds = rounds_;
  out.survivors = active_;
  if (!finished_) {
    out.failure = Failure::kNotIsolated;
    return out;
  }
  out.failure = failure_;
  if (failure_ == Failure::kNone && active_.size() == 1) out.index = active_.front();
  return out;
}

std::size_t run_lockstep(Measurer& measurer, std::span<OneSparseSearch> searches) {
  std::size_t rounds = 0;
  std::vector<std::size_t> live;
  for (;;) {
    live.clear();
    QueryBatch batch;
    for (std::size_t s = 0; s < searches.size(); ++s) {
      if (searches[s].finished()) continue;
      auto [qa, qb] = searches[s].pending_queries();
      batch.push_back(std::move(qa));
      batch.push_back(std::move(qb));
      live.push_back(s);
    }
    if (live.empty()) return rounds;
    const std::vector<double> values = measurer.measure(batch);
    ++rounds;
    for (std::size_t t = 0; t < live.size(); ++t) {
      searches[live[t]].advance(values[2 * t], values[2 * t + 1]);
    }
  }
}

OneSparseOutcome recover_one_sparse(Measurer& measurer, std::vector<Index> active,
                                    double shrink_scale, std::uint64_t seed) {
  OneSparseSearch search(std::move(active), measurer.dimension(), shrink_scale, seed);
  run_lockstep(measurer, std::span(&search, 1));
  return search.outcome();
}

}  // namespace adasparse
