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

#include "adasparse/countsketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "adasparse/random.hpp"

namespace adasparse {

CountSketchParams countsketch_params(std::size_t k, double eps, double delta,
                                     std::uint64_t dimension, const Constants& constants) {
  if (k < 1) throw std::invalid_argument("countsketch_params: k must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("countsketch_params: eps must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("countsketch_params: delta in (0,1]");
  }
  CountSketchParams p;
  p.width = static_cast<std::size_t>(
      std::max(1.0, std::ceil(constants.sketch_width * static_cast<double>(k) / eps)));
  p.depth = static_cast<std::size_t>(std::max(
      1.0, std::ceil(constants.sketch_depth *
                     std::log(static_cast<double>(std::max<std::uint64_t>(dimension, 2)) / delta))));
  p.output_size = 2 * k;
  return p;
}

CountSketch::CountSketch(std::vector<Index> coordinates, CountSketchParams params,
                         std::uint64_t ambient, std::uint64_t seed)
    : coordinates_(std::move(coordinates)), params_(params) {
  if (params_.width < 1 || params_.depth < 1) {
    throw std::invalid_argument("CountSketch: width and depth must be >= 1");
  }
  buckets_.reserve(params_.depth);
  signs_.reserve(params_.depth);
  for (std::size_t r = 0; r < params_.depth; ++r) {
    buckets_.emplace_back(2, ambient, params_.width, derive_seed(seed, tag("cs.h"), r));
    signs_.emplace_back(2, ambient, derive_seed(seed, tag("cs.s"), r));
  }
  for (Index i : coordinates_) {
    if (i >= ambient) throw std::out_of_range("CountSketch: coordinate outside ambient domain");
  }
}

void CountSketch::append_queries(QueryBatch& batch) const {
  const std::size_t base = batch.size();
  batch.resize(base + measurement_count());
  for (std::size_t r = 0; r < params_.depth; ++r) {
    std::vector<std::size_t> load(params_.width, 0);
    std::vector<std::uint64_t> where(coordinates_.size());
    for (std::size_t c = 0; c < coordinates_.size(); ++c) {
      where[c] = buckets_[r].eval_unchecked(coordinates_[c]);
      ++load[where[c]];
    }
    LinearQuery* row = &batch[base + r * params_.width];
    for (std::size_t b = 0; b < params_.width; ++b) row[b].reserve(load[b]);
    for (std::size_t c = 0; c < coordinates_.size(); ++c) {
      row[where[c]].add(coordinates_[c], signs_[r].eval_unchecked(coordinates_[c]));
    }
  }
}

std::vector<double> CountSketch::estimates(std::span<const double> values) const {
  if (values.size() != measurement_count()) {
    throw std::invalid_argument("CountSketch: wrong number of measurement values");
  }
  std::vector<double> out(coordinates_.size());
  std::vector<double> rows(params_.depth);
  const std::size_t mid = params_.depth / 2;
  for (std::size_t c = 0; c < coordinates_.size(); ++c) {
    const Index i = coordinates_[c];
    for (std::size_t r = 0; r < params_.depth; ++r) {
      rows[r] = signs_[r].eval_unchecked(i) *
                values[r * params_.width + buckets_[r].eval_unchecked(i)];
    }
    std::nth_element(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(mid), rows.end());
    double median = rows[mid];
    if (params_.depth % 2 == 0) {
      const double below = *std::max_element(rows.begin(),
                                             rows.begin() + static_cast<std::ptrdiff_t>(mid));
      median = 0.5 * (median + below);
    }
    out[c] = median;
  }
  return out;
}

RecoveryResult CountSketch::decode(std::span<const double> values, bool keep_zeros) const {
  const std::vector<double> est = estimates(values);
  std::vector<std::size_t> order;
  order.reserve(est.size());
  for (std::size_t c = 0; c < est.size(); ++c) {
    if (keep_zeros || est[c] != 0.0) order.push_back(c);
  }
  auto heavier = [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(est[a]);
    const double mb = std::abs(est[b]);
    return ma != mb ? ma > mb : coordinates_[a] < coordinates_[b];
  };
  const std::size_t keep = std::min(params_.output_size, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                    order.end(), heavier);
  order.resize(keep);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return coordinates_[a] < coordinates_[b]; });
  RecoveryResult out;
  for (std::size_t c : order) {
    out.support.push_back(coordinates_[c]);
    out.values.push_back(est[c]);
  }
  return out;
}

RecoveryResult countsketch_recover(Measurer& measurer, std::size_t k, double eps, double delta,
                                   std::uint64_t seed, const Constants& constants) {
  const std::uint64_t n = measurer.dimension();
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  const CountSketch sketch(std::move(all), countsketch_params(k, eps, delta, n, constants), n,
                           seed);
  QueryBatch batch;
  sketch.append_queries(batch);
  const std::vector<double> values = measurer.measure(batch);
  RecoveryResult result = sketch.decode(values);
  if (const auto* oracle = dynamic_cast<const MeasurementOracle*>(&measurer)) {
    result.metering = oracle->metering();
  } else {
    result.metering = {batch.size(), 1, 0};
  }
  return result;
}

}  // namespace adasparse
