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

#include "adasparse/evaluators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace adasparse {

std::vector<Index> top_k_support(std::span<const double> x, std::size_t k) {
  if (k > x.size()) throw std::invalid_argument("top_k_support: k exceeds dimension");
  std::vector<Index> order(x.size());
  std::iota(order.begin(), order.end(), Index{0});
  auto heavier = [&](Index a, Index b) {
    const double ma = std::abs(x[a]);
    const double mb = std::abs(x[b]);
    return ma != mb ? ma > mb : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), heavier);
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

namespace {

std::vector<char> membership(std::size_t n, const std::vector<Index>& support) {
  std::vector<char> in(n, 0);
  for (Index i : support) in[i] = 1;
  return in;
}

}  // namespace

std::vector<Index> heavy_hitters(std::span<const double> x, std::size_t k, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("heavy_hitters: eps must be positive");
  const std::vector<Index> top = top_k_support(x, k);
  const double tail = tail_error(x, k, 2);
  std::vector<Index> out;
  for (Index j : top) {
    if (x[j] * x[j] >= eps * tail) out.push_back(j);
  }
  return out;
}

double tail_error(std::span<const double> x, std::size_t k, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("tail_error: p must be 1 or 2");
  const std::vector<char> in = membership(x.size(), top_k_support(x, k));
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (in[i]) continue;
    acc += p == 1 ? std::abs(x[i]) : x[i] * x[i];
  }
  return acc;
}

double l2_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("l2_distance: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double recovery_error(std::span<const double> x, const RecoveryResult& result) {
  return l2_distance(x, result.dense(x.size()));
}

}  // namespace adasparse
