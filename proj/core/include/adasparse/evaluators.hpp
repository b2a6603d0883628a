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

#ifndef ADASPARSE_EVALUATORS_HPP_
#define ADASPARSE_EVALUATORS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "adasparse/types.hpp"

// Ground-truth evaluators. These read the signal directly and are meant for
// the experiment harness and tests, never for recovery code.
namespace adasparse {

// H_k(x): the min(k, n) coordinates of largest magnitude, ties broken by the
// lower index. Returned sorted ascending.
std::vector<Index> top_k_support(std::span<const double> x, std::size_t k);

// Coordinates j in H_k(x) with x_j^2 >= eps * ||x off H_k(x)||_2^2.
std::vector<Index> heavy_hitters(std::span<const double> x, std::size_t k, double eps);

// ||x off H_k(x)||_p^p for p in {1, 2}; the p = 2 value is err(x, k).
double tail_error(std::span<const double> x, std::size_t k, int p = 2);

double l2_distance(std::span<const double> x, std::span<const double> y);

// ||x - estimate||_2 for a sparse estimate.
double recovery_error(std::span<const double> x, const RecoveryResult& result);

}  // namespace adasparse

#endif  // ADASPARSE_EVALUATORS_HPP_
