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

#ifndef ADASPARSE_KSPARSE_HPP_
#define ADASPARSE_KSPARSE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "adasparse/constants.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/types.hpp"

namespace adasparse {

// One level of the sparsity recursion. f_i = 2^-f_exponent and
// k_i = k * 2^-k_deficit are kept as exact powers of two; exponents saturate
// at UINT64_MAX, which stands for "effectively zero".
struct RecursionLevel {
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t f_exponent = 0;
  std::uint64_t k_deficit = 0;
  double f = 0.0;
  double k = 0.0;
};

// eps_i = eps / (e 2^i), delta_i = delta / 2^(i+1), f_0 = 1/32,
// f_{i+1} = 2^(-1 / (4^(i+1) f_i)), k_i = k prod_{j<i} f_j.
// The length r is the least r with f_{r-1} < 1/k, so k_r < 1. Levels with
// k_i < 1 carry no budget and are skipped at run time.
class RoundSchedule {
 public:
  RoundSchedule(std::uint64_t k, double eps, double delta);

  std::uint64_t k() const { return k_; }
  double eps() const { return eps_; }
  double delta() const { return delta_; }
  std::size_t length() const { return levels_.size(); }
  std::span<const RecursionLevel> levels() const { return levels_; }

  // Number of leading levels with k_i >= 1.
  std::size_t active_levels() const;
  // floor(k_i): how many indices level i may keep.
  static std::size_t budget(const RecursionLevel& level);
  // Subsample count m_i = ceil(c_m (k_i/eps_i) ln(1/(f_i delta_i))).
  static std::size_t samples(const RecursionLevel& level, double samples_constant);

  // Exact checks of the schedule identities.
  bool delta_sum_below_delta() const;        // sum delta_i < delta
  bool eps_product_within() const;           // prod (1 + eps_i) <= 1 + 2 eps
  bool last_f_below_inverse_k() const;       // f_{r-1} < 1/k
  bool sparsity_sum_within() const;          // sum k_i <= 2k

 private:
  std::uint64_t k_;
  double eps_;
  double delta_;
  std::vector<RecursionLevel> levels_;
};

// Keeps each element of `active` independently with probability p, using
// geometric skips so the cost is proportional to the sample size.
std::vector<Index> subsample(std::span<const Index> active, double p, std::uint64_t seed);

// p = 1 / (4 C_sub^2 k), clamped to 1.
double subsample_rate(double sparsity, const Constants& constants);

// Subsamples `active` at subsample_rate(sparsity) and runs adaptive 1-sparse
// recovery on the sample. The returned index is unverified.
LocateOutcome sample_heavy(Measurer& measurer, std::span<const Index> active,
                           double sparsity, std::uint64_t seed, const Constants& constants);

struct PartialOutcome {
  // At most floor(k) indices with the largest observed magnitudes.
  std::vector<Index> kept;
  // Every directly observed candidate and its exact value.
  std::map<Index, double> observed;
  std::size_t samples = 0;
  std::size_t located = 0;
  std::size_t rounds = 0;
};

// m parallel sample_heavy calls at sparsity k/eps sharing rounds, then one
// direct observation of the distinct candidates. Aims at
// err(x off T, f k) <= (1 + eps) err(x, k) with probability 1 - delta.
PartialOutcome recover_partial(MeasurementOracle& oracle, std::span<const Index> active,
                               double k, double eps, double f, double delta,
                               std::uint64_t seed, const Constants& constants);

// Per-level record of a k-sparse run, for diagnostics and tests.
struct KSparseTrace {
  std::vector<std::vector<Index>> kept_per_level;
  std::vector<std::size_t> rounds_per_level;
  std::vector<std::size_t> samples_per_level;
};

// Adaptive k-sparse recovery: recover_partial over the RoundSchedule on the
// shrinking residual R_{i+1} = [n] \ J, then x_J from the direct observations.
// Returns |J| <= 2k indices.
RecoveryResult recover_k_sparse(MeasurementOracle& oracle, std::uint64_t k, double eps,
                                double delta, std::uint64_t seed, const Constants& constants,
                                KSparseTrace* trace = nullptr);

}  // namespace adasparse

#endif  // ADASPARSE_KSPARSE_HPP_
