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

#include <numeric>
#include <vector>

#include <benchmark/benchmark.h>

#include "adasparse/constants.hpp"
#include "adasparse/countsketch.hpp"
#include "adasparse/duplicates.hpp"
#include "adasparse/hashing.hpp"
#include "adasparse/ksparse.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/signals.hpp"
#include "adasparse/tworound.hpp"

namespace adasparse {
namespace {

void BM_KWiseHash(benchmark::State& state) {
  const KWiseHash h(static_cast<unsigned>(state.range(0)), 1u << 20, 1024, 7);
  std::uint64_t x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h(x));
    x = (x + 1) & ((1u << 20) - 1);
  }
}
BENCHMARK(BM_KWiseHash)->Arg(2)->Arg(4)->Arg(32);

void BM_Shrink(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  const Signal x = generate_signal({SignalModel::kGaussianTail, n, 1, 16.0, 1.0}, 1);
  MeasurementOracle oracle(x);
  std::vector<Index> active(n);
  std::iota(active.begin(), active.end(), Index{0});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(shrink(oracle, active, {2.0, 0.25, 64}, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Shrink)->Arg(1 << 12)->Arg(1 << 16);

void BM_RecoverOneSparse(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  const Signal x = generate_signal({SignalModel::kGaussianTail, n, 1, 16.0, 1.0}, 2);
  MeasurementOracle oracle(x);
  std::vector<Index> active(n);
  std::iota(active.begin(), active.end(), Index{0});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_one_sparse(oracle, active, 0.125, ++seed));
  }
}
BENCHMARK(BM_RecoverOneSparse)->Arg(1 << 12)->Arg(1 << 16);

void BM_CountSketch(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  const Signal x = generate_signal({SignalModel::kGaussianTail, n, 8, 10.0, 1.0}, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MeasurementOracle oracle(x);
    benchmark::DoNotOptimize(countsketch_recover(oracle, 8, 0.5, 0.2, ++seed, Constants{}));
  }
}
BENCHMARK(BM_CountSketch)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_RecoverKSparse(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  const Signal x = generate_signal({SignalModel::kGaussianTail, n, 8, 10.0, 1.0}, 4);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MeasurementOracle oracle(x);
    benchmark::DoNotOptimize(recover_k_sparse(oracle, 8, 0.5, 0.2, ++seed, Constants{}));
  }
}
BENCHMARK(BM_RecoverKSparse)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_TwoRound(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  const Signal x = generate_signal({SignalModel::kGaussianTail, n, 8, 10.0, 1.0}, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MeasurementOracle oracle(x);
    benchmark::DoNotOptimize(two_round_recover(oracle, 8, 0.5, ++seed, Constants{}));
  }
}
BENCHMARK(BM_TwoRound)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_FindDuplicate(benchmark::State& state) {
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  auto items = one_duplicate_stream(n, n / 2);
  shuffle_stream(items, 6);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MultiPassStream stream(items);
    benchmark::DoNotOptimize(find_duplicate(stream, 0.25, ++seed, Constants{}));
  }
}
BENCHMARK(BM_FindDuplicate)->Arg(1 << 10)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace adasparse

BENCHMARK_MAIN();
