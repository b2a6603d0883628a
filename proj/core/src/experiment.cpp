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

#include "adasparse/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "adasparse/countsketch.hpp"
#include "adasparse/duplicates.hpp"
#include "adasparse/evaluators.hpp"
#include "adasparse/ksparse.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/random.hpp"
#include "adasparse/tworound.hpp"

namespace adasparse {
namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// ||x - x_hat||_2 against (1 + eps) sqrt(err(x, k)), with a rounding allowance
// relative to ||x||_2 so that exact recovery of a tail-free signal passes.
void judge(const Signal& x, std::size_t k, double eps, const RecoveryResult& r,
           TrialOutcome& out) {
  const double error = recovery_error(x.values(), r);
  const double floor_err = std::sqrt(tail_error(x.values(), k));
  double norm = 0.0;
  for (double v : x.values()) norm += v * v;
  const double slack = 1e-12 * std::sqrt(norm);
  out.success = error <= (1.0 + eps) * floor_err + slack;
  if (floor_err > 0.0) {
    out.error_ratio = error / floor_err;
  } else {
    out.error_ratio = error <= slack ? 0.0 : std::numeric_limits<double>::infinity();
  }
  out.support = r.support.size();
  out.measurements = static_cast<double>(r.metering.measurements);
  out.rounds = static_cast<double>(r.metering.rounds);
  out.direct = static_cast<double>(r.metering.direct_observations);
}

TrialOutcome duplicate_trial(const ExperimentSpec& spec, std::uint64_t trial_seed) {
  Rng rng(derive_seed(trial_seed, tag("stream")));
  std::vector<std::uint64_t> items;
  switch (spec.stream) {
    case StreamPattern::kOneDuplicate:
      items = one_duplicate_stream(spec.n, 1 + rng.below(spec.n - 1));
      break;
    case StreamPattern::kAllSame:
      items = all_same_stream(spec.n, 1 + rng.below(spec.n - 1));
      break;
    case StreamPattern::kRandom:
      items = random_stream(spec.n, rng());
      break;
  }
  shuffle_stream(items, rng());
  std::vector<std::int64_t> x(spec.n, -1);
  for (std::uint64_t v : items) ++x[v];

  MultiPassStream stream(std::move(items));
  const DuplicateRun run =
      find_duplicate(stream, spec.delta, derive_seed(trial_seed, tag("scheme")), spec.constants);
  TrialOutcome out;
  if (run.index) {
    out.success = x[*run.index] > 0;
    out.unsound = !out.success;
    out.support = 1;
  }
  out.rounds = static_cast<double>(run.passes);
  out.measurements = static_cast<double>(run.max_state_words);
  return out;
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kOneSparse: return "one-sparse";
    case Scheme::kKAdaptive: return "k-adaptive";
    case Scheme::kTwoRound: return "two-round";
    case Scheme::kCountSketch: return "countsketch";
    case Scheme::kDuplicate: return "duplicate";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "one-sparse") return Scheme::kOneSparse;
  if (name == "k-adaptive") return Scheme::kKAdaptive;
  if (name == "two-round") return Scheme::kTwoRound;
  if (name == "countsketch") return Scheme::kCountSketch;
  if (name == "duplicate") return Scheme::kDuplicate;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string to_string(StreamPattern pattern) {
  switch (pattern) {
    case StreamPattern::kOneDuplicate: return "one-duplicate";
    case StreamPattern::kAllSame: return "all-same";
    case StreamPattern::kRandom: return "random";
  }
  return "unknown";
}

StreamPattern parse_stream_pattern(std::string_view name) {
  if (name == "one-duplicate") return StreamPattern::kOneDuplicate;
  if (name == "all-same") return StreamPattern::kAllSame;
  if (name == "random") return StreamPattern::kRandom;
  throw std::invalid_argument("unknown stream pattern: " + std::string(name));
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (spec.n < 2) throw std::invalid_argument("n must be >= 2");
  if (spec.n > (std::uint64_t{1} << 31)) throw std::invalid_argument("n must be <= 2^31");
  if (spec.k < 1 || spec.k > spec.n) throw std::invalid_argument("k must be in [1, n]");
  if (!(spec.eps > 0.0 && spec.eps <= 1.0)) throw std::invalid_argument("eps must be in (0, 1]");
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  if (!(spec.spike_ratio > 0.0) || !std::isfinite(spec.spike_ratio)) {
    throw std::invalid_argument("spike ratio must be positive");
  }
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (spec.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

TrialOutcome run_trial(const ExperimentSpec& spec, std::uint64_t trial) {
  const std::uint64_t trial_seed = derive_seed(spec.seed, tag("trial"), trial);
  if (spec.scheme == Scheme::kDuplicate) return duplicate_trial(spec, trial_seed);

  const std::uint64_t signal_k = spec.scheme == Scheme::kOneSparse ? 1 : spec.k;
  const Signal x = generate_signal({spec.model, spec.n, signal_k, spec.spike_ratio, spec.alpha},
                                   derive_seed(trial_seed, tag("signal")));
  MeasurementOracle oracle(x);
  const std::uint64_t seed = derive_seed(trial_seed, tag("scheme"));
  const Constants& c = spec.constants;
  TrialOutcome out;
  switch (spec.scheme) {
    case Scheme::kOneSparse: {
      std::vector<Index> all(spec.n);
      std::iota(all.begin(), all.end(), Index{0});
      const OneSparseOutcome o = recover_one_sparse(oracle, std::move(all), c.shrink_scale, seed);
      RecoveryResult r;
      if (o.ok()) {
        const Index i = *o.index;
        r.support = {i};
        r.values = {oracle.observe_direct(std::span(&i, 1)).at(i)};
      }
      r.metering = oracle.metering();
      judge(x, 1, spec.eps, r, out);
      break;
    }
    case Scheme::kKAdaptive:
      judge(x, spec.k, spec.eps, recover_k_sparse(oracle, spec.k, spec.eps, spec.delta, seed, c),
            out);
      break;
    case Scheme::kTwoRound:
      judge(x, spec.k, spec.eps, two_round_recover(oracle, spec.k, spec.eps, seed, c).result,
            out);
      break;
    case Scheme::kCountSketch:
      judge(x, spec.k, spec.eps,
            countsketch_recover(oracle, spec.k, spec.eps, spec.delta, seed, c), out);
      break;
    case Scheme::kDuplicate:
      break;
  }
  return out;
}

ResultRow run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next++; t < spec.trials; t = next++) outcomes[t] = run_trial(spec, t);
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::uint64_t>(spec.workers, spec.trials));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  ResultRow row;
  row.spec = spec;
  std::vector<double> meas;
  std::vector<double> rounds;
  double successes = 0.0;
  double sum_meas = 0.0;
  double sum_rounds = 0.0;
  double sum_direct = 0.0;
  double sum_ratio = 0.0;
  for (const TrialOutcome& o : outcomes) {
    successes += o.success ? 1.0 : 0.0;
    sum_meas += o.measurements;
    sum_rounds += o.rounds;
    sum_direct += o.direct;
    sum_ratio += o.error_ratio;
    meas.push_back(o.measurements);
    rounds.push_back(o.rounds);
    row.max_support = std::max(row.max_support, o.support);
    row.unsound += o.unsound ? 1 : 0;
  }
  const double t = static_cast<double>(spec.trials);
  row.success_rate = successes / t;
  row.mean_measurements = sum_meas / t;
  row.median_measurements = median(meas);
  row.mean_rounds = sum_rounds / t;
  row.median_rounds = median(rounds);
  row.mean_direct = sum_direct / t;
  row.mean_error_ratio = sum_ratio / t;
  return row;
}

std::string csv_header() {
  return "scheme,model,n,k,eps,delta,trials,seed,spike_ratio,success_rate,mean_measurements,"
         "median_measurements,mean_rounds,median_rounds,mean_direct,mean_error_ratio,"
         "max_support,unsound";
}

void emit_csv(std::ostream& out, std::span<const ResultRow> rows) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  out << csv_header() << '\n';
  for (const ResultRow& r : rows) {
    const ExperimentSpec& s = r.spec;
    const std::string model =
        s.scheme == Scheme::kDuplicate ? to_string(s.stream) : to_string(s.model);
    out << to_string(s.scheme) << ',' << model << ',' << s.n << ',' << s.k << ','
        << fixed(s.eps) << ',' << fixed(s.delta) << ',' << s.trials << ',' << s.seed << ','
        << fixed(s.spike_ratio) << ',' << fixed(r.success_rate) << ','
        << fixed(r.mean_measurements) << ',' << fixed(r.median_measurements) << ','
        << fixed(r.mean_rounds) << ',' << fixed(r.median_rounds) << ',' << fixed(r.mean_direct)
        << ',' << fixed(r.mean_error_ratio) << ',' << r.max_support << ',' << r.unsound << '\n';
  }
}

void emit_csv(const std::filesystem::path& path, std::span<const ResultRow> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot write " + path.string());
  emit_csv(out, rows);
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

}  // namespace adasparse
