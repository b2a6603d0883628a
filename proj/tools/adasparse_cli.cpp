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

// Command-line harness: Monte Carlo experiments, fixture generation, one-off
// recovery from files and constant sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adasparse/constants.hpp"
#include "adasparse/countsketch.hpp"
#include "adasparse/duplicates.hpp"
#include "adasparse/experiment.hpp"
#include "adasparse/ksparse.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/oracle.hpp"
#include "adasparse/signal_io.hpp"
#include "adasparse/signals.hpp"
#include "adasparse/tworound.hpp"

namespace {

constexpr int kUsageError = 2;

using adasparse::Constants;
using adasparse::ExperimentSpec;

struct CommonFlags {
  std::string scheme = "k-adaptive";
  std::vector<std::uint64_t> n = {4096};
  std::uint64_t k = 1;
  double eps = 0.5;
  double delta = 0.2;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  // Empty: spike-gaussian for signals, one-duplicate for streams.
  std::string model;
  double spike_ratio = 10.0;
  double alpha = 1.0;
  unsigned workers = 1;
  std::string constants_path;
  std::string out;
};

void add_experiment_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scheme", f.scheme,
                  "one-sparse | k-adaptive | two-round | countsketch | duplicate");
  cmd->add_option("--n", f.n, "signal length(s); one CSV row per value")->expected(1, -1);
  cmd->add_option("--k", f.k, "sparsity");
  cmd->add_option("--eps", f.eps, "approximation parameter in (0, 1]");
  cmd->add_option("--delta", f.delta, "failure probability in (0, 1)");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per row");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--model", f.model,
                  "signal model (exact-sparse | spike-flat | spike-gaussian | power-law) or, "
                  "for duplicate, stream pattern (one-duplicate | all-same | random)");
  cmd->add_option("--spike-ratio", f.spike_ratio, "spike magnitude over unit-norm tail");
  cmd->add_option("--alpha", f.alpha, "power-law exponent");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--constants", f.constants_path, "key=value file of tuned constants");
  cmd->add_option("--out", f.out, "CSV output path (default: stdout)");
}

ExperimentSpec make_spec(const CommonFlags& f, std::uint64_t n) {
  ExperimentSpec spec;
  spec.scheme = adasparse::parse_scheme(f.scheme);
  spec.n = n;
  spec.k = f.k;
  spec.eps = f.eps;
  spec.delta = f.delta;
  spec.trials = f.trials;
  spec.seed = f.seed;
  if (spec.scheme == adasparse::Scheme::kDuplicate) {
    spec.stream = adasparse::parse_stream_pattern(f.model.empty() ? "one-duplicate" : f.model);
  } else {
    spec.model = adasparse::parse_signal_model(f.model.empty() ? "spike-gaussian" : f.model);
  }
  spec.spike_ratio = f.spike_ratio;
  spec.alpha = f.alpha;
  spec.workers = f.workers;
  if (!f.constants_path.empty()) spec.constants = adasparse::load_constants(f.constants_path);
  adasparse::validate(spec);
  return spec;
}

void write_rows(const std::string& out, const std::vector<adasparse::ResultRow>& rows) {
  if (out.empty()) {
    adasparse::emit_csv(std::cout, rows);
  } else {
    adasparse::emit_csv(out, rows);
  }
}

int cmd_run(const CommonFlags& f) {
  std::vector<ExperimentSpec> specs;
  for (std::uint64_t n : f.n) specs.push_back(make_spec(f, n));
  std::vector<adasparse::ResultRow> rows;
  for (const auto& spec : specs) rows.push_back(adasparse::run_experiment(spec));
  write_rows(f.out, rows);
  return 0;
}

int cmd_calibrate(const CommonFlags& f, const std::string& key,
                  const std::vector<std::string>& values) {
  std::vector<adasparse::ResultRow> rows;
  for (std::uint64_t n : f.n) {
    for (const auto& v : values) {
      ExperimentSpec spec = make_spec(f, n);
      std::istringstream line(key + "=" + v);
      spec.constants = adasparse::parse_constants(line, spec.constants);
      rows.push_back(adasparse::run_experiment(spec));
      std::cerr << key << "=" << v << " n=" << n << " success=" << rows.back().success_rate
                << " measurements=" << rows.back().mean_measurements << '\n';
    }
  }
  write_rows(f.out, rows);
  return 0;
}

int cmd_gen_signal(const std::string& model, std::uint64_t n, std::uint64_t k, double ratio,
                   double alpha, std::uint64_t seed, const std::string& out) {
  const adasparse::Signal x = adasparse::generate_signal(
      {adasparse::parse_signal_model(model), n, k, ratio, alpha}, seed);
  if (out.empty()) {
    adasparse::write_signal(std::cout, x);
  } else {
    adasparse::write_signal(out, x);
  }
  return 0;
}

int cmd_gen_stream(const std::string& pattern, std::uint64_t n, std::uint64_t seed,
                   std::optional<std::uint64_t> duplicate, bool shuffle, const std::string& out) {
  std::vector<std::uint64_t> items;
  switch (adasparse::parse_stream_pattern(pattern)) {
    case adasparse::StreamPattern::kOneDuplicate:
      items = adasparse::one_duplicate_stream(n, duplicate.value_or(1));
      break;
    case adasparse::StreamPattern::kAllSame:
      items = adasparse::all_same_stream(n, duplicate.value_or(1));
      break;
    case adasparse::StreamPattern::kRandom:
      items = adasparse::random_stream(n, seed);
      break;
  }
  if (shuffle) adasparse::shuffle_stream(items, seed);
  if (out.empty()) {
    adasparse::write_stream(std::cout, items);
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    adasparse::write_stream(file, items);
  }
  return 0;
}

int cmd_recover(const std::string& path, const CommonFlags& f) {
  const adasparse::Signal x = adasparse::read_signal(path);
  Constants constants;
  if (!f.constants_path.empty()) constants = adasparse::load_constants(f.constants_path);
  adasparse::MeasurementOracle oracle(x);
  adasparse::RecoveryResult r;
  switch (adasparse::parse_scheme(f.scheme)) {
    case adasparse::Scheme::kOneSparse: {
      std::vector<adasparse::Index> all(x.size());
      std::iota(all.begin(), all.end(), adasparse::Index{0});
      const auto o =
          adasparse::recover_one_sparse(oracle, std::move(all), constants.shrink_scale, f.seed);
      if (o.ok()) {
        const adasparse::Index i = *o.index;
        r.support = {i};
        r.values = {oracle.observe_direct(std::span(&i, 1)).at(i)};
      } else {
        std::cerr << "no index isolated: " << adasparse::to_string(o.failure) << '\n';
      }
      r.metering = oracle.metering();
      break;
    }
    case adasparse::Scheme::kKAdaptive:
      r = adasparse::recover_k_sparse(oracle, f.k, f.eps, f.delta, f.seed, constants);
      break;
    case adasparse::Scheme::kTwoRound:
      r = adasparse::two_round_recover(oracle, f.k, f.eps, f.seed, constants).result;
      break;
    case adasparse::Scheme::kCountSketch:
      r = adasparse::countsketch_recover(oracle, f.k, f.eps, f.delta, f.seed, constants);
      break;
    case adasparse::Scheme::kDuplicate:
      throw std::invalid_argument("recover: use find-duplicate for streams");
  }
  std::ofstream file;
  std::ostream& out = f.out.empty() ? std::cout : (file.open(f.out), file);
  if (!out) throw std::runtime_error("cannot write " + f.out);
  for (std::size_t i = 0; i < r.support.size(); ++i) {
    out << r.support[i] << ' ' << r.values[i] << '\n';
  }
  std::cerr << "measurements=" << r.metering.measurements << " rounds=" << r.metering.rounds
            << " direct=" << r.metering.direct_observations << '\n';
  return 0;
}

int cmd_find_duplicate(const std::string& path, double delta, std::uint64_t seed,
                       const std::string& constants_path) {
  Constants constants;
  if (!constants_path.empty()) constants = adasparse::load_constants(constants_path);
  adasparse::MultiPassStream stream(adasparse::read_stream(path));
  const adasparse::DuplicateRun run = adasparse::find_duplicate(stream, delta, seed, constants);
  if (run.index) {
    std::cout << *run.index << '\n';
  } else {
    std::cout << "FAIL\n";
  }
  std::cerr << "passes=" << run.passes << " max_state_words=" << run.max_state_words << '\n';
  return run.index ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive sparse recovery experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Monte Carlo trials, one CSV row per --n");
  add_experiment_flags(run, run_flags);

  CommonFlags cal_flags;
  std::string cal_key;
  std::vector<std::string> cal_values;
  CLI::App* cal = app.add_subcommand("calibrate", "sweep one constant, one CSV row per value");
  add_experiment_flags(cal, cal_flags);
  cal->add_option("--key", cal_key, "constant name, as in the constants file")->required();
  cal->add_option("--values", cal_values, "values to try")->required()->expected(1, -1);

  std::string sig_model = "spike-gaussian";
  std::uint64_t sig_n = 4096;
  std::uint64_t sig_k = 1;
  double sig_ratio = 10.0;
  double sig_alpha = 1.0;
  std::uint64_t sig_seed = 1;
  std::string sig_out;
  CLI::App* gen_signal = app.add_subcommand("gen-signal", "write a signal, one value per line");
  gen_signal->add_option("--model", sig_model, "exact-sparse | spike-flat | spike-gaussian | power-law");
  gen_signal->add_option("--n", sig_n, "length");
  gen_signal->add_option("--k", sig_k, "number of spikes");
  gen_signal->add_option("--spike-ratio", sig_ratio, "spike magnitude");
  gen_signal->add_option("--alpha", sig_alpha, "power-law exponent");
  gen_signal->add_option("--seed", sig_seed, "seed");
  gen_signal->add_option("--out", sig_out, "output path (default: stdout)");

  std::string st_pattern = "one-duplicate";
  std::uint64_t st_n = 4096;
  std::uint64_t st_seed = 1;
  std::optional<std::uint64_t> st_dup;
  bool st_shuffle = false;
  std::string st_out;
  CLI::App* gen_stream = app.add_subcommand("gen-stream", "write a stream, one item per line");
  gen_stream->add_option("--pattern", st_pattern, "one-duplicate | all-same | random");
  gen_stream->add_option("--n", st_n, "number of items; values lie in [1, n-1]");
  gen_stream->add_option("--seed", st_seed, "seed for random items and shuffling");
  gen_stream->add_option("--duplicate", st_dup, "the repeated item (default 1)");
  gen_stream->add_flag("--shuffle", st_shuffle, "seeded shuffle of the item order");
  gen_stream->add_option("--out", st_out, "output path (default: stdout)");

  CommonFlags rec_flags;
  std::string rec_signal;
  CLI::App* recover = app.add_subcommand("recover", "recover a signal read from a file");
  recover->add_option("--signal", rec_signal, "signal file")->required();
  recover->add_option("--scheme", rec_flags.scheme, "one-sparse | k-adaptive | two-round | countsketch");
  recover->add_option("--k", rec_flags.k, "sparsity");
  recover->add_option("--eps", rec_flags.eps, "approximation parameter");
  recover->add_option("--delta", rec_flags.delta, "failure probability");
  recover->add_option("--seed", rec_flags.seed, "seed");
  recover->add_option("--constants", rec_flags.constants_path, "constants file");
  recover->add_option("--out", rec_flags.out, "output path for 'index value' lines");

  std::string dup_stream;
  double dup_delta = 0.25;
  std::uint64_t dup_seed = 1;
  std::string dup_constants;
  CLI::App* find_dup = app.add_subcommand("find-duplicate", "find a repeated item in a stream file");
  find_dup->add_option("--stream", dup_stream, "stream file")->required();
  find_dup->add_option("--delta", dup_delta, "failure probability");
  find_dup->add_option("--seed", dup_seed, "seed");
  find_dup->add_option("--constants", dup_constants, "constants file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*cal) return cmd_calibrate(cal_flags, cal_key, cal_values);
    if (*gen_signal) {
      return cmd_gen_signal(sig_model, sig_n, sig_k, sig_ratio, sig_alpha, sig_seed, sig_out);
    }
    if (*gen_stream) {
      return cmd_gen_stream(st_pattern, st_n, st_seed, st_dup, st_shuffle, st_out);
    }
    if (*recover) return cmd_recover(rec_signal, rec_flags);
    if (*find_dup) return cmd_find_duplicate(dup_stream, dup_delta, dup_seed, dup_constants);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsageError;
}
