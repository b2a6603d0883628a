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

#include "adasparse/duplicates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "adasparse/hashing.hpp"
#include "adasparse/onesparse.hpp"
#include "adasparse/random.hpp"

namespace adasparse {
namespace {

// Neumaier-compensated sum, so that exact cancellation between the -1
// baseline and the per-item increments leaves (close to) an exact zero.
class CompensatedSum {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_ + comp_); }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

struct Repetition {
  UniformHash scale;
  KWiseHash part;
  // Position in the search list for every part, or -1 for an empty part.
  std::vector<std::ptrdiff_t> slot;
};

}  // namespace

MultiPassStream::MultiPassStream(std::vector<std::uint64_t> items) : items_(std::move(items)) {
  if (items_.size() < 2) throw std::invalid_argument("MultiPassStream: need n >= 2 items");
  const std::uint64_t top = items_.size() - 1;
  for (std::uint64_t v : items_) {
    if (v < 1 || v > top) {
      throw std::invalid_argument("MultiPassStream: item " + std::to_string(v) +
                                  " outside [1, " + std::to_string(top) + "]");
    }
  }
}

std::vector<double> stream_measure(MultiPassStream& stream, const QueryBatch& batch) {
  const std::uint64_t n = stream.length();
  // CSR from item to the (query, coefficient) pairs touching it.
  std::vector<std::size_t> start(n + 1, 0);
  std::vector<CompensatedSum> acc(batch.size());
  for (std::size_t q = 0; q < batch.size(); ++q) {
    const LinearQuery& query = batch[q];
    for (std::size_t e = 0; e < query.size(); ++e) {
      const Index i = query.indices[e];
      if (i < 1 || i >= n) throw std::out_of_range("stream_measure: index outside [1, n-1]");
      ++start[i + 1];
      acc[q].add(-static_cast<long double>(query.coefficients[e]));
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) start[i + 1] += start[i];
  std::vector<std::pair<std::size_t, double>> entries(start[n]);
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (std::size_t q = 0; q < batch.size(); ++q) {
    for (std::size_t e = 0; e < batch[q].size(); ++e) {
      entries[fill[batch[q].indices[e]]++] = {q, batch[q].coefficients[e]};
    }
  }
  stream.pass([&](std::uint64_t item) {
    for (std::size_t e = start[item]; e < start[item + 1]; ++e) {
      acc[entries[e].first].add(entries[e].second);
    }
  });
  std::vector<double> out(batch.size());
  for (std::size_t q = 0; q < batch.size(); ++q) out[q] = acc[q].value();
  return out;
}

std::size_t duplicate_parts(const Constants& constants) {
  if (!(constants.dup_eps > 0.0 && constants.dup_eps < 1.0)) {
    throw std::invalid_argument("duplicate_parts: dup_eps in (0,1)");
  }
  return 4 * static_cast<std::size_t>(std::ceil(std::log2(1.0 / constants.dup_eps)));
}

std::size_t duplicate_amplification(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("duplicate_amplification: delta must be > 0");
  if (delta >= 1.0) return 1;
  return static_cast<std::size_t>(std::ceil(std::log(1.0 / delta) / std::log(8.0 / 7.0)));
}

DuplicateRun find_duplicate(MultiPassStream& stream, double delta, std::uint64_t seed,
                            const Constants& constants) {
  const std::uint64_t n = stream.length();
  const std::size_t passes_before = stream.passes_used();
  DuplicateRun run;
  run.parts = duplicate_parts(constants);
  run.repetitions = constants.dup_repetitions * duplicate_amplification(delta);

  std::vector<Repetition> reps;
  std::vector<OneSparseSearch> searches;
  std::vector<std::size_t> owner;  // repetition of each search
  reps.reserve(run.repetitions);
  for (std::size_t r = 0; r < run.repetitions; ++r) {
    const std::uint64_t rep_seed = derive_seed(seed, tag("rep"), r);
    reps.push_back({UniformHash(constants.uniform_independence, n,
                                derive_seed(rep_seed, tag("scale"))),
                    KWiseHash(constants.partition_independence, n, run.parts,
                              derive_seed(rep_seed, tag("part"))),
                    std::vector<std::ptrdiff_t>(run.parts, -1)});
    std::vector<std::vector<Index>> members(run.parts);
    for (std::uint64_t i = 1; i < n; ++i) {
      members[reps[r].part.eval_unchecked(i)].push_back(static_cast<Index>(i));
    }
    for (std::size_t q = 0; q < run.parts; ++q) {
      if (members[q].empty()) continue;
      reps[r].slot[q] = static_cast<std::ptrdiff_t>(searches.size());
      searches.emplace_back(std::move(members[q]), n, constants.shrink_scale,
                            derive_seed(rep_seed, tag("search"), q));
      owner.push_back(r);
    }
  }

  std::size_t max_accumulators = 0;
  std::vector<std::ptrdiff_t> acc_of(searches.size());
  for (;;) {
    std::vector<std::size_t> live;
    for (std::size_t s = 0; s < searches.size(); ++s) {
      acc_of[s] = -1;
      if (!searches[s].finished()) {
        acc_of[s] = static_cast<std::ptrdiff_t>(live.size());
        live.push_back(s);
      }
    }
    if (live.empty()) break;
    max_accumulators = std::max(max_accumulators, 2 * live.size());

    std::vector<CompensatedSum> a(live.size());
    std::vector<CompensatedSum> b(live.size());
    // The x_i = -1 baseline over the part's current survivors.
    for (std::size_t l = 0; l < live.size(); ++l) {
      const OneSparseSearch& search = searches[live[l]];
      const Repetition& rep = reps[owner[live[l]]];
      for (Index i : search.active()) {
        const auto c = search.coefficients(i);
        const long double inv_t = 1.0L / rep.scale.eval_unchecked(i);
        a[l].add(-c->first * inv_t);
        b[l].add(-c->second * inv_t);
      }
    }
    stream.pass([&](std::uint64_t item) {
      for (const Repetition& rep : reps) {
        const std::ptrdiff_t s = rep.slot[rep.part.eval_unchecked(item)];
        if (s < 0 || acc_of[s] < 0) continue;
        const auto c = searches[s].coefficients(static_cast<Index>(item));
        if (!c) continue;
        const long double inv_t = 1.0L / rep.scale.eval_unchecked(item);
        a[acc_of[s]].add(c->first * inv_t);
        b[acc_of[s]].add(c->second * inv_t);
      }
    });
    for (std::size_t l = 0; l < live.size(); ++l) {
      searches[live[l]].advance(a[l].value(), b[l].value());
    }
  }

  for (const OneSparseSearch& search : searches) {
    const OneSparseOutcome o = search.outcome();
    if (o.ok()) {
      run.candidates.push_back(*o.index);
    } else if (o.failure == Failure::kNotIsolated &&
               o.survivors.size() <= constants.dup_candidates) {
      run.candidates.insert(run.candidates.end(), o.survivors.begin(), o.survivors.end());
    }
  }
  std::sort(run.candidates.begin(), run.candidates.end());
  run.candidates.erase(std::unique(run.candidates.begin(), run.candidates.end()),
                       run.candidates.end());

  if (!run.candidates.empty()) {
    std::vector<std::int64_t> x(run.candidates.size(), -1);
    stream.pass([&](std::uint64_t item) {
      const auto it = std::lower_bound(run.candidates.begin(), run.candidates.end(), item);
      if (it != run.candidates.end() && *it == item) ++x[it - run.candidates.begin()];
    });
    std::int64_t best = 0;
    for (std::size_t c = 0; c < run.candidates.size(); ++c) {
      if (x[c] > best) {
        best = x[c];
        run.index = run.candidates[c];
      }
    }
  }
  run.passes = stream.passes_used() - passes_before;
  run.max_state_words = max_accumulators + run.candidates.size();
  return run;
}

PassMeter meter_passes(const DuplicateRun& run) { return {run.passes, run.max_state_words}; }

std::vector<std::uint64_t> one_duplicate_stream(std::uint64_t n, std::uint64_t d) {
  if (n < 2 || d < 1 || d > n - 1) {
    throw std::invalid_argument("one_duplicate_stream: need n >= 2 and d in [1, n-1]");
  }
  std::vector<std::uint64_t> items(n);
  for (std::uint64_t i = 0; i + 1 < n; ++i) items[i] = i + 1;
  items[n - 1] = d;
  return items;
}

std::vector<std::uint64_t> all_same_stream(std::uint64_t n, std::uint64_t item) {
  if (n < 2 || item < 1 || item > n - 1) {
    throw std::invalid_argument("all_same_stream: need n >= 2 and item in [1, n-1]");
  }
  return std::vector<std::uint64_t>(n, item);
}

std::vector<std::uint64_t> random_stream(std::uint64_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_stream: need n >= 2");
  Rng rng(seed);
  std::vector<std::uint64_t> items(n);
  for (auto& v : items) v = 1 + rng.below(n - 1);
  return items;
}

void shuffle_stream(std::vector<std::uint64_t>& items, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

std::vector<std::uint64_t> read_stream(std::istream& in) {
  std::vector<std::uint64_t> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::uint64_t v = 0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument("read_stream: bad integer on line " + std::to_string(line_no));
    }
    items.push_back(v);
  }
  return items;
}

std::vector<std::uint64_t> read_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_stream: cannot open " + path.string());
  return read_stream(in);
}

void write_stream(std::ostream& out, std::span<const std::uint64_t> items) {
  for (std::uint64_t v : items) out << v << '\n';
}

}  // namespace adasparse
