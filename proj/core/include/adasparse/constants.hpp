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

#ifndef ADASPARSE_CONSTANTS_HPP_
#define ADASPARSE_CONSTANTS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>

namespace adasparse {

// Tunable constants behind the asymptotic bounds. Defaults come from the
// calibration sweep (`adasparse calibrate`); every field can be overridden
// from a key=value file. The key names are given next to each field.
struct Constants {
  // "C": heavy-hitter ratio |x_j| / ||x_{-j}||_2 at which adaptive 1-sparse
  // recovery succeeds with probability >= 1/2.
  double heavy_ratio = 16.0;
  // "C'": bucket count multiplier, D = ceil(C' * 4 B^2 / delta).
  double shrink_scale = 0.125;
  // "C_sub": the constant in the subsampling rate p = 1 / (4 C_sub^2 k).
  double subsample = 0.35;
  // "c_m": subsamples per recursion level, m = c_m (k/eps) ln(1/(f delta)).
  double samples = 1.0;
  // "c_w", "c_d": CountSketch width ceil(c_w k/eps), depth ceil(c_d ln(n/delta)).
  double sketch_width = 4.0;
  double sketch_depth = 1.5;
  // "c_N", "N_exp": reduced dimension N = next pow2 >= (c_N k/eps)^N_exp.
  double reduce_dim = 1.0;
  double reduce_exponent = 4.0;
  // "t_reduce": independence of the reduction hashes, t = ceil(t_reduce log2 N).
  double reduce_independence = 2.0;
  // "t_uniform", "t_partition": independence of the scaling uniforms and the
  // part assignment in the duplicate finder.
  unsigned uniform_independence = 4;
  unsigned partition_independence = 2;
  // "dup_C": inner repetitions of the duplicate finder.
  unsigned dup_repetitions = 2;
  // "dup_eps": the small constant eps; parts = 4 ceil(log2(1/eps)).
  double dup_eps = 1.0 / 64.0;
  // "dup_T": largest surviving set kept as candidates from an unfinished search.
  unsigned dup_candidates = 4;
  // "c_p": slope of the pass bound passes <= c_p log2 log2 n + 2.
  double pass_slope = 0.9;
};

Constants parse_constants(std::istream& in, Constants base = {});
Constants load_constants(const std::filesystem::path& path, Constants base = {});
void write_constants(std::ostream& out, const Constants& c);

}  // namespace adasparse

#endif  // ADASPARSE_CONSTANTS_HPP_
