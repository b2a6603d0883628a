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

#include "adasparse/constants.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adasparse {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v) || v <= 0) {
    throw std::invalid_argument("constant '" + std::string(key) +
                                "' needs a positive number, got '" + std::string(text) + "'");
  }
  return v;
}

using Setter = std::function<void(Constants&, std::string_view, std::string_view)>;

Setter real(double Constants::*field) {
  return [field](Constants& c, std::string_view key, std::string_view v) {
    c.*field = parse_number(key, v);
  };
}

Setter whole(unsigned Constants::*field) {
  return [field](Constants& c, std::string_view key, std::string_view v) {
    const double d = parse_number(key, v);
    if (d != std::floor(d)) {
      throw std::invalid_argument("constant '" + std::string(key) + "' must be an integer");
    }
    c.*field = static_cast<unsigned>(d);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"C", real(&Constants::heavy_ratio)},
      {"C'", real(&Constants::shrink_scale)},
      {"C_sub", real(&Constants::subsample)},
      {"c_m", real(&Constants::samples)},
      {"c_w", real(&Constants::sketch_width)},
      {"c_d", real(&Constants::sketch_depth)},
      {"c_N", real(&Constants::reduce_dim)},
      {"N_exp", real(&Constants::reduce_exponent)},
      {"t_reduce", real(&Constants::reduce_independence)},
      {"t_uniform", whole(&Constants::uniform_independence)},
      {"t_partition", whole(&Constants::partition_independence)},
      {"dup_C", whole(&Constants::dup_repetitions)},
      {"dup_eps", real(&Constants::dup_eps)},
      {"dup_T", whole(&Constants::dup_candidates)},
      {"c_p", real(&Constants::pass_slope)},
  };
  return table;
}

}  // namespace

Constants parse_constants(std::istream& in, Constants base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("constants line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view value = trim(s.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw std::invalid_argument("unknown constant '" + std::string(key) + "'");
    }
    it->second(base, key, value);
  }
  if (base.dup_eps >= 1.0) throw std::invalid_argument("dup_eps must be < 1");
  if (base.uniform_independence < 1 || base.partition_independence < 1) {
    throw std::invalid_argument("hash independence must be >= 1");
  }
  return base;
}

Constants load_constants(const std::filesystem::path& path, Constants base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file " + path.string());
  return parse_constants(in, base);
}

void write_constants(std::ostream& out, const Constants& c) {
  out << "C=" << c.heavy_ratio << '\n'
      << "C'=" << c.shrink_scale << '\n'
      << "C_sub=" << c.subsample << '\n'
      << "c_m=" << c.samples << '\n'
      << "c_w=" << c.sketch_width << '\n'
      << "c_d=" << c.sketch_depth << '\n'
      << "c_N=" << c.reduce_dim << '\n'
      << "N_exp=" << c.reduce_exponent << '\n'
      << "t_reduce=" << c.reduce_independence << '\n'
      << "t_uniform=" << c.uniform_independence << '\n'
      << "t_partition=" << c.partition_independence << '\n'
      << "dup_C=" << c.dup_repetitions << '\n'
      << "dup_eps=" << c.dup_eps << '\n'
      << "dup_T=" << c.dup_candidates << '\n'
      << "c_p=" << c.pass_slope << '\n';
}

}  // namespace adasparse
