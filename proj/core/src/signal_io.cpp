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

#include "adasparse/signal_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace adasparse {

Signal read_signal(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument("signal line " + std::to_string(line_no) +
                               ": not a number: " + line);
    }
    values.push_back(v);
  }
  return Signal(std::move(values));
}

Signal read_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open signal file " + path.string());
  return read_signal(in);
}

void write_signal(std::ostream& out, const Signal& signal) {
  char buf[64];
  for (double v : signal.values()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
}

void write_signal(const std::filesystem::path& path, const Signal& signal) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write signal file " + path.string());
  write_signal(out, signal);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace adasparse
