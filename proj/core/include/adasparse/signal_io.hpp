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

#ifndef ADASPARSE_SIGNAL_IO_HPP_
#define ADASPARSE_SIGNAL_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "adasparse/types.hpp"

namespace adasparse {

// Text fixtures: one value per line. Blank lines and lines starting with '#'
// are skipped. Values are written with round-trip precision.
Signal read_signal(std::istream& in);
Signal read_signal(const std::filesystem::path& path);
void write_signal(std::ostream& out, const Signal& signal);
void write_signal(const std::filesystem::path& path, const Signal& signal);

}  // namespace adasparse

#endif  // ADASPARSE_SIGNAL_IO_HPP_
