// Copyright 2026 The permtest Authors.
//
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "permtest/core/pmf.hpp"
#include "permtest/core/sampling.hpp"

namespace permtest {

// Pmf file format: {"n": <int>, "probs": [<reals>]}.
nlohmann::ordered_json pmf_to_json(const Pmf& p);
// Throws FormatError on a malformed object (including n != probs.size()).
Pmf pmf_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Newline-separated 0-based indices, ASCII. Blank lines are ignored.
// Throws FormatError on a non-integer line or an index outside [0, n).
SampleSet parse_samples(std::string_view text, std::size_t n);
SampleSet read_samples_file(const std::filesystem::path& path, std::size_t n);
std::string format_samples(const SampleSet& s);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents);

}  // namespace permtest
