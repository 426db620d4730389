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

#include "permtest/core/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "permtest/error.hpp"

namespace permtest {

nlohmann::ordered_json pmf_to_json(const Pmf& p) {
  nlohmann::ordered_json j;
  j["n"] = p.size();
  j["probs"] = std::vector<double>(p.probs().begin(), p.probs().end());
  return j;
}

Pmf pmf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("probs") || !j["probs"].is_array()) {
    throw FormatError("pmf object needs a \"probs\" array");
  }
  std::vector<double> probs;
  probs.reserve(j["probs"].size());
  for (const auto& v : j["probs"]) {
    if (!v.is_number()) throw FormatError("pmf probs must be numbers");
    probs.push_back(v.get<double>());
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() ||
        j["n"].get<std::int64_t>() != static_cast<std::int64_t>(probs.size())) {
      throw FormatError("pmf \"n\" does not match the length of \"probs\"");
    }
  }
  try {
    return Pmf(std::move(probs));
  } catch (const InvalidPmf& e) {
    throw FormatError(std::string("invalid pmf: ") + e.what());
  }
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

SampleSet parse_samples(std::string_view text, std::size_t n) {
  SampleSet out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty()) continue;
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": not a non-negative integer";
      throw FormatError(msg.str());
    }
    if (value >= n) {
      std::ostringstream msg;
      msg << "line " << line_no << ": index " << value
          << " outside domain of size " << n;
      throw FormatError(msg.str());
    }
    out.draws.push_back(static_cast<std::uint32_t>(value));
  }
  return out;
}

SampleSet read_samples_file(const std::filesystem::path& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_samples(buffer.str(), n);
}

std::string format_samples(const SampleSet& s) {
  std::string out;
  out.reserve(s.draws.size() * 6);
  for (auto d : s.draws) {
    out += std::to_string(d);
    out += '\n';
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path,
                           std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw FormatError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw FormatError("cannot rename onto " + path.string() + ": " +
                      ec.message());
  }
}

}  // namespace permtest
