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

#include "permtest/instances/hard_instance.hpp"

#include <cmath>
#include <sstream>

#include "permtest/core/distance.hpp"
#include "permtest/core/io.hpp"
#include "permtest/error.hpp"

namespace permtest {

std::optional<std::string> find_violation(const HardInstance& inst,
                                          double tolerance) {
  const std::size_t n = inst.reference.size();
  if (inst.member.size() != n || inst.witness.size() != n) {
    return "reference, member and witness have different sizes";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = inst.reference[inst.witness[i]];
    if (std::abs(expected - inst.member[i]) > tolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "member(" << i << ") = " << inst.member[i]
          << " but reference(witness(" << i << ")) = " << expected;
      return msg.str();
    }
  }
  const double tv = tv_distance(inst.reference, inst.member);
  if (std::abs(tv - inst.true_tv) > tolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "recomputed tv " << tv << " differs from metadata " << inst.true_tv;
    return msg.str();
  }
  return std::nullopt;
}

nlohmann::ordered_json instance_to_json(const HardInstance& inst) {
  nlohmann::ordered_json j;
  j["reference"] = pmf_to_json(inst.reference);
  j["member"] = pmf_to_json(inst.member);
  j["witness"] = std::vector<std::size_t>(inst.witness.mapping().begin(),
                                          inst.witness.mapping().end());
  j["true_tv"] = inst.true_tv;
  j["params"] = inst.params;
  return j;
}

HardInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  for (const char* key : {"reference", "member", "witness", "true_tv"}) {
    if (!j.contains(key)) {
      throw FormatError(std::string("instance is missing \"") + key + "\"");
    }
  }
  std::vector<std::size_t> mapping;
  try {
    mapping = j["witness"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad witness: ") + e.what());
  }
  if (!j["true_tv"].is_number()) throw FormatError("true_tv must be a number");
  try {
    HardInstance inst{pmf_from_json(j["reference"]), pmf_from_json(j["member"]),
                      Permutation(std::move(mapping)),
                      j["true_tv"].get<double>(),
                      j.contains("params") ? nlohmann::ordered_json(j["params"])
                                           : nlohmann::ordered_json::object()};
    return inst;
  } catch (const InvalidPermutation& e) {
    throw FormatError(std::string("bad witness: ") + e.what());
  }
}

}  // namespace permtest
