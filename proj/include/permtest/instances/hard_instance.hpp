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

#include <optional>
#include <string>

#include "json.hpp"
#include "permtest/core/permutation.hpp"
#include "permtest/core/pmf.hpp"

namespace permtest {

// Which member of a close/far pair of families to generate.
enum class MemberKind { kClose, kFar };

// A reference pmf, one member of a hard family, and exact ground truth:
// member == reference ∘ witness, and true_tv == tv(reference, member).
struct HardInstance {
  Pmf reference;
  Pmf member;
  Permutation witness;
  double true_tv = 0.0;
  nlohmann::ordered_json params;  // family tag and construction metadata
};

// Returns a description of the first broken invariant, or nullopt.
std::optional<std::string> find_violation(const HardInstance& inst,
                                          double tolerance = 1e-12);

nlohmann::ordered_json instance_to_json(const HardInstance& inst);
// Throws FormatError on a malformed document.
HardInstance instance_from_json(const nlohmann::json& j);

}  // namespace permtest
