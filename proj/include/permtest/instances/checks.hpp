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
#include <cstdint>
#include <vector>

#include "permtest/instances/multiplicative.hpp"

namespace permtest {

// Gap inequality of the repeat-and-alternate construction on `pairs`
// random sorted pairs (k uniform in [2, 8]):
//   tv(f, r) >= tv(c, r) + tv(p, q) / k  - 1e-12,
// every tv by direct half-L1 summation over the 2k^2 entries. Also checks
// the k = 2 example p = (1/2, 1/2), q = (1/4, 3/4), where the gap is
// exactly 1/8.
std::vector<ExactCheck> verify_cfr_gap(std::size_t pairs, std::uint64_t seed);

// Generates `count` instances round-robin over testing-lb, cfr close/far
// and mult close/far, each with a derived seed, and checks the witness and
// true_tv invariants within 1e-12.
std::vector<ExactCheck> verify_instance_integrity(std::size_t count,
                                                  std::uint64_t seed);

}  // namespace permtest
