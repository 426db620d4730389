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
#include <span>
#include <string>
#include <vector>

#include "permtest/core/pmf.hpp"

namespace permtest {

// Two pmfs over [k] whose value power sums agree up to `order`.
//
// Both come from integer multisets a, b of the same size and total S:
// p = a / S, q = b / S, sorted non-decreasing. Since S is shared,
// sum_i p(i)^j = sum_i q(i)^j holds iff sum a_i^j = sum b_i^j.
struct MomentPair {
  std::size_t k = 0;
  std::size_t order = 0;
  std::vector<std::int64_t> a;  // sorted
  std::vector<std::int64_t> b;  // sorted
  std::int64_t total = 0;       // S
  std::vector<std::int64_t> value_power_sums;  // sum a_i^j, j = 1..order
  Pmf p;
  Pmf q;
  // tv of the sorted vectors: sum |a_i - b_i| / (2 S).
  std::int64_t tv_numerator = 0;
  std::int64_t tv_denominator = 1;

  double tv() const {
    return static_cast<double>(tv_numerator) /
           static_cast<double>(tv_denominator);
  }
  // sum_i p(i)^j as the exact fraction value_power_sums[j-1] / S^j.
  std::string power_sum_string(std::size_t j) const;
};

struct SearchBudget {
  std::int64_t max_value = 60;
  std::uint64_t max_multisets = 2'000'000;     // over all k
  std::uint64_t max_comparisons = 50'000'000;  // pairs inside signature groups
};

// Exhaustive search over integer multisets of size 2..k_max with values in
// [0, max_value], returning the pair with equal power sums up to `order`
// whose sorted-pairing tv is largest (smaller k wins ties). Larger k get
// a smaller value range so the total enumeration stays inside the budget.
//
// Requires 1 <= order <= 4 and order + 2 <= k_max <= 8 (ParameterError);
// throws NotFoundError when the budget yields no pair.
MomentPair find_moment_pair(std::size_t k_max, std::size_t order,
                            const SearchBudget& budget = {});

// Exact check of sum a_i^j == sum b_i^j for j = 1..order (128-bit sums).
bool power_sums_match(std::span<const std::int64_t> a,
                      std::span<const std::int64_t> b, std::size_t order);

}  // namespace permtest
