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
#include <string>
#include <vector>

#include "permtest/instances/hard_instance.hpp"

namespace permtest {

// One block of the C-factor tolerant-testing construction.
//
// With mval = 2^C - 1 the block has w = mval (2^{C+1} + 2^{C-1} - 3)
// elements in C+1 consecutive buckets: |B_0| = mval, |B_i| = mval 2^{i+1}
// for 1 <= i <= C-1, |B_C| = mval 2^{C-1}. All masses are integers over
// s = mval (4C - 1) 2^{C-1}.
struct MultiplicativeConfig {
  int C = 0;
  std::int64_t mval = 0;
  std::int64_t s = 0;
  std::int64_t w = 0;
  std::vector<std::int64_t> bucket_sizes;  // C + 1 entries
  std::size_t blocks = 1;                  // t; n = t w

  std::size_t n() const { return blocks * static_cast<std::size_t>(w); }
};

// Throws ParameterError unless 2 <= C <= 20 and blocks >= 1.
MultiplicativeConfig multiplicative_config(int C, std::size_t blocks = 1);

// Integer numerators (denominator s) of one block.
struct MultiplicativeBlock {
  std::vector<std::int64_t> reference;  // r
  std::vector<std::int64_t> close;      // p, at tv 1/(4C-1) from r
  std::vector<std::int64_t> far;        // q, at tv C/(4C-1) from r
  std::vector<int> bucket_of;
};

MultiplicativeBlock multiplicative_block(const MultiplicativeConfig& cfg);

// Reference r* = t copies of r scaled by 1/t; the member concatenates
// independently bucket-permuted copies of p (kClose) or q (kFar).
HardInstance multiplicative_instance(int C, std::size_t blocks,
                                     MemberKind which, std::uint64_t seed);

struct ExactCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Exact rational verification for one C: per-bucket mass equality of the
// close and far blocks, tv(r, far) = C/(4C-1), every bucket mass of close
// and far at most 2/(C+1), tv(r, close) = 1/(4C-1), plus normalization and
// the rearrangement property of both members.
std::vector<ExactCheck> verify_multiplicative_exact(int C);

}  // namespace permtest
