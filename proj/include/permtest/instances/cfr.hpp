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

#include "permtest/core/permutation.hpp"
#include "permtest/core/pmf.hpp"
#include "permtest/instances/hard_instance.hpp"

namespace permtest {

// "Repeat and alternate" construction over [2k^2], split into 2k buckets of
// k consecutive elements.
//
// With p, q sorted non-decreasing:
//   c: bucket l < k holds p(0..k-1)/(2k), bucket k+l holds q(0..k-1)/(2k);
//   f: the same with the two halves swapped;
//   r: bucket l < k is constant p(l)/(2k), bucket k+l is constant q(l)/(2k).
// c and f are rearrangements of r: c = r ∘ c_from_r and f = r ∘ f_from_r.
struct CfrTriple {
  std::size_t k = 0;
  std::vector<double> base_p;  // sorted
  std::vector<double> base_q;  // sorted
  Pmf c;
  Pmf f;
  Pmf r;
  Permutation c_from_r;
  Permutation f_from_r;

  std::size_t width() const { return 2 * k * k; }
};

// Throws DimensionError when p and q differ in length, ParameterError when
// k < 2.
CfrTriple build_cfr(const Pmf& p, const Pmf& q);

// Reference r* = `blocks` copies of r scaled by 1/blocks; the member
// concatenates independently bucket-permuted copies of c (kClose) or f
// (kFar). Each block's permutation is a Fisher-Yates shuffle inside every
// bucket, seeded by derive_seed(seed, block). With shuffle == false every
// block permutation is the identity.
HardInstance family_member(const CfrTriple& triple, MemberKind which,
                           std::size_t blocks, std::uint64_t seed,
                           bool shuffle = true);

}  // namespace permtest
