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

#include "permtest/instances/cfr.hpp"

#include <algorithm>
#include <numeric>

#include "permtest/core/distance.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/error.hpp"

namespace permtest {
namespace {

// Index maps realizing c = r ∘ tau_c and f = r ∘ tau_f on one block. Slot
// (bucket l, offset j) of c holds p(j) or q(j), which r keeps at bucket j
// (or k + j); pick offset l there so the map is a bijection.
std::vector<std::size_t> transpose_map(std::size_t k, bool swap_halves) {
  const std::size_t half = k * k;
  std::vector<std::size_t> tau(2 * half);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t first = l * k + j;
      const std::size_t second = half + l * k + j;
      const std::size_t in_p = j * k + l;
      const std::size_t in_q = half + j * k + l;
      tau[first] = swap_halves ? in_q : in_p;
      tau[second] = swap_halves ? in_p : in_q;
    }
  }
  return tau;
}

}  // namespace

CfrTriple build_cfr(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    throw DimensionError("build_cfr needs p and q over the same [k]");
  }
  const std::size_t k = p.size();
  if (k < 2) throw ParameterError("build_cfr needs k >= 2");

  std::vector<double> sp = p.sorted();
  std::vector<double> sq = q.sorted();
  const double scale = 1.0 / (2.0 * static_cast<double>(k));
  const std::size_t half = k * k;

  std::vector<double> r(2 * half);
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      r[l * k + j] = sp[l] * scale;
      r[half + l * k + j] = sq[l] * scale;
    }
  }
  Permutation c_from_r(transpose_map(k, false));
  Permutation f_from_r(transpose_map(k, true));
  std::vector<double> c = permute_values(r, c_from_r);
  std::vector<double> f = permute_values(r, f_from_r);

  return CfrTriple{k,
                   std::move(sp),
                   std::move(sq),
                   Pmf(std::move(c)),
                   Pmf(std::move(f)),
                   Pmf(std::move(r)),
                   std::move(c_from_r),
                   std::move(f_from_r)};
}

HardInstance family_member(const CfrTriple& triple, MemberKind which,
                           std::size_t blocks, std::uint64_t seed,
                           bool shuffle) {
  if (blocks < 1) throw ParameterError("family_member needs blocks >= 1");
  const std::size_t k = triple.k;
  const std::size_t width = triple.width();
  const std::size_t n = blocks * width;
  const Permutation& base = which == MemberKind::kClose ? triple.c_from_r
                                                        : triple.f_from_r;

  const double inv_blocks = 1.0 / static_cast<double>(blocks);
  std::vector<double> reference(n);
  std::vector<std::size_t> mapping(n);
  std::vector<std::size_t> local(width);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::iota(local.begin(), local.end(), std::size_t{0});
    if (shuffle) {
      Rng rng(derive_seed(seed, b));
      for (std::size_t bucket = 0; bucket < 2 * k; ++bucket) {
        auto first = local.begin() + static_cast<std::ptrdiff_t>(bucket * k);
        for (std::size_t i = k; i > 1; --i) {
          std::swap(first[static_cast<std::ptrdiff_t>(i - 1)],
                    first[static_cast<std::ptrdiff_t>(rng.below(i))]);
        }
      }
    }
    const std::size_t offset = b * width;
    for (std::size_t i = 0; i < width; ++i) {
      reference[offset + i] = triple.r[i] * inv_blocks;
      // (x ∘ pi)(i) = x(pi(i)) with x = r ∘ base.
      mapping[offset + i] = offset + base[local[i]];
    }
  }

  Pmf ref(std::move(reference));
  Permutation witness(std::move(mapping));
  Pmf member = apply_permutation(ref, witness);
  const Pmf& block_member = which == MemberKind::kClose ? triple.c : triple.f;
  const double tv = tv_distance(block_member, triple.r);

  nlohmann::ordered_json params;
  params["family"] = which == MemberKind::kClose ? "cfr-close" : "cfr-far";
  params["k"] = k;
  params["blocks"] = blocks;
  params["n"] = n;
  params["base_p"] = triple.base_p;
  params["base_q"] = triple.base_q;
  params["seed"] = seed;
  return HardInstance{std::move(ref), std::move(member), std::move(witness), tv,
                      std::move(params)};
}

}  // namespace permtest
