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

#include "permtest/core/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "permtest/error.hpp"

namespace permtest {

Permutation::Permutation(std::vector<std::size_t> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    const std::size_t image = mapping_[i];
    if (image >= mapping_.size() || seen[image]) {
      std::ostringstream msg;
      msg << "mapping is not a bijection: position " << i << " maps to "
          << image;
      throw InvalidPermutation(msg.str());
    }
    seen[image] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  return Permutation(std::move(mapping));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(mapping[i - 1], mapping[rng.below(i)]);
  }
  return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& inner) const {
  if (inner.size() != size()) {
    throw DimensionError("cannot compose permutations of different sizes");
  }
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = mapping_[inner[i]];
  return Permutation(std::move(out));
}

std::vector<double> permute_values(std::span<const double> values,
                                   const Permutation& pi) {
  if (values.size() != pi.size()) {
    throw DimensionError("permutation and vector lengths differ");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[pi[i]];
  return out;
}

Pmf apply_permutation(const Pmf& q, const Permutation& pi) {
  return Pmf(permute_values(q.probs(), pi));
}

std::optional<Permutation> find_relabeling(std::span<const double> source,
                                           std::span<const double> target) {
  if (source.size() != target.size()) return std::nullopt;
  const std::size_t n = source.size();
  auto order_of = [n](std::span<const double> v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return idx;
  };
  const auto src = order_of(source);
  const auto dst = order_of(target);
  std::vector<std::size_t> mapping(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (source[src[r]] != target[dst[r]]) return std::nullopt;
    mapping[dst[r]] = src[r];
  }
  return Permutation(std::move(mapping));
}

}  // namespace permtest
