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
#include <optional>
#include <span>
#include <vector>

#include "permtest/core/pmf.hpp"
#include "permtest/core/rng.hpp"

namespace permtest {

// A bijection of {0, ..., n-1}, stored as its image table.
class Permutation {
 public:
  // Throws InvalidPermutation unless `mapping` hits every index exactly once.
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);
  // Uniformly random permutation (Fisher-Yates).
  static Permutation random(std::size_t n, Rng& rng);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  std::span<const std::size_t> mapping() const { return mapping_; }

  Permutation inverse() const;
  // (this ∘ inner)(i) = this[inner[i]].
  Permutation after(const Permutation& inner) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> mapping_;
};

// result(i) = q(pi(i)).
Pmf apply_permutation(const Pmf& q, const Permutation& pi);

// Values-level version of apply_permutation; no normalization checks.
std::vector<double> permute_values(std::span<const double> values,
                                   const Permutation& pi);

// Finds pi with source[pi[i]] == target[i] for every i, using exact value
// equality. Returns nullopt when the two vectors are not rearrangements of
// each other.
std::optional<Permutation> find_relabeling(std::span<const double> source,
                                           std::span<const double> target);

}  // namespace permtest
