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
#include <vector>

#include "permtest/core/pmf.hpp"
#include "permtest/core/rng.hpp"

namespace permtest {

// m i.i.d. draws from a pmf, plus the seed that produced them.
struct SampleSet {
  std::vector<std::uint32_t> draws;
  std::uint64_t seed = 0;

  std::size_t count() const { return draws.size(); }
};

// Walker/Vose alias table: O(n) construction, O(1) per draw.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return alias_.size(); }

  std::uint32_t operator()(Rng& rng) const {
    const auto column = static_cast<std::uint32_t>(rng.below(alias_.size()));
    return (rng() >> 11) < threshold_[column] ? column : alias_[column];
  }

 private:
  // Keep-probability of each column, scaled to 2^53.
  std::vector<std::uint64_t> threshold_;
  std::vector<std::uint32_t> alias_;
};

SampleSet sample(const Pmf& p, std::uint64_t m, std::uint64_t seed);

// result(i) = #{draws equal to i} / m.
// Throws EmptySampleError when m == 0 and DimensionError on draws >= n.
Pmf empirical_pmf(const SampleSet& s, std::size_t n);

// Multinomial(m, probs) via sequential conditional binomials.
// `probs` need not be normalized exactly; the last cell takes the remainder.
std::vector<std::uint64_t> multinomial_counts(std::span<const double> probs,
                                              std::uint64_t m, Rng& rng);

}  // namespace permtest
