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
#include <span>
#include <vector>

namespace permtest {

// Probability mass function over the domain {0, ..., n-1}.
//
// Immutable after construction. The constructor validates but never
// rescales; use Pmf::normalized() to build from unnormalized weights.
class Pmf {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit Pmf(std::vector<double> probs);

  static Pmf normalized(std::vector<double> weights);
  static Pmf uniform(std::size_t n);
  static Pmf point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Probability vector sorted in non-decreasing order.
  std::vector<double> sorted() const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<double> probs_;
};

}  // namespace permtest
