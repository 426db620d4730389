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

namespace permtest {

// Derived parameters of the permutation-promise identity tester.
struct TesterParams {
  std::size_t buckets = 0;  // L
  double alg_delta = 0.0;   // epsilon / (4 (L - 1))
  std::uint64_t learner_samples = 0;
  double learner_beta = 0.1;
};

// L = 1 + ceil(log(4n/eps) / log(1 + eps/4)), delta = eps / (4 (L-1)), and a
// learner budget that reaches Kolmogorov accuracy delta/3 with failure
// probability learner_beta = 1/10.
// Requires n >= 2 and 0 < eps <= 1 (ParameterError otherwise).
TesterParams compute_params(std::size_t n, double epsilon);

// Geometric bucketing of a reference pmf q with ratio r = 1 + eps/4.
//
// Bucket labels run 1..L. Element i with q(i) > 0 gets label l when
// r^-l < q(i) <= r^-(l-1) and l <= L-1; everything else, including every
// zero-mass element, goes to the tail bucket L. Storage is 0-based: cell(i)
// is label(i) - 1.
class BucketPartition {
 public:
  BucketPartition(const Pmf& q, double epsilon);

  double epsilon() const { return epsilon_; }
  std::size_t bucket_count() const { return reference_mass_.size(); }
  std::size_t domain_size() const { return cells_.size(); }

  std::uint32_t cell(std::size_t i) const { return cells_[i]; }
  std::uint32_t label(std::size_t i) const { return cells_[i] + 1; }
  std::span<const std::uint32_t> cells() const { return cells_; }

  // q-mass per bucket, indexed by cell (label - 1).
  std::span<const double> reference_mass() const { return reference_mass_; }
  double tail_reference_mass() const { return reference_mass_.back(); }

  // Mass of p per bucket of this partition.
  std::vector<double> bucket_mass(std::span<const double> p) const;

 private:
  double epsilon_;
  std::vector<std::uint32_t> cells_;
  std::vector<double> reference_mass_;
};

inline BucketPartition build_buckets(const Pmf& q, double epsilon) {
  return BucketPartition(q, epsilon);
}

}  // namespace permtest
