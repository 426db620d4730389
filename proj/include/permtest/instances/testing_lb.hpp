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
#include <utility>
#include <vector>

#include "permtest/core/pmf.hpp"
#include "permtest/instances/hard_instance.hpp"

namespace permtest {

// Geometry of the log^2(n) testing lower-bound family.
//
// L is the largest integer with L 2^L <= sqrt(n). Buckets B_0..B_{L-2} have
// ceil(sqrt n) 2^l elements and B_{L-1} has 2 (L-2) |B_{L-2}|; elements past
// `used` carry no base mass. The base pmf puts 1/3 on B_0 and on B_{L-1}
// and 1/(3(L-2)) on each middle bucket, uniformly inside buckets; the
// reference is the mixture (1 - 9 eps) u + 9 eps base.
//
// The perturbation cascades mass through the middle buckets: swap_unit
// elements of B_1 trade places with swap_unit elements of B_2,
// 2 swap_unit of B_2 with 2 swap_unit of B_3, and so on into B_{L-1}, and
// end_swap elements of B_0 trade with end_swap further elements of B_1.
// swap_unit is the largest multiple of 2 (2L - 5) not above
// floor(2 |B_1| / 3) and end_swap = swap_unit / (2 (2L - 5)), which keeps
// every middle-bucket mass exactly unchanged.
struct TestingLbConfig {
  std::size_t n = 0;
  std::size_t levels = 0;     // L
  std::size_t base_size = 0;  // ceil(sqrt n) = |B_0|
  std::vector<std::size_t> bucket_sizes;
  std::vector<std::size_t> bucket_offsets;
  std::size_t used = 0;
  double mix_eps = 0.0;
  std::size_t swap_unit = 0;  // elements of B_1 moved into B_2
  std::size_t end_swap = 0;   // |S_0|

  // Additive deviation of each end bucket in the unmixed construction,
  // 1 / (9 (L - 2)).
  double dev_delta() const { return 1.0 / (9.0 * static_cast<double>(levels - 2)); }
  // Per-element base mass inside bucket l.
  double base_value(std::size_t bucket) const;
  // Elements moved out of middle bucket l (1 <= l <= L-2).
  std::size_t outgoing(std::size_t bucket) const {
    return swap_unit << (bucket - 1);
  }
};

// Throws ConstructionError when n is too small for L >= 4 (or the swap
// sizes vanish) and ParameterError unless 0 < mix_eps <= 1/9.
TestingLbConfig testing_lb_config(std::size_t n, double mix_eps);

Pmf testing_lb_reference_pmf(const TestingLbConfig& cfg);

std::pair<Pmf, TestingLbConfig> testing_lb_reference(std::size_t n,
                                                     double mix_eps);

// Random cascading perturbation of the reference; the witness fixes every
// element outside the swapped sets.
HardInstance testing_lb_perturbation(const TestingLbConfig& cfg,
                                     std::uint64_t seed);

// Exact tv of every perturbation, from the swap sizes:
// 9 eps (L - 1) swap_unit / (12 (L - 2) ceil(sqrt n)).
double testing_lb_closed_form_tv(const TestingLbConfig& cfg);

}  // namespace permtest
