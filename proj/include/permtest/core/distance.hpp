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

#include <span>

#include "permtest/core/pmf.hpp"

namespace permtest {

// Sum of |a(i) - b(i)|. Throws DimensionError on length mismatch.
double l1_distance(std::span<const double> a, std::span<const double> b);

// Total variation distance, (1/2) * L1.
double tv_distance(std::span<const double> a, std::span<const double> b);
double tv_distance(const Pmf& p, const Pmf& q);

// Largest prefix-sum gap max_k |sum_{i<=k} p(i) - sum_{i<=k} q(i)| over the
// natural order of the domain.
double kolmogorov_distance(std::span<const double> a,
                           std::span<const double> b);
double kolmogorov_distance(const Pmf& p, const Pmf& q);

}  // namespace permtest
