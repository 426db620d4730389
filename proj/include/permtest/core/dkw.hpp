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

#include <cstdint>

namespace permtest {

// Number of samples after which the empirical distribution is within
// Kolmogorov distance `delta` of the truth except with probability `beta`,
// using the two-sided tail 2 exp(-2 m delta^2):
//
//   m = ceil(ln(2 / beta) / (2 delta^2)).
//
// Requires 0 < delta <= 1 and 0 < beta < 1 (ParameterError otherwise).
std::uint64_t dkw_sample_count(double delta, double beta);

}  // namespace permtest
