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

namespace permtest {

// Fraction of `reps` simulations in which throwing m_samples balls into
// `blocks` equally likely blocks puts at least order + 1 balls into some
// block. Requires blocks >= 1 and reps >= 1 (ParameterError).
double birthday_load(std::size_t blocks, std::uint64_t m_samples,
                     std::size_t order, std::uint64_t seed, std::size_t reps);

// Same, with block i drawn with probability proportional to weights[i].
double birthday_load(std::span<const double> weights, std::uint64_t m_samples,
                     std::size_t order, std::uint64_t seed, std::size_t reps);

}  // namespace permtest
