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

#include "permtest/core/distance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permtest/error.hpp"

namespace permtest {
namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    std::ostringstream msg;
    msg << "domain sizes differ: " << a << " vs " << b;
    throw DimensionError(msg.str());
  }
}

}  // namespace

double l1_distance(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  return 0.5 * l1_distance(a, b);
}

double tv_distance(const Pmf& p, const Pmf& q) {
  return tv_distance(p.probs(), q.probs());
}

double kolmogorov_distance(std::span<const double> a,
                           std::span<const double> b) {
  require_same_length(a.size(), b.size());
  // Accumulate the difference directly so equal prefixes cancel exactly.
  double gap = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    gap += a[i] - b[i];
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

double kolmogorov_distance(const Pmf& p, const Pmf& q) {
  return kolmogorov_distance(p.probs(), q.probs());
}

}  // namespace permtest
