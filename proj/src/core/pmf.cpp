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

#include "permtest/core/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "permtest/error.hpp"

namespace permtest {

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidPmf("pmf must have at least one entry");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double v = probs_[i];
    if (!(v >= 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "pmf entry " << i << " is not a finite non-negative number (" << v
          << ")";
      throw InvalidPmf(msg.str());
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pmf entries sum to " << total << ", not 1";
    throw InvalidPmf(msg.str());
  }
}

Pmf Pmf::normalized(std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidPmf("cannot normalize weights with non-positive total");
  }
  for (double& w : weights) w /= total;
  return Pmf(std::move(weights));
}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw InvalidPmf("uniform pmf needs n >= 1");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw InvalidPmf("point mass outside the domain");
  std::vector<double> probs(n, 0.0);
  probs[at] = 1.0;
  return Pmf(std::move(probs));
}

std::vector<double> Pmf::sorted() const {
  std::vector<double> out = probs_;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace permtest
