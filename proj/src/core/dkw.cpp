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

#include "permtest/core/dkw.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "permtest/error.hpp"

namespace permtest {

std::uint64_t dkw_sample_count(double delta, double beta) {
  if (!(delta > 0.0 && delta <= 1.0) || !(beta > 0.0 && beta < 1.0)) {
    std::ostringstream msg;
    msg << "dkw_sample_count needs 0 < delta <= 1 and 0 < beta < 1 (got delta="
        << delta << ", beta=" << beta << ")";
    throw ParameterError(msg.str());
  }
  const double m = std::ceil(std::log(2.0 / beta) / (2.0 * delta * delta));
  if (m >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    throw ParameterError("dkw_sample_count overflows a 64-bit count");
  }
  return m < 1.0 ? 1 : static_cast<std::uint64_t>(m);
}

}  // namespace permtest
