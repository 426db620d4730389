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

#include "permtest/tester/buckets.hpp"

#include <cmath>
#include <sstream>

#include "permtest/core/distance.hpp"
#include "permtest/core/dkw.hpp"
#include "permtest/error.hpp"

namespace permtest {
namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, 1], got " << epsilon;
    throw ParameterError(msg.str());
  }
}

std::size_t bucket_count_for(std::size_t n, double epsilon) {
  const double ratio = std::log(4.0 * static_cast<double>(n) / epsilon) /
                       std::log1p(epsilon / 4.0);
  return 1 + static_cast<std::size_t>(std::ceil(ratio));
}

}  // namespace

TesterParams compute_params(std::size_t n, double epsilon) {
  check_epsilon(epsilon);
  if (n < 2) throw ParameterError("the identity tester needs n >= 2");
  TesterParams params;
  params.buckets = bucket_count_for(n, epsilon);
  params.alg_delta = epsilon / (4.0 * static_cast<double>(params.buckets - 1));
  params.learner_beta = 0.1;
  params.learner_samples =
      dkw_sample_count(params.alg_delta / 3.0, params.learner_beta);
  return params;
}

BucketPartition::BucketPartition(const Pmf& q, double epsilon)
    : epsilon_(epsilon), cells_(q.size(), 0) {
  check_epsilon(epsilon);
  const std::size_t buckets = bucket_count_for(q.size(), epsilon);
  const double ratio = 1.0 + epsilon / 4.0;
  const double log_ratio = std::log1p(epsilon / 4.0);
  const auto tail = static_cast<std::uint32_t>(buckets - 1);
  reference_mass_.assign(buckets, 0.0);

  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = q[i];
    std::uint32_t cell = tail;
    if (v > 0.0) {
      // Label l = floor(log(1/v) / log r) + 1, then fix the rounding at the
      // band edges against the defining inequalities.
      const double x = -std::log(v) / log_ratio;
      double label = std::floor(x) + 1.0;
      if (label < 1.0) label = 1.0;
      while (label > 1.0 && v > std::pow(ratio, -(label - 1.0))) label -= 1.0;
      while (v <= std::pow(ratio, -label)) label += 1.0;
      if (label < static_cast<double>(buckets)) {
        cell = static_cast<std::uint32_t>(label) - 1;
      }
    }
    cells_[i] = cell;
    reference_mass_[cell] += v;
  }
}

std::vector<double> BucketPartition::bucket_mass(
    std::span<const double> p) const {
  if (p.size() != cells_.size()) {
    throw DimensionError("pmf and bucket partition have different domains");
  }
  std::vector<double> mass(bucket_count(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) mass[cells_[i]] += p[i];
  return mass;
}

}  // namespace permtest
