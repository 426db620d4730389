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

#include "permtest/core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "permtest/error.hpp"

namespace permtest {
namespace {

constexpr double kTwo53 = 9007199254740992.0;

}  // namespace

AliasTable::AliasTable(std::span<const double> weights)
    : threshold_(weights.size(), 0), alias_(weights.size(), 0) {
  const std::size_t n = weights.size();
  if (n == 0) throw InvalidPmf("alias table needs at least one weight");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InvalidPmf("alias table weights sum to zero");

  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t lo = small.back();
    small.pop_back();
    const std::uint32_t hi = large.back();
    threshold_[lo] = static_cast<std::uint64_t>(scaled[lo] * kTwo53);
    alias_[lo] = hi;
    scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
    if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
  // Leftovers are 1 up to rounding, except zero weights, which must never
  // be returned.
  std::uint32_t fallback = 0;
  while (weights[fallback] <= 0.0) ++fallback;
  for (auto* rest : {&large, &small}) {
    for (auto i : *rest) {
      const bool positive = weights[i] > 0.0;
      threshold_[i] = positive ? static_cast<std::uint64_t>(kTwo53) : 0;
      alias_[i] = positive ? i : fallback;
    }
  }
}

SampleSet sample(const Pmf& p, std::uint64_t m, std::uint64_t seed) {
  SampleSet out;
  out.seed = seed;
  out.draws.resize(m);
  if (m == 0) return out;
  const AliasTable table(p.probs());
  Rng rng(seed);
  for (auto& d : out.draws) d = table(rng);
  return out;
}

Pmf empirical_pmf(const SampleSet& s, std::size_t n) {
  if (s.draws.empty()) {
    throw EmptySampleError("empirical pmf of an empty sample set");
  }
  std::vector<double> counts(n, 0.0);
  for (auto d : s.draws) {
    if (d >= n) {
      std::ostringstream msg;
      msg << "draw " << d << " outside domain of size " << n;
      throw DimensionError(msg.str());
    }
    counts[d] += 1.0;
  }
  const double m = static_cast<double>(s.draws.size());
  for (double& c : counts) c /= m;
  return Pmf(std::move(counts));
}

std::vector<std::uint64_t> multinomial_counts(std::span<const double> probs,
                                              std::uint64_t m, Rng& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  if (probs.empty()) return counts;
  std::size_t last = probs.size() - 1;
  while (last > 0 && probs[last] <= 0.0) --last;
  // Suffix sums, so each conditional share is computed without drift.
  std::vector<double> tail(last + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = last + 1; i-- > 0;) {
    acc += std::max(probs[i], 0.0);
    tail[i] = acc;
  }
  std::uint64_t remaining = m;
  for (std::size_t i = 0; i < last && remaining > 0; ++i) {
    if (probs[i] <= 0.0) continue;
    const double share = std::min(1.0, probs[i] / tail[i]);
    std::uint64_t x = remaining;
    if (share < 1.0) {
      std::binomial_distribution<std::uint64_t> binom(remaining, share);
      x = binom(rng);
    }
    counts[i] = x;
    remaining -= x;
  }
  counts[last] += remaining;
  return counts;
}

}  // namespace permtest
