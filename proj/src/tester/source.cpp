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

#include "permtest/tester/source.hpp"

#include <sstream>

#include "permtest/error.hpp"

namespace permtest {
namespace {

void check_partition(std::span<const std::uint32_t> cell_of,
                     std::size_t domain) {
  if (cell_of.size() != domain) {
    std::ostringstream msg;
    msg << "partition covers " << cell_of.size()
        << " elements but the source draws from a domain of size " << domain;
    throw DimensionError(msg.str());
  }
}

}  // namespace

PmfSource::PmfSource(const Pmf& p) : table_(p.probs()) {}

void PmfSource::histogram(std::span<const std::uint32_t> cell_of,
                          std::span<std::uint64_t> counts, std::uint64_t m,
                          Rng& rng) const {
  check_partition(cell_of, domain_size());
  const std::uint32_t* cells = cell_of.data();
  std::uint64_t* out = counts.data();
  for (std::uint64_t draw = 0; draw < m; ++draw) ++out[cells[table_(rng)]];
}

void MultinomialSource::histogram(std::span<const std::uint32_t> cell_of,
                                  std::span<std::uint64_t> counts,
                                  std::uint64_t m, Rng& rng) const {
  check_partition(cell_of, domain_size());
  std::vector<double> cell_mass(counts.size(), 0.0);
  for (std::size_t i = 0; i < cell_of.size(); ++i) cell_mass[cell_of[i]] += p_[i];
  const auto drawn = multinomial_counts(cell_mass, m, rng);
  for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += drawn[c];
}

RecordedSource::RecordedSource(SampleSet samples, std::size_t n)
    : samples_(std::move(samples)), n_(n) {
  for (auto d : samples_.draws) {
    if (d >= n_) {
      std::ostringstream msg;
      msg << "recorded draw " << d << " outside domain of size " << n_;
      throw DimensionError(msg.str());
    }
  }
}

void RecordedSource::histogram(std::span<const std::uint32_t> cell_of,
                               std::span<std::uint64_t> counts,
                               std::uint64_t m, Rng& /*rng*/) const {
  check_partition(cell_of, n_);
  if (m > samples_.draws.size()) {
    std::ostringstream msg;
    msg << "requested " << m << " draws but only " << samples_.draws.size()
        << " are recorded";
    throw EmptySampleError(msg.str());
  }
  for (std::uint64_t k = 0; k < m; ++k) ++counts[cell_of[samples_.draws[k]]];
}

}  // namespace permtest
