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
#include <optional>
#include <span>

#include "permtest/core/pmf.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/core/sampling.hpp"

namespace permtest {

// Sample access to an unknown distribution over [n].
//
// Testers only ever need the histogram of the draws over a partition of the
// domain, so that is the primitive: for m fresh draws x, add one to
// counts[cell_of[x]].
class SampleSource {
 public:
  virtual ~SampleSource() = default;

  virtual std::size_t domain_size() const = 0;

  virtual void histogram(std::span<const std::uint32_t> cell_of,
                         std::span<std::uint64_t> counts, std::uint64_t m,
                         Rng& rng) const = 0;

  // Number of draws the source can provide; nullopt means unbounded.
  virtual std::optional<std::uint64_t> capacity() const { return std::nullopt; }
};

// Simulated i.i.d. draws, one alias-table lookup per draw.
class PmfSource final : public SampleSource {
 public:
  explicit PmfSource(const Pmf& p);

  std::size_t domain_size() const override { return table_.size(); }
  void histogram(std::span<const std::uint32_t> cell_of,
                 std::span<std::uint64_t> counts, std::uint64_t m,
                 Rng& rng) const override;

 private:
  AliasTable table_;
};

// Simulated i.i.d. draws aggregated through the partition: the cell
// histogram of m draws is Multinomial(m, p(cells)), sampled in O(cells)
// time regardless of m. Same distribution as PmfSource.
class MultinomialSource final : public SampleSource {
 public:
  explicit MultinomialSource(const Pmf& p) : p_(p) {}

  std::size_t domain_size() const override { return p_.size(); }
  void histogram(std::span<const std::uint32_t> cell_of,
                 std::span<std::uint64_t> counts, std::uint64_t m,
                 Rng& rng) const override;

 private:
  Pmf p_;
};

// Replays a fixed sample set in order; the rng is not used.
class RecordedSource final : public SampleSource {
 public:
  RecordedSource(SampleSet samples, std::size_t n);

  std::size_t domain_size() const override { return n_; }
  void histogram(std::span<const std::uint32_t> cell_of,
                 std::span<std::uint64_t> counts, std::uint64_t m,
                 Rng& rng) const override;
  std::optional<std::uint64_t> capacity() const override {
    return samples_.draws.size();
  }

 private:
  SampleSet samples_;
  std::size_t n_;
};

}  // namespace permtest
