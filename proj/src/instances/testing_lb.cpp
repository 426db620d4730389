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

#include "permtest/instances/testing_lb.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "permtest/core/distance.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/error.hpp"

namespace permtest {
namespace {

constexpr double kMaxMixEps = 1.0 / 9.0;

std::size_t ceil_sqrt(std::size_t n) {
  auto a = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (a * a < n) ++a;
  while (a > 0 && (a - 1) * (a - 1) >= n) --a;
  return a;
}

// Largest L with (L 2^L)^2 <= n.
std::size_t largest_level(std::size_t n) {
  std::size_t level = 0;
  for (std::size_t next = 1; next < 60; ++next) {
    const unsigned __int128 side = static_cast<unsigned __int128>(next) << next;
    if (side * side > n) break;
    level = next;
  }
  return level;
}

double mixture_weight(double mix_eps) {
  const double w = 9.0 * mix_eps;
  return std::abs(w - 1.0) < 1e-12 ? 1.0 : w;
}

// The elements of one bucket in uniformly random order.
std::vector<std::size_t> shuffled_bucket(const TestingLbConfig& cfg,
                                         std::size_t bucket, Rng& rng) {
  std::vector<std::size_t> elems(cfg.bucket_sizes[bucket]);
  std::iota(elems.begin(), elems.end(), cfg.bucket_offsets[bucket]);
  for (std::size_t i = elems.size(); i > 1; --i) {
    std::swap(elems[i - 1], elems[rng.below(i)]);
  }
  return elems;
}

}  // namespace

double TestingLbConfig::base_value(std::size_t bucket) const {
  const double size = static_cast<double>(bucket_sizes[bucket]);
  if (bucket == 0 || bucket + 1 == levels) return 1.0 / (3.0 * size);
  return 1.0 / (3.0 * static_cast<double>(levels - 2) * size);
}

TestingLbConfig testing_lb_config(std::size_t n, double mix_eps) {
  if (!(mix_eps > 0.0 && mix_eps <= kMaxMixEps + 1e-12)) {
    std::ostringstream msg;
    msg << "mix_eps must lie in (0, 1/9], got " << mix_eps;
    throw ParameterError(msg.str());
  }
  TestingLbConfig cfg;
  cfg.n = n;
  cfg.mix_eps = mix_eps;
  cfg.levels = largest_level(n);
  if (cfg.levels < 4) {
    std::ostringstream msg;
    msg << "n = " << n << " gives L = " << cfg.levels
        << "; the construction needs L >= 4 (n >= 4096)";
    throw ConstructionError(msg.str());
  }
  const std::size_t L = cfg.levels;
  cfg.base_size = ceil_sqrt(n);
  for (std::size_t l = 0; l + 1 < L; ++l) {
    cfg.bucket_sizes.push_back(cfg.base_size << l);
  }
  cfg.bucket_sizes.push_back(2 * (L - 2) * cfg.bucket_sizes[L - 2]);
  std::size_t offset = 0;
  for (auto size : cfg.bucket_sizes) {
    cfg.bucket_offsets.push_back(offset);
    offset += size;
  }
  cfg.used = offset;
  if (cfg.used > n || 8 * cfg.used < n) {
    std::ostringstream msg;
    msg << "bucket sizes use " << cfg.used << " of " << n
        << " elements, outside [n/8, n]";
    throw ConstructionError(msg.str());
  }

  const std::size_t granule = 2 * (2 * L - 5);
  const std::size_t thirds = (2 * cfg.bucket_sizes[1]) / 3;
  cfg.swap_unit = (thirds / granule) * granule;
  cfg.end_swap = cfg.swap_unit / granule;
  if (cfg.end_swap == 0) {
    throw ConstructionError("n too small: the end-bucket swap would be empty");
  }
  return cfg;
}

Pmf testing_lb_reference_pmf(const TestingLbConfig& cfg) {
  const double weight = mixture_weight(cfg.mix_eps);
  const double floor_mass = (1.0 - weight) / static_cast<double>(cfg.n);
  std::vector<double> probs(cfg.n, floor_mass);
  for (std::size_t b = 0; b < cfg.levels; ++b) {
    const double value = floor_mass + weight * cfg.base_value(b);
    const auto first = cfg.bucket_offsets[b];
    for (std::size_t i = 0; i < cfg.bucket_sizes[b]; ++i) probs[first + i] = value;
  }
  return Pmf(std::move(probs));
}

std::pair<Pmf, TestingLbConfig> testing_lb_reference(std::size_t n,
                                                     double mix_eps) {
  auto cfg = testing_lb_config(n, mix_eps);
  auto pmf = testing_lb_reference_pmf(cfg);
  return {std::move(pmf), std::move(cfg)};
}

HardInstance testing_lb_perturbation(const TestingLbConfig& cfg,
                                     std::uint64_t seed) {
  const std::size_t L = cfg.levels;
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> order;
  order.reserve(L);
  for (std::size_t b = 0; b < L; ++b) order.push_back(shuffled_bucket(cfg, b, rng));

  std::vector<std::size_t> mapping(cfg.n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  auto swap_sets = [&mapping](const std::vector<std::size_t>& a, std::size_t a0,
                              const std::vector<std::size_t>& b, std::size_t b0,
                              std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      std::swap(mapping[a[a0 + j]], mapping[b[b0 + j]]);
    }
  };

  // Layout inside each shuffled middle bucket l: the first `incoming`
  // positions receive from bucket l-1, the next outgoing(l) go to l+1.
  // B_1's incoming part is T_1, matched with S_0 from B_0.
  swap_sets(order[0], 0, order[1], 0, cfg.end_swap);
  std::size_t incoming = cfg.end_swap;
  for (std::size_t b = 1; b + 1 < L; ++b) {
    const std::size_t out = cfg.outgoing(b);
    swap_sets(order[b], incoming, order[b + 1], 0, out);
    incoming = out;
  }

  Permutation witness(std::move(mapping));
  Pmf reference = testing_lb_reference_pmf(cfg);
  Pmf member = apply_permutation(reference, witness);
  const double tv = tv_distance(reference, member);

  nlohmann::ordered_json params;
  params["family"] = "testing-lb";
  params["n"] = cfg.n;
  params["mix_eps"] = cfg.mix_eps;
  params["L"] = cfg.levels;
  params["base_size"] = cfg.base_size;
  params["bucket_sizes"] = cfg.bucket_sizes;
  params["used"] = cfg.used;
  params["dev_delta"] = cfg.dev_delta();
  params["swap_unit"] = cfg.swap_unit;
  params["end_swap"] = cfg.end_swap;
  params["nominal_tv"] = cfg.mix_eps;
  params["closed_form_tv"] = testing_lb_closed_form_tv(cfg);
  params["seed"] = seed;
  return HardInstance{std::move(reference), std::move(member),
                      std::move(witness), tv, std::move(params)};
}

double testing_lb_closed_form_tv(const TestingLbConfig& cfg) {
  const double L = static_cast<double>(cfg.levels);
  return mixture_weight(cfg.mix_eps) * (L - 1.0) *
         static_cast<double>(cfg.swap_unit) /
         (12.0 * (L - 2.0) * static_cast<double>(cfg.base_size));
}

}  // namespace permtest
