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

#include "permtest/instances/multiplicative.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "permtest/core/distance.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/error.hpp"

namespace permtest {
namespace {

using Rational = boost::rational<std::int64_t>;

std::string str(const Rational& x) {
  std::ostringstream out;
  out << x.numerator() << "/" << x.denominator();
  return out.str();
}

std::vector<std::size_t> bucket_starts(const MultiplicativeConfig& cfg) {
  std::vector<std::size_t> starts;
  std::size_t offset = 0;
  for (auto size : cfg.bucket_sizes) {
    starts.push_back(offset);
    offset += static_cast<std::size_t>(size);
  }
  return starts;
}

std::vector<double> to_values(const std::vector<std::int64_t>& numerators,
                              std::int64_t denominator) {
  std::vector<double> out(numerators.size());
  const auto d = static_cast<double>(denominator);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(numerators[i]) / d;
  }
  return out;
}

}  // namespace

MultiplicativeConfig multiplicative_config(int C, std::size_t blocks) {
  if (C < 2 || C > 20) throw ParameterError("C must be an integer in [2, 20]");
  if (blocks < 1) throw ParameterError("the construction needs blocks >= 1");
  MultiplicativeConfig cfg;
  cfg.C = C;
  cfg.blocks = blocks;
  const std::int64_t two_c = std::int64_t{1} << C;
  const std::int64_t half = two_c / 2;  // 2^{C-1}
  cfg.mval = two_c - 1;
  cfg.s = cfg.mval * (4 * C - 1) * half;
  cfg.w = cfg.mval * (2 * two_c + half - 3);
  cfg.bucket_sizes.push_back(cfg.mval);
  for (int i = 1; i <= C - 1; ++i) {
    cfg.bucket_sizes.push_back(cfg.mval * (std::int64_t{1} << (i + 1)));
  }
  cfg.bucket_sizes.push_back(cfg.mval * half);
  return cfg;
}

MultiplicativeBlock multiplicative_block(const MultiplicativeConfig& cfg) {
  const int C = cfg.C;
  const std::int64_t two_c = std::int64_t{1} << C;
  const std::int64_t half = two_c / 2;
  const auto w = static_cast<std::size_t>(cfg.w);
  const auto starts = bucket_starts(cfg);

  MultiplicativeBlock block;
  block.reference.resize(w);
  block.close.resize(w);
  block.far.resize(w);
  block.bucket_of.resize(w);
  for (int b = 0; b <= C; ++b) {
    for (std::int64_t j = 0; j < cfg.bucket_sizes[b]; ++j) {
      block.bucket_of[starts[b] + static_cast<std::size_t>(j)] = b;
    }
  }

  // B_0: r = 2^C; close = 1 on the first 2^{C-1}, 2^C on the rest;
  // far = 2^{C-1}.
  for (std::int64_t j = 0; j < cfg.bucket_sizes[0]; ++j) {
    const auto i = starts[0] + static_cast<std::size_t>(j);
    block.reference[i] = two_c;
    block.close[i] = j < half ? 1 : two_c;
    block.far[i] = half;
  }
  // Middle B_i: r = close = 2^{C-i}; far splits mval 2^i, mval 2^{i-1},
  // mval 2^{i-1} elements at 2^{C-i-1}, 2^{C-i}, 2^{C-i+1}.
  for (int b = 1; b <= C - 1; ++b) {
    const std::int64_t value = std::int64_t{1} << (C - b);
    const std::int64_t first = cfg.mval << b;
    const std::int64_t second = first + (cfg.mval << (b - 1));
    for (std::int64_t j = 0; j < cfg.bucket_sizes[b]; ++j) {
      const auto i = starts[b] + static_cast<std::size_t>(j);
      block.reference[i] = value;
      block.close[i] = value;
      block.far[i] = j < first ? value / 2 : (j < second ? value : 2 * value);
    }
  }
  // B_C: r = 1; close = 1 on the first (mval-1) 2^{C-1}, 2^C on the last
  // 2^{C-1}; far = 2.
  for (std::int64_t j = 0; j < cfg.bucket_sizes[C]; ++j) {
    const auto i = starts[C] + static_cast<std::size_t>(j);
    block.reference[i] = 1;
    block.close[i] = j < (cfg.mval - 1) * half ? 1 : two_c;
    block.far[i] = 2;
  }
  return block;
}

HardInstance multiplicative_instance(int C, std::size_t blocks,
                                     MemberKind which, std::uint64_t seed) {
  const auto cfg = multiplicative_config(C, blocks);
  const auto block = multiplicative_block(cfg);
  const auto w = static_cast<std::size_t>(cfg.w);
  const auto starts = bucket_starts(cfg);
  const auto& member_block =
      which == MemberKind::kClose ? block.close : block.far;

  // Map realizing member_block = r ∘ base on one block.
  const auto base = find_relabeling(to_values(block.reference, cfg.s),
                                    to_values(member_block, cfg.s));
  if (!base) {
    throw ConstructionError("member block is not a rearrangement of r");
  }

  // Every reference entry is numerator / (s t), computed the same way so
  // rearranged entries compare equal bit for bit.
  const std::int64_t denom = cfg.s * static_cast<std::int64_t>(blocks);
  const std::vector<double> block_values = to_values(block.reference, denom);
  const std::size_t n = cfg.n();
  std::vector<double> reference(n);
  std::vector<std::size_t> mapping(n);
  std::vector<std::size_t> local(w);
  for (std::size_t t = 0; t < blocks; ++t) {
    std::iota(local.begin(), local.end(), std::size_t{0});
    Rng rng(derive_seed(seed, t));
    for (int b = 0; b <= C; ++b) {
      const auto size = static_cast<std::size_t>(cfg.bucket_sizes[b]);
      auto first = local.begin() + static_cast<std::ptrdiff_t>(starts[b]);
      for (std::size_t i = size; i > 1; --i) {
        std::swap(first[static_cast<std::ptrdiff_t>(i - 1)],
                  first[static_cast<std::ptrdiff_t>(rng.below(i))]);
      }
    }
    const std::size_t offset = t * w;
    for (std::size_t i = 0; i < w; ++i) {
      reference[offset + i] = block_values[i];
      mapping[offset + i] = offset + (*base)[local[i]];
    }
  }

  Pmf ref(std::move(reference));
  Permutation witness(std::move(mapping));
  Pmf member = apply_permutation(ref, witness);
  const double tv = tv_distance(ref, member);

  nlohmann::ordered_json params;
  params["family"] = which == MemberKind::kClose ? "mult-close" : "mult-far";
  params["C"] = C;
  params["blocks"] = blocks;
  params["n"] = n;
  params["m"] = cfg.mval;
  params["s"] = cfg.s;
  params["w"] = cfg.w;
  params["bucket_sizes"] = cfg.bucket_sizes;
  params["true_tv_exact"] = which == MemberKind::kClose
                                ? "1/" + std::to_string(4 * C - 1)
                                : std::to_string(C) + "/" +
                                      std::to_string(4 * C - 1);
  params["seed"] = seed;
  return HardInstance{std::move(ref), std::move(member), std::move(witness), tv,
                      std::move(params)};
}

std::vector<ExactCheck> verify_multiplicative_exact(int C) {
  const auto cfg = multiplicative_config(C, 1);
  const auto block = multiplicative_block(cfg);
  const std::string tag = "C=" + std::to_string(C) + " ";
  std::vector<ExactCheck> checks;
  auto add = [&checks, &tag](std::string name, bool ok, std::string detail) {
    checks.push_back({tag + std::move(name), ok, std::move(detail)});
  };

  auto total = [](const std::vector<std::int64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
  };
  for (const auto* v : {&block.reference, &block.close, &block.far}) {
    const char* which = v == &block.reference ? "r"
                        : v == &block.close   ? "close"
                                              : "far";
    const Rational mass(total(*v), cfg.s);
    add(std::string("normalization of ") + which, mass == Rational(1),
        "total mass " + str(mass));
  }

  auto sorted = [](std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto sorted_r = sorted(block.reference);
  add("close is a rearrangement of r", sorted(block.close) == sorted_r, "");
  add("far is a rearrangement of r", sorted(block.far) == sorted_r, "");

  std::vector<std::int64_t> close_mass(C + 1, 0);
  std::vector<std::int64_t> far_mass(C + 1, 0);
  for (std::size_t i = 0; i < block.reference.size(); ++i) {
    close_mass[block.bucket_of[i]] += block.close[i];
    far_mass[block.bucket_of[i]] += block.far[i];
  }
  {
    bool equal = true;
    std::ostringstream detail;
    for (int b = 0; b <= C; ++b) {
      equal = equal && close_mass[b] == far_mass[b];
      detail << "B" << b << ": " << str(Rational(close_mass[b], cfg.s)) << " vs "
             << str(Rational(far_mass[b], cfg.s)) << "; ";
    }
    add("equal bucket masses", equal, detail.str());
  }

  auto exact_tv = [&](const std::vector<std::int64_t>& other) {
    std::int64_t l1 = 0;
    for (std::size_t i = 0; i < other.size(); ++i) {
      l1 += std::llabs(block.reference[i] - other[i]);
    }
    return Rational(l1, 2 * cfg.s);
  };
  const Rational tv_far = exact_tv(block.far);
  const Rational tv_close = exact_tv(block.close);
  add("tv(r, far) = C/(4C-1)", tv_far == Rational(C, 4 * C - 1),
      "tv = " + str(tv_far));
  {
    const Rational bound(2, C + 1);
    bool ok = true;
    std::ostringstream detail;
    for (int b = 0; b <= C; ++b) {
      const Rational pm(close_mass[b], cfg.s);
      const Rational qm(far_mass[b], cfg.s);
      ok = ok && pm <= bound && qm <= bound;
      detail << "B" << b << "=" << str(pm) << " ";
    }
    add("bucket masses <= 2/(C+1)", ok, detail.str());
  }
  add("tv(r, close) = 1/(4C-1)", tv_close == Rational(1, 4 * C - 1),
      "tv = " + str(tv_close));
  return checks;
}

}  // namespace permtest
