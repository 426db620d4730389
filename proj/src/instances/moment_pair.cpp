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

#include "permtest/instances/moment_pair.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "permtest/error.hpp"

namespace permtest {
namespace {

constexpr std::size_t kMaxOrder = 4;
constexpr std::size_t kMaxK = 8;

struct Entry {
  std::array<std::int64_t, kMaxOrder> sig{};
  std::array<std::uint8_t, kMaxK> values{};
};

// C(V + k, k), saturating.
std::uint64_t multiset_count(std::int64_t max_value, std::size_t k) {
  long double count = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    count = count * static_cast<long double>(max_value + static_cast<std::int64_t>(i)) /
            static_cast<long double>(i);
  }
  return count > 1e18L ? UINT64_MAX : static_cast<std::uint64_t>(count + 0.5L);
}

std::int64_t ipow(std::int64_t x, std::size_t j) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < j; ++i) r *= x;
  return r;
}

struct Best {
  bool found = false;
  std::size_t k = 0;
  std::vector<std::int64_t> a, b;
  std::int64_t diff = 0;   // sum |a_i - b_i|
  std::int64_t total = 0;  // S
};

void search_k(std::size_t k, std::size_t order, std::int64_t max_value,
              std::uint64_t& comparisons, std::uint64_t max_comparisons,
              Best& best) {
  std::vector<Entry> entries;
  entries.reserve(multiset_count(max_value, k));
  std::vector<std::int64_t> cur(k, 0);
  while (true) {
    const std::int64_t total = std::accumulate(cur.begin(), cur.end(), std::int64_t{0});
    if (total > 0) {
      Entry e;
      for (std::size_t j = 0; j < order; ++j) {
        for (auto v : cur) e.sig[j] += ipow(v, j + 1);
      }
      for (std::size_t i = 0; i < k; ++i) e.values[i] = static_cast<std::uint8_t>(cur[i]);
      entries.push_back(e);
    }
    // Next non-decreasing tuple.
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == max_value) --pos;
    if (pos == 0) break;
    const std::int64_t v = cur[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < k; ++i) cur[i] = v;
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.sig < y.sig; });

  for (std::size_t lo = 0; lo < entries.size();) {
    std::size_t hi = lo + 1;
    while (hi < entries.size() && entries[hi].sig == entries[lo].sig) ++hi;
    const std::int64_t total = entries[lo].sig[0];
    for (std::size_t i = lo; i < hi && comparisons < max_comparisons; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) {
        if (++comparisons > max_comparisons) break;
        std::int64_t diff = 0;
        for (std::size_t t = 0; t < k; ++t) {
          diff += std::abs(static_cast<std::int64_t>(entries[i].values[t]) -
                           static_cast<std::int64_t>(entries[j].values[t]));
        }
        // Compare diff / (2 total) against the best so far; strict, so the
        // first pair found at the smallest k survives ties.
        if (!best.found || diff * best.total > best.diff * total) {
          best.found = true;
          best.k = k;
          best.diff = diff;
          best.total = total;
          best.a.assign(entries[i].values.begin(), entries[i].values.begin() + static_cast<std::ptrdiff_t>(k));
          best.b.assign(entries[j].values.begin(), entries[j].values.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
    }
    lo = hi;
  }
}

Pmf normalized_pmf(const std::vector<std::int64_t>& values, std::int64_t total) {
  std::vector<double> probs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    probs[i] = static_cast<double>(values[i]) / static_cast<double>(total);
  }
  return Pmf::normalized(std::move(probs));
}

}  // namespace

std::string MomentPair::power_sum_string(std::size_t j) const {
  if (j < 1 || j > value_power_sums.size()) {
    throw ParameterError("power sum index out of range");
  }
  std::ostringstream out;
  out << value_power_sums[j - 1] << "/" << total;
  if (j > 1) out << "^" << j;
  return out.str();
}

bool power_sums_match(std::span<const std::int64_t> a,
                      std::span<const std::int64_t> b, std::size_t order) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 1; j <= order; ++j) {
    __int128 sa = 0;
    __int128 sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      __int128 x = 1;
      __int128 y = 1;
      for (std::size_t e = 0; e < j; ++e) {
        x *= a[i];
        y *= b[i];
      }
      sa += x;
      sb += y;
    }
    if (sa != sb) return false;
  }
  return true;
}

MomentPair find_moment_pair(std::size_t k_max, std::size_t order,
                            const SearchBudget& budget) {
  if (order < 1 || order > kMaxOrder) {
    throw ParameterError("moment order must lie in [1, 4]");
  }
  if (k_max < order + 2 || k_max > kMaxK) {
    throw ParameterError("k_max must lie in [order + 2, 8]");
  }
  if (budget.max_value < 1 || budget.max_value > 255) {
    throw ParameterError("max_value must lie in [1, 255]");
  }

  Best best;
  std::uint64_t remaining = budget.max_multisets;
  std::uint64_t comparisons = 0;
  for (std::size_t k = 2; k <= k_max; ++k) {
    const std::uint64_t share = remaining / (k_max - k + 1);
    std::int64_t v = budget.max_value;
    while (v >= 1 && multiset_count(v, k) > share) --v;
    if (v < 1) continue;
    remaining -= multiset_count(v, k);
    search_k(k, order, v, comparisons, budget.max_comparisons, best);
  }
  if (!best.found) {
    std::ostringstream msg;
    msg << "no power-sum matched pair of order " << order << " with k <= "
        << k_max << " within " << budget.max_multisets << " multisets, values <= "
        << budget.max_value;
    throw NotFoundError(msg.str());
  }
  if (!power_sums_match(best.a, best.b, order)) {
    throw ConstructionError("internal: moment pair failed the exact check");
  }

  std::vector<std::int64_t> sums;
  for (std::size_t j = 1; j <= order; ++j) {
    std::int64_t s = 0;
    for (auto x : best.a) s += ipow(x, j);
    sums.push_back(s);
  }
  const std::int64_t g = std::gcd(best.diff, 2 * best.total);
  MomentPair pair{best.k,
                  order,
                  best.a,
                  best.b,
                  best.total,
                  std::move(sums),
                  normalized_pmf(best.a, best.total),
                  normalized_pmf(best.b, best.total),
                  best.diff / g,
                  2 * best.total / g};
  return pair;
}

}  // namespace permtest
