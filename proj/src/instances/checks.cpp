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

#include "permtest/instances/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permtest/core/rng.hpp"
#include "permtest/instances/cfr.hpp"
#include "permtest/instances/moment_pair.hpp"
#include "permtest/instances/testing_lb.hpp"

namespace permtest {
namespace {

constexpr double kTolerance = 1e-12;

double half_l1(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total / 2.0;
}

Pmf random_pmf(std::size_t k, Rng& rng) {
  std::vector<double> w(k);
  // Exponential weights give a uniform point of the simplex.
  for (auto& x : w) x = -std::log1p(-rng.uniform01());
  return Pmf::normalized(std::move(w));
}

ExactCheck gap_check(const std::string& name, const Pmf& p, const Pmf& q) {
  const CfrTriple t = build_cfr(p, q);
  const double tv_f = half_l1(t.f.probs(), t.r.probs());
  const double tv_c = half_l1(t.c.probs(), t.r.probs());
  const double tv_pq = half_l1(t.base_p, t.base_q);
  const double k = static_cast<double>(t.k);
  const double slack = tv_f - tv_c - tv_pq / k;
  std::ostringstream detail;
  detail.precision(17);
  detail << "k=" << t.k << " tv(f,r)=" << tv_f << " tv(c,r)=" << tv_c
         << " tv(p,q)/k=" << tv_pq / k << " slack=" << slack;
  return {name, slack >= -kTolerance, detail.str()};
}

}  // namespace

std::vector<ExactCheck> verify_cfr_gap(std::size_t pairs, std::uint64_t seed) {
  std::vector<ExactCheck> checks;
  {
    const Pmf p({0.5, 0.5});
    const Pmf q({0.25, 0.75});
    const CfrTriple t = build_cfr(p, q);
    const double tv_f = half_l1(t.f.probs(), t.r.probs());
    const double tv_c = half_l1(t.c.probs(), t.r.probs());
    const double gap = tv_f - tv_c;
    std::ostringstream detail;
    detail << "tv(c,r)=" << tv_c << " tv(f,r)=" << tv_f << " gap=" << gap;
    const bool ok = std::abs(tv_c - 0.125) <= kTolerance &&
                    std::abs(tv_f - 0.25) <= kTolerance &&
                    std::abs(gap - 0.125) <= kTolerance;
    checks.push_back({"cfr k=2 example gap 1/8", ok, detail.str()});
  }
  for (std::size_t i = 0; i < pairs; ++i) {
    Rng rng(derive_seed(seed, i));
    const std::size_t k = 2 + rng.below(7);
    const Pmf p = random_pmf(k, rng);
    const Pmf q = random_pmf(k, rng);
    checks.push_back(gap_check("cfr gap pair " + std::to_string(i), p, q));
  }
  return checks;
}

std::vector<ExactCheck> verify_instance_integrity(std::size_t count,
                                                  std::uint64_t seed) {
  std::vector<ExactCheck> checks;
  const MomentPair pair = find_moment_pair(4, 2);
  const CfrTriple triple = build_cfr(pair.p, pair.q);
  const TestingLbConfig lb = testing_lb_config(std::size_t{1} << 12, 0.1);

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const std::size_t blocks = 1 + i % 5;
    const int C = 2 + static_cast<int>(i % 3);
    std::string name;
    HardInstance inst = [&]() -> HardInstance {
      switch (i % 5) {
        case 0:
          name = "testing-lb";
          return testing_lb_perturbation(lb, s);
        case 1:
          name = "cfr-close";
          return family_member(triple, MemberKind::kClose, blocks, s);
        case 2:
          name = "cfr-far";
          return family_member(triple, MemberKind::kFar, blocks, s);
        case 3:
          name = "mult-close";
          return multiplicative_instance(C, blocks, MemberKind::kClose, s);
        default:
          name = "mult-far";
          return multiplicative_instance(C, blocks, MemberKind::kFar, s);
      }
    }();
    const auto violation = find_violation(inst, kTolerance);
    checks.push_back({"instance " + std::to_string(i) + " " + name,
                      !violation.has_value(), violation.value_or("")});
  }
  return checks;
}

}  // namespace permtest
