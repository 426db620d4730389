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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "permtest/core/distance.hpp"
#include "permtest/core/permutation.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/error.hpp"
#include "permtest/instances/multiplicative.hpp"
#include "permtest/tester/buckets.hpp"
#include "permtest/tester/identity_test.hpp"
#include "permtest/tester/source.hpp"
#include "permtest/tester/tolerant_test.hpp"

namespace permtest {
namespace {

TEST(ParamsTest, HandEvaluatedValues) {
  struct Case {
    std::size_t n;
    double eps;
    std::size_t L;
    double inv_delta;
  };
  for (const Case& c : {Case{4, 1.0, 14, 52}, Case{1024, 0.5, 78, 616},
                        Case{4096, 1.0 / 3.0, 136, 1620}}) {
    const auto p = compute_params(c.n, c.eps);
    EXPECT_EQ(p.buckets, c.L) << c.n;
    EXPECT_NEAR(p.alg_delta, 1.0 / c.inv_delta, 1e-15) << c.n;
    const double third = p.alg_delta / 3.0;
    EXPECT_EQ(p.learner_samples,
              static_cast<std::uint64_t>(std::ceil(std::log(20.0) / (2.0 * third * third))));
  }
  // About 3.5e7 draws at n = 4096, eps = 1/3.
  EXPECT_NEAR(static_cast<double>(compute_params(4096, 1.0 / 3.0).learner_samples), 3.54e7,
              0.01e7);
}

TEST(ParamsTest, RejectsBadInput) {
  EXPECT_THROW(compute_params(1, 0.5), ParameterError);
  EXPECT_THROW(compute_params(10, 0.0), ParameterError);
  EXPECT_THROW(compute_params(10, 1.5), ParameterError);
}

TEST(BucketsTest, WorkedExample) {
  const BucketPartition b(Pmf({0.5, 0.25, 0.125, 0.125}), 1.0);
  EXPECT_EQ(b.bucket_count(), 14u);
  EXPECT_EQ(b.label(0), 4u);
  EXPECT_EQ(b.label(1), 7u);
  EXPECT_EQ(b.label(2), 10u);
  EXPECT_EQ(b.label(3), 10u);
}

TEST(BucketsTest, MatchesLabelOracle) {
  std::mt19937_64 gen(31);
  for (double eps : {1.0, 0.5, 0.1}) {
    for (int rep = 0; rep < 20; ++rep) {
      auto probs = oracle::random_simplex(40, gen);
      probs[0] += probs[1];
      probs[1] = 0.0;  // zero mass goes to the tail
      const Pmf q(probs);
      const BucketPartition b(q, eps);
      const std::size_t L = compute_params(40, eps).buckets;
      ASSERT_EQ(b.bucket_count(), L);
      for (std::size_t i = 0; i < 40; ++i) {
        EXPECT_EQ(b.label(i), oracle::bucket_label(q[i], eps, L)) << "i=" << i;
      }
      EXPECT_EQ(b.label(1), L);
    }
  }
}

TEST(BucketsTest, MassBookkeeping) {
  std::mt19937_64 gen(32);
  const Pmf q(oracle::random_simplex(64, gen));
  const BucketPartition b(q, 0.5);
  const auto ref = b.reference_mass();
  EXPECT_NEAR(std::accumulate(ref.begin(), ref.end(), 0.0), 1.0, 1e-12);
  const auto again = b.bucket_mass(q.probs());
  for (std::size_t c = 0; c < again.size(); ++c) EXPECT_NEAR(again[c], ref[c], 1e-15);
  // Elements in one bucket have values within a factor (1 + eps/4).
  for (std::size_t i = 0; i < 64; ++i) {
    for (std::size_t j = 0; j < 64; ++j) {
      if (b.cell(i) == b.cell(j) && b.label(i) < b.bucket_count()) {
        EXPECT_LE(q[i] / q[j], 1.125 + 1e-12);
      }
    }
  }
}

// Bucket-respecting relabelings do not move bucket masses, so the exact
// suffix gap is zero and only sampling noise can trigger a NO.
TEST(IdentityTest, BucketRespectingPermutationHasZeroGap) {
  const auto inst = multiplicative_instance(2, 5, MemberKind::kClose, 1);
  const Pmf& q = inst.reference;
  const BucketPartition b(q, 0.5);
  std::vector<std::size_t> mapping(q.size());
  std::iota(mapping.begin(), mapping.end(), 0);
  // Swap two elements with equal reference value.
  std::swap(mapping[0], mapping[1]);
  const Pmf p = apply_permutation(q, Permutation(mapping));
  EXPECT_EQ(exact_suffix_gap(p, q, b).max_dev, 0.0);
}

TEST(IdentityTest, ExactSuffixGapMatchesOracle) {
  std::mt19937_64 gen(33);
  const Pmf q(oracle::random_simplex(30, gen));
  Rng rng(1);
  const Pmf p = apply_permutation(q, Permutation::random(30, rng));
  const BucketPartition b(q, 1.0);
  const auto pm = b.bucket_mass(p.probs());
  const auto qm = b.reference_mass();
  double best = 0.0;
  std::size_t arg = 1;
  const std::size_t L = b.bucket_count();
  for (std::size_t start = 1; start <= L - 1; ++start) {
    double d = 0.0;
    for (std::size_t label = start; label <= L - 1; ++label) d += pm[label - 1] - qm[label - 1];
    if (std::abs(d) > best + 1e-15) {
      best = std::abs(d);
      arg = start;
    }
  }
  const auto gap = exact_suffix_gap(p, q, b);
  EXPECT_NEAR(gap.max_dev, best, 1e-12);
  EXPECT_EQ(gap.argmax, arg);
}

TEST(IdentityTest, DecisionRule) {
  const Pmf q({0.5, 0.25, 0.125, 0.125});
  const BucketPartition b(q, 1.0);
  const auto params = compute_params(4, 1.0);
  std::vector<std::uint64_t> counts(b.bucket_count(), 0);
  counts[3] = 4000;
  counts[6] = 2000;
  counts[9] = 2000;
  EXPECT_EQ(decide_from_histogram(counts, b, params).decision, Decision::kYes);
  // Mass moved between buckets 4 and 7.
  counts[3] = 3000;
  counts[6] = 3000;
  const auto v = decide_from_histogram(counts, b, params);
  EXPECT_EQ(v.decision, Decision::kNo);
  EXPECT_NEAR(v.max_suffix_dev, 0.125, 1e-12);
  // Tail above 3 eps / 8.
  std::vector<std::uint64_t> tail(b.bucket_count(), 0);
  tail.back() = 1;
  const auto t = decide_from_histogram(tail, b, params);
  EXPECT_EQ(t.decision, Decision::kNo);
  EXPECT_DOUBLE_EQ(t.tail_mass_hat, 1.0);
  std::vector<std::uint64_t> empty(b.bucket_count(), 0);
  EXPECT_THROW(decide_from_histogram(empty, b, params), EmptySampleError);
  EXPECT_THROW(decide_from_histogram(std::vector<std::uint64_t>(3, 1), b, params),
               DimensionError);
}

TEST(IdentityTest, UniformReferenceAcceptsEveryRelabeling) {
  const Pmf q = Pmf::uniform(500);
  Rng rng(2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Pmf p = apply_permutation(q, Permutation::random(500, rng));
    PmfSource source(p);
    EXPECT_EQ(permutation_identity_test(q, 0.5, source, s, 1000).decision, Decision::kYes);
  }
}

TEST(IdentityTest, AcceptsEqualRejectsFar) {
  const auto far = multiplicative_instance(2, 3, MemberKind::kFar, 4);
  int accepts = 0;
  int rejects = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    MultinomialSource same(far.reference);
    MultinomialSource other(far.member);
    accepts += permutation_identity_test(far.reference, 0.5, same, s).decision == Decision::kYes;
    rejects += permutation_identity_test(far.reference, 0.5, other, s).decision == Decision::kNo;
  }
  EXPECT_GE(accepts, 16);
  EXPECT_EQ(rejects, 20);
}

TEST(IdentityTest, DeterministicGivenSeed) {
  const auto inst = multiplicative_instance(2, 2, MemberKind::kFar, 9);
  PmfSource source(inst.member);
  const auto a = permutation_identity_test(inst.reference, 0.5, source, 3, 5000);
  const auto b = permutation_identity_test(inst.reference, 0.5, source, 3, 5000);
  EXPECT_EQ(a.max_suffix_dev, b.max_suffix_dev);
  EXPECT_EQ(a.samples_used, 5000u);
  EXPECT_THROW(permutation_identity_test(Pmf::uniform(3), 0.5, source, 3), DimensionError);
}

// The aggregated sampler must agree in distribution with per-draw sampling.
TEST(SourceTest, MultinomialMatchesPerDraw) {
  std::mt19937_64 gen(34);
  const Pmf p(oracle::random_simplex(12, gen));
  std::vector<std::uint32_t> cell_of{0, 0, 1, 1, 1, 2, 3, 3, 3, 3, 4, 4};
  const std::uint64_t m = 500;
  const int reps = 3000;
  PmfSource per_draw(p);
  MultinomialSource aggregated(p);
  std::vector<double> mean_a(5, 0.0), mean_b(5, 0.0), sq_a(5, 0.0);
  Rng ra(1), rb(2);
  for (int r = 0; r < reps; ++r) {
    std::vector<std::uint64_t> ca(5, 0), cb(5, 0);
    per_draw.histogram(cell_of, ca, m, ra);
    aggregated.histogram(cell_of, cb, m, rb);
    EXPECT_EQ(std::accumulate(cb.begin(), cb.end(), std::uint64_t{0}), m);
    for (int c = 0; c < 5; ++c) {
      mean_a[c] += static_cast<double>(ca[c]) / reps;
      mean_b[c] += static_cast<double>(cb[c]) / reps;
      sq_a[c] += static_cast<double>(ca[c] * ca[c]) / reps;
    }
  }
  for (int c = 0; c < 5; ++c) {
    const double sd = std::sqrt(sq_a[c] - mean_a[c] * mean_a[c]);
    EXPECT_NEAR(mean_a[c], mean_b[c], 6.0 * sd * std::sqrt(2.0 / reps) + 1e-9);
  }
}

TEST(SourceTest, RecordedReplaysInOrder) {
  RecordedSource src(SampleSet{{0, 1, 1, 2}, 0}, 3);
  EXPECT_EQ(src.capacity(), 4u);
  std::vector<std::uint32_t> cell_of{0, 1, 1};
  std::vector<std::uint64_t> counts(2, 0);
  Rng rng(0);
  src.histogram(cell_of, counts, 2, rng);
  EXPECT_EQ(counts, (std::vector<std::uint64_t>{1, 1}));
  EXPECT_THROW(src.histogram(cell_of, counts, 5, rng), EmptySampleError);
  EXPECT_THROW(RecordedSource(SampleSet{{3}, 0}, 3), DimensionError);
}

TEST(TolerantTest, BudgetAndDecisions) {
  EXPECT_EQ(plugin_sample_count(4200, 1.0 / 7.0, 2.0 / 7.0), 1646400u);
  EXPECT_THROW(plugin_sample_count(10, 0.3, 0.3), ParameterError);
  const auto close = multiplicative_instance(2, 20, MemberKind::kClose, 5);
  const auto far = multiplicative_instance(2, 20, MemberKind::kFar, 5);
  MultinomialSource cs(close.member), fs(far.member);
  const auto a = plugin_tolerant_test(close.reference, 1.0 / 7.0, 2.0 / 7.0, cs, 1);
  const auto b = plugin_tolerant_test(far.reference, 1.0 / 7.0, 2.0 / 7.0, fs, 1);
  EXPECT_EQ(a.decision, Decision::kYes);
  EXPECT_EQ(b.decision, Decision::kNo);
  EXPECT_NEAR(a.estimate, 1.0 / 7.0, 0.05);
  EXPECT_NEAR(b.estimate, 2.0 / 7.0, 0.05);
  EXPECT_DOUBLE_EQ(a.threshold, 1.5 / 7.0);
  EXPECT_EQ(a.samples_used, plugin_sample_count(close.reference.size(), 1.0 / 7.0, 2.0 / 7.0));
  EXPECT_THROW(plugin_tolerant_test(close.reference, 0.3, 0.2, cs, 1), ParameterError);
}

}  // namespace
}  // namespace permtest
