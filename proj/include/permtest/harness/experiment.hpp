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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "permtest/tester/identity_test.hpp"

namespace permtest {

enum class TesterKind { kPermId, kPluginTol };
enum class Family { kEqual, kTestingLb, kCfrC, kCfrF, kMultClose, kMultFar };
enum class SamplerKind { kAlias, kMultinomial };

std::string_view to_string(TesterKind t);
std::string_view to_string(Family f);
std::string_view to_string(SamplerKind s);

// Which sides of the decision problem a family produces. The yes side is
// an instance the tester should accept, the no side one it should reject.
//   EQUAL       yes: member = reference (uniform, or r* of the C-factor
//               construction when C is set)
//   TESTING_LB  yes: reference itself; no: a random perturbation
//   CFR_C       yes;  CFR_F no  (base pair from the moment-pair search)
//   MULT_CLOSE  yes;  MULT_FAR no
bool has_yes_side(Family f);
bool has_no_side(Family f);

struct ExperimentConfig {
  TesterKind tester = TesterKind::kPermId;
  Family family = Family::kEqual;
  std::size_t n = 0;
  double epsilon = 0.0;               // PERM_ID
  std::optional<double> eps_close;    // PLUGIN_TOL
  std::optional<double> eps_far;      // PLUGIN_TOL
  std::optional<int> C;               // MULT_*, optional for EQUAL
  std::optional<std::size_t> k;       // CFR_*: largest k searched (default 8)
  std::optional<std::size_t> order;   // CFR_*: moment order (default 2)
  std::optional<double> mix_eps;      // TESTING_LB (default epsilon)
  std::vector<std::uint64_t> sample_grid;  // empty: tester's own budget
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  SamplerKind sampler = SamplerKind::kAlias;
  std::size_t threads = 0;  // 0: hardware concurrency
};

// Throws ConfigError on unknown names, missing fields or invariant
// violations (trials >= 1, strictly increasing grid, family parameters).
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);
void validate(const ExperimentConfig& cfg);

struct TrialRecord {
  std::size_t grid_index = 0;
  std::size_t trial_index = 0;
  bool yes_side = true;
  std::uint64_t derived_seed = 0;
  std::uint64_t m_used = 0;
  Decision decision = Decision::kYes;
  double true_tv = 0.0;

  bool operator==(const TrialRecord&) const = default;
};

// The sample counts actually run: sample_grid, or the tester's internal
// budget as a single point.
std::vector<std::uint64_t> effective_grid(const ExperimentConfig& cfg);

// Every (grid point, trial, side) in that order. A pure function of cfg:
// trial seed = derive_seed(master_seed, grid_index, trial_index), split
// further per side into instance and sampling streams.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval; trials >= 1.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.96);

struct RateSummary {
  std::size_t grid_index = 0;
  std::uint64_t m = 0;
  std::uint64_t trials = 0;  // per side
  std::optional<double> yes_accept_rate;
  std::optional<double> no_reject_rate;
  std::optional<Interval> yes_ci;
  std::optional<Interval> no_ci;

  // Interval of the lower of the present success rates.
  Interval worse_ci() const;
};

// One summary per grid point, in grid order. Throws ParameterError on an
// empty record list.
std::vector<RateSummary> summarize(const std::vector<TrialRecord>& records,
                                   const std::vector<std::uint64_t>& grid);

// Smallest m whose present sides all have error rate <= max_error.
std::optional<std::uint64_t> threshold(const std::vector<RateSummary>& summaries,
                                       double max_error = 1.0 / 3.0);

std::string csv_header();
std::string csv_rows(const ExperimentConfig& cfg,
                     const std::vector<RateSummary>& summaries);

}  // namespace permtest
