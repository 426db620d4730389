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

#include "permtest/harness/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "permtest/core/rng.hpp"
#include "permtest/error.hpp"
#include "permtest/instances/cfr.hpp"
#include "permtest/instances/moment_pair.hpp"
#include "permtest/instances/multiplicative.hpp"
#include "permtest/instances/testing_lb.hpp"
#include "permtest/tester/buckets.hpp"
#include "permtest/tester/source.hpp"
#include "permtest/tester/tolerant_test.hpp"

namespace permtest {
namespace {

constexpr std::array<std::pair<TesterKind, std::string_view>, 2> kTesters{{
    {TesterKind::kPermId, "PERM_ID"},
    {TesterKind::kPluginTol, "PLUGIN_TOL"},
}};
constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilies{{
    {Family::kEqual, "EQUAL"},
    {Family::kTestingLb, "TESTING_LB"},
    {Family::kCfrC, "CFR_C"},
    {Family::kCfrF, "CFR_F"},
    {Family::kMultClose, "MULT_CLOSE"},
    {Family::kMultFar, "MULT_FAR"},
}};
constexpr std::array<std::pair<SamplerKind, std::string_view>, 2> kSamplers{{
    {SamplerKind::kAlias, "alias"},
    {SamplerKind::kMultinomial, "multinomial"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum parse_name(const std::array<std::pair<Enum, std::string_view>, N>& table,
                const std::string& name, const char* what) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + name + "'");
}

std::string format_number(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

// Salts separating the random streams of one trial.
constexpr std::uint64_t kYesSide = 1;
constexpr std::uint64_t kNoSide = 2;
constexpr std::uint64_t kInstanceStream = 0;
constexpr std::uint64_t kSamplingStream = 1;

std::size_t exact_blocks(std::size_t n, std::size_t width, const char* family) {
  if (width == 0 || n % width != 0 || n == 0) {
    std::ostringstream msg;
    msg << family << " needs n to be a positive multiple of the block width "
        << width << ", got n = " << n;
    throw ConfigError(msg.str());
  }
  return n / width;
}

// Everything about a family that does not depend on the trial seed.
class InstanceFactory {
 public:
  explicit InstanceFactory(const ExperimentConfig& cfg) : cfg_(cfg) {
    switch (cfg.family) {
      case Family::kEqual:
        if (cfg.C) {
          const auto mc = multiplicative_config(*cfg.C, 1);
          const auto blocks = exact_blocks(cfg.n, static_cast<std::size_t>(mc.w), "EQUAL with C");
          fixed_ = std::make_unique<Pmf>(
              multiplicative_instance(*cfg.C, blocks, MemberKind::kClose, 0).reference);
        } else {
          fixed_ = std::make_unique<Pmf>(Pmf::uniform(cfg.n));
        }
        break;
      case Family::kTestingLb:
        lb_ = std::make_unique<TestingLbConfig>(
            testing_lb_config(cfg.n, cfg.mix_eps.value_or(cfg.epsilon)));
        fixed_ = std::make_unique<Pmf>(testing_lb_reference_pmf(*lb_));
        break;
      case Family::kCfrC:
      case Family::kCfrF: {
        const auto pair = find_moment_pair(cfg.k.value_or(8), cfg.order.value_or(2));
        triple_ = std::make_unique<CfrTriple>(build_cfr(pair.p, pair.q));
        blocks_ = exact_blocks(cfg.n, triple_->width(), "CFR");
        break;
      }
      case Family::kMultClose:
      case Family::kMultFar: {
        const auto mc = multiplicative_config(*cfg.C, 1);
        blocks_ = exact_blocks(cfg.n, static_cast<std::size_t>(mc.w), "MULT");
        break;
      }
    }
  }

  // (reference, member, true tv) of one side of one trial.
  HardInstance make(bool yes_side, std::uint64_t seed) const {
    switch (cfg_.family) {
      case Family::kEqual:
        return same_as_reference();
      case Family::kTestingLb:
        return yes_side ? same_as_reference() : testing_lb_perturbation(*lb_, seed);
      case Family::kCfrC:
        return family_member(*triple_, MemberKind::kClose, blocks_, seed);
      case Family::kCfrF:
        return family_member(*triple_, MemberKind::kFar, blocks_, seed);
      case Family::kMultClose:
        return multiplicative_instance(*cfg_.C, blocks_, MemberKind::kClose, seed);
      case Family::kMultFar:
        return multiplicative_instance(*cfg_.C, blocks_, MemberKind::kFar, seed);
    }
    throw ConfigError("unreachable family");
  }

 private:
  HardInstance same_as_reference() const {
    return HardInstance{*fixed_, *fixed_, Permutation::identity(cfg_.n), 0.0, {}};
  }

  const ExperimentConfig& cfg_;
  std::unique_ptr<Pmf> fixed_;
  std::unique_ptr<TestingLbConfig> lb_;
  std::unique_ptr<CfrTriple> triple_;
  std::size_t blocks_ = 1;
};

std::unique_ptr<SampleSource> make_source(SamplerKind kind, const Pmf& p) {
  if (kind == SamplerKind::kMultinomial) return std::make_unique<MultinomialSource>(p);
  return std::make_unique<PmfSource>(p);
}

struct Task {
  std::size_t grid_index;
  std::size_t trial_index;
  bool yes_side;
};

TrialRecord run_task(const ExperimentConfig& cfg, const InstanceFactory& factory,
                     std::uint64_t m, const Task& task) {
  TrialRecord rec;
  rec.grid_index = task.grid_index;
  rec.trial_index = task.trial_index;
  rec.yes_side = task.yes_side;
  rec.derived_seed = derive_seed(cfg.master_seed, task.grid_index, task.trial_index);
  const std::uint64_t side = task.yes_side ? kYesSide : kNoSide;

  const HardInstance inst =
      factory.make(task.yes_side, derive_seed(rec.derived_seed, side, kInstanceStream));
  const auto source = make_source(cfg.sampler, inst.member);
  const std::uint64_t sampling_seed = derive_seed(rec.derived_seed, side, kSamplingStream);
  if (cfg.tester == TesterKind::kPermId) {
    const Verdict v =
        permutation_identity_test(inst.reference, cfg.epsilon, *source, sampling_seed, m);
    rec.decision = v.decision;
    rec.m_used = v.samples_used;
  } else {
    const TolerantVerdict v = plugin_tolerant_test(inst.reference, *cfg.eps_close,
                                                   *cfg.eps_far, *source, sampling_seed, m);
    rec.decision = v.decision;
    rec.m_used = v.samples_used;
  }
  rec.true_tv = inst.true_tv;
  return rec;
}

std::string family_param(const ExperimentConfig& cfg) {
  switch (cfg.family) {
    case Family::kEqual:
      return cfg.C ? std::to_string(*cfg.C) : "";
    case Family::kTestingLb:
      return format_number(cfg.mix_eps.value_or(cfg.epsilon));
    case Family::kCfrC:
    case Family::kCfrF:
      return std::to_string(cfg.order.value_or(2));
    case Family::kMultClose:
    case Family::kMultFar:
      return std::to_string(*cfg.C);
  }
  return "";
}

}  // namespace

std::string_view to_string(TesterKind t) { return name_of(kTesters, t); }
std::string_view to_string(Family f) { return name_of(kFamilies, f); }
std::string_view to_string(SamplerKind s) { return name_of(kSamplers, s); }

bool has_yes_side(Family f) {
  return f == Family::kEqual || f == Family::kTestingLb || f == Family::kCfrC ||
         f == Family::kMultClose;
}

bool has_no_side(Family f) {
  return f == Family::kTestingLb || f == Family::kCfrF || f == Family::kMultFar;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
    cfg.tester = parse_name(kTesters, j.at("tester").get<std::string>(), "tester");
    cfg.family = parse_name(kFamilies, j.at("family").get<std::string>(), "family");
    cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("eps_close")) cfg.eps_close = j.at("eps_close").get<double>();
    if (j.contains("eps_far")) cfg.eps_far = j.at("eps_far").get<double>();
    if (j.contains("C")) cfg.C = j.at("C").get<int>();
    if (j.contains("k")) cfg.k = j.at("k").get<std::size_t>();
    if (j.contains("order")) cfg.order = j.at("order").get<std::size_t>();
    if (j.contains("mix_eps")) cfg.mix_eps = j.at("mix_eps").get<double>();
    if (j.contains("sample_grid")) {
      cfg.sample_grid = j.at("sample_grid").get<std::vector<std::uint64_t>>();
    }
    cfg.trials = j.value("trials", std::size_t{1});
    if (j.contains("trials") && j.at("trials").is_number_integer() &&
        j.at("trials").get<std::int64_t>() < 0) {
      throw ConfigError("trials must be >= 1");
    }
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    if (j.contains("sampler")) {
      cfg.sampler = parse_name(kSamplers, j.at("sampler").get<std::string>(), "sampler");
    }
    cfg.threads = j.value("threads", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["tester"] = to_string(cfg.tester);
  j["family"] = to_string(cfg.family);
  j["n"] = cfg.n;
  j["epsilon"] = cfg.epsilon;
  if (cfg.eps_close) j["eps_close"] = *cfg.eps_close;
  if (cfg.eps_far) j["eps_far"] = *cfg.eps_far;
  if (cfg.C) j["C"] = *cfg.C;
  if (cfg.k) j["k"] = *cfg.k;
  if (cfg.order) j["order"] = *cfg.order;
  if (cfg.mix_eps) j["mix_eps"] = *cfg.mix_eps;
  j["sample_grid"] = cfg.sample_grid;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["sampler"] = to_string(cfg.sampler);
  j["threads"] = cfg.threads;
  return j;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.n < 2) throw ConfigError("n must be >= 2");
  for (std::size_t i = 0; i < cfg.sample_grid.size(); ++i) {
    if (cfg.sample_grid[i] == 0) throw ConfigError("sample_grid entries must be >= 1");
    if (i > 0 && cfg.sample_grid[i] <= cfg.sample_grid[i - 1]) {
      throw ConfigError("sample_grid must be strictly increasing");
    }
  }
  if (cfg.tester == TesterKind::kPermId) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0)) {
      throw ConfigError("PERM_ID needs epsilon in (0, 1]");
    }
  } else {
    if (!cfg.eps_close || !cfg.eps_far) {
      throw ConfigError("PLUGIN_TOL needs eps_close and eps_far");
    }
    if (!(*cfg.eps_close >= 0.0 && *cfg.eps_close < *cfg.eps_far && *cfg.eps_far <= 1.0)) {
      throw ConfigError("PLUGIN_TOL needs 0 <= eps_close < eps_far <= 1");
    }
  }
  switch (cfg.family) {
    case Family::kEqual:
      break;
    case Family::kTestingLb: {
      const double mix = cfg.mix_eps.value_or(cfg.epsilon);
      if (!(mix > 0.0 && mix <= 1.0 / 9.0 + 1e-12)) {
        throw ConfigError("TESTING_LB needs mix_eps (default epsilon) in (0, 1/9]");
      }
      break;
    }
    case Family::kCfrC:
    case Family::kCfrF: {
      const std::size_t order = cfg.order.value_or(2);
      const std::size_t k = cfg.k.value_or(8);
      if (order < 1 || order > 4 || k < order + 2 || k > 8) {
        throw ConfigError("CFR needs 1 <= order <= 4 and order + 2 <= k <= 8");
      }
      break;
    }
    case Family::kMultClose:
    case Family::kMultFar:
      if (!cfg.C) throw ConfigError("MULT families need C");
      break;
  }
  if (cfg.C && (*cfg.C < 2 || *cfg.C > 20)) throw ConfigError("C must lie in [2, 20]");
}

std::vector<std::uint64_t> effective_grid(const ExperimentConfig& cfg) {
  if (!cfg.sample_grid.empty()) return cfg.sample_grid;
  if (cfg.tester == TesterKind::kPermId) {
    return {compute_params(cfg.n, cfg.epsilon).learner_samples};
  }
  return {plugin_sample_count(cfg.n, *cfg.eps_close, *cfg.eps_far)};
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  std::unique_ptr<InstanceFactory> factory;
  try {
    factory = std::make_unique<InstanceFactory>(cfg);
  } catch (const ConstructionError& e) {
    throw ConfigError(std::string("family cannot be built: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("family cannot be built: ") + e.what());
  }
  const auto grid = effective_grid(cfg);

  std::vector<Task> tasks;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      if (has_yes_side(cfg.family)) tasks.push_back({g, t, true});
      if (has_no_side(cfg.family)) tasks.push_back({g, t, false});
    }
  }

  std::vector<TrialRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        records[i] = run_task(cfg, *factory, grid[tasks[i].grid_index], tasks[i]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(tasks.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw ParameterError("wilson_interval needs trials >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Interval RateSummary::worse_ci() const {
  if (yes_accept_rate && no_reject_rate) {
    return *yes_accept_rate <= *no_reject_rate ? *yes_ci : *no_ci;
  }
  return yes_ci ? *yes_ci : *no_ci;
}

std::vector<RateSummary> summarize(const std::vector<TrialRecord>& records,
                                   const std::vector<std::uint64_t>& grid) {
  if (records.empty()) throw ParameterError("summarize needs at least one record");
  struct Tally {
    std::uint64_t yes_n = 0, yes_ok = 0, no_n = 0, no_ok = 0;
  };
  std::vector<Tally> tally(grid.size());
  for (const auto& r : records) {
    if (r.grid_index >= grid.size()) throw DimensionError("record outside the grid");
    auto& t = tally[r.grid_index];
    if (r.yes_side) {
      ++t.yes_n;
      if (r.decision == Decision::kYes) ++t.yes_ok;
    } else {
      ++t.no_n;
      if (r.decision == Decision::kNo) ++t.no_ok;
    }
  }
  std::vector<RateSummary> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& t = tally[g];
    RateSummary s;
    s.grid_index = g;
    s.m = grid[g];
    s.trials = std::max(t.yes_n, t.no_n);
    if (t.yes_n > 0) {
      s.yes_accept_rate = static_cast<double>(t.yes_ok) / static_cast<double>(t.yes_n);
      s.yes_ci = wilson_interval(t.yes_ok, t.yes_n);
    }
    if (t.no_n > 0) {
      s.no_reject_rate = static_cast<double>(t.no_ok) / static_cast<double>(t.no_n);
      s.no_ci = wilson_interval(t.no_ok, t.no_n);
    }
    if (t.yes_n > 0 || t.no_n > 0) out.push_back(s);
  }
  return out;
}

std::optional<std::uint64_t> threshold(const std::vector<RateSummary>& summaries,
                                       double max_error) {
  for (const auto& s : summaries) {
    if (!s.yes_accept_rate && !s.no_reject_rate) continue;
    const bool yes_ok = !s.yes_accept_rate || 1.0 - *s.yes_accept_rate <= max_error;
    const bool no_ok = !s.no_reject_rate || 1.0 - *s.no_reject_rate <= max_error;
    if (yes_ok && no_ok) return s.m;
  }
  return std::nullopt;
}

std::string csv_header() {
  return "family,tester,n,param1,param2,m,trials,yes_instance_accept_rate,"
         "no_instance_reject_rate,ci_low,ci_high,master_seed\n";
}

std::string csv_rows(const ExperimentConfig& cfg,
                     const std::vector<RateSummary>& summaries) {
  std::string param1;
  std::string param2;
  if (cfg.tester == TesterKind::kPermId) {
    param1 = format_number(cfg.epsilon);
    param2 = family_param(cfg);
  } else {
    param1 = format_number(*cfg.eps_close);
    param2 = format_number(*cfg.eps_far);
  }
  std::ostringstream out;
  for (const auto& s : summaries) {
    const Interval ci = s.worse_ci();
    out << to_string(cfg.family) << ',' << to_string(cfg.tester) << ',' << cfg.n << ','
        << param1 << ',' << param2 << ',' << s.m << ',' << s.trials << ','
        << (s.yes_accept_rate ? format_number(*s.yes_accept_rate) : "") << ','
        << (s.no_reject_rate ? format_number(*s.no_reject_rate) : "") << ','
        << format_number(ci.low) << ',' << format_number(ci.high) << ','
        << cfg.master_seed << '\n';
  }
  return out.str();
}

}  // namespace permtest
