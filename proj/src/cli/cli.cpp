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

#include "permtest/cli/cli.hpp"

#include <functional>
#include <iomanip>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "permtest/core/io.hpp"
#include "permtest/error.hpp"
#include "permtest/harness/experiment.hpp"
#include "permtest/instances/cfr.hpp"
#include "permtest/instances/checks.hpp"
#include "permtest/instances/moment_pair.hpp"
#include "permtest/instances/multiplicative.hpp"
#include "permtest/instances/testing_lb.hpp"
#include "permtest/tester/identity_test.hpp"
#include "permtest/tester/tolerant_test.hpp"

namespace permtest {
namespace {

// Flag misuse discovered after parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fraction(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return std::to_string(num / g) + "/" + std::to_string(den / g);
}

std::string decimal(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
  write_file_atomically(path, j.dump() + "\n");
}

// ---- gen ------------------------------------------------------------------

struct GenOptions {
  std::string family;
  std::size_t n = 0;
  double epsilon = 0.0;
  int C = 2;
  std::optional<std::size_t> k;
  std::size_t order = 2;
  std::size_t blocks = 1;
  std::uint64_t seed = 0;
  std::string which;
  std::string out_path;
};

void print_member(std::ostream& out, const std::string& tag,
                  const HardInstance& inst) {
  out << "true_tv_" << tag << "=" << decimal(inst.true_tv) << "\n";
  if (inst.params.contains("true_tv_exact")) {
    out << "true_tv_" << tag << "_exact="
        << inst.params["true_tv_exact"].get<std::string>() << "\n";
  }
  out << "params_" << tag << "=" << inst.params.dump() << "\n";
}

// Writes and prints one or both members of a close/far family.
void emit_pair(const GenOptions& o, std::ostream& out,
               const std::function<HardInstance(MemberKind)>& make) {
  if (!o.which.empty()) {
    const auto kind = o.which == "close" ? MemberKind::kClose : MemberKind::kFar;
    const HardInstance inst = make(kind);
    out << "n=" << inst.reference.size() << "\n";
    print_member(out, o.which, inst);
    if (!o.out_path.empty()) write_json(o.out_path, instance_to_json(inst));
  } else {
    const HardInstance close = make(MemberKind::kClose);
    const HardInstance far = make(MemberKind::kFar);
    out << "n=" << close.reference.size() << "\n";
    print_member(out, "close", close);
    print_member(out, "far", far);
    if (!o.out_path.empty()) {
      nlohmann::ordered_json doc;
      doc["close"] = instance_to_json(close);
      doc["far"] = instance_to_json(far);
      write_json(o.out_path, doc);
    }
  }
  if (!o.out_path.empty()) out << "out=" << o.out_path << "\n";
}

void print_moment_pair(std::ostream& out, const MomentPair& pair) {
  out << "k=" << pair.k << "\n";
  out << "order=" << pair.order << "\n";
  out << "total=" << pair.total << "\n";
  out << "a=" << nlohmann::json(pair.a).dump() << "\n";
  out << "b=" << nlohmann::json(pair.b).dump() << "\n";
  out << "tv=" << fraction(pair.tv_numerator, pair.tv_denominator) << "\n";
  out << "tv_decimal=" << decimal(pair.tv()) << "\n";
  for (std::size_t j = 1; j <= pair.order; ++j) {
    out << "power_sum_" << j << "=" << pair.power_sum_string(j) << "\n";
  }
}

int run_gen(const GenOptions& o, std::ostream& out) {
  if (o.family == "mult") {
    out << "family=mult\nC=" << o.C << "\nblocks=" << o.blocks << "\n";
    emit_pair(o, out, [&](MemberKind kind) {
      return multiplicative_instance(o.C, o.blocks, kind, o.seed);
    });
  } else if (o.family == "cfr") {
    const MomentPair pair = find_moment_pair(o.k.value_or(o.order + 2), o.order);
    const CfrTriple triple = build_cfr(pair.p, pair.q);
    out << "family=cfr\nblocks=" << o.blocks << "\n";
    print_moment_pair(out, pair);
    emit_pair(o, out, [&](MemberKind kind) {
      return family_member(triple, kind, o.blocks, o.seed);
    });
  } else if (o.family == "testing-lb") {
    if (o.n == 0 || o.epsilon <= 0.0) {
      throw UsageError("testing-lb needs --n and --epsilon");
    }
    const TestingLbConfig cfg = testing_lb_config(o.n, o.epsilon);
    const HardInstance inst = testing_lb_perturbation(cfg, o.seed);
    out << "family=testing-lb\n";
    out << "n=" << cfg.n << "\n";
    out << "L=" << cfg.levels << "\n";
    out << "bucket_sizes=" << nlohmann::json(cfg.bucket_sizes).dump() << "\n";
    out << "used=" << cfg.used << "\n";
    out << "dev_delta=" << fraction(1, 9 * static_cast<std::int64_t>(cfg.levels - 2)) << "\n";
    out << "dev_delta_decimal=" << decimal(cfg.dev_delta()) << "\n";
    out << "swap_unit=" << cfg.swap_unit << "\n";
    out << "end_swap=" << cfg.end_swap << "\n";
    out << "nominal_tv=" << decimal(cfg.mix_eps) << "\n";
    out << "true_tv=" << decimal(inst.true_tv) << "\n";
    out << "closed_form_tv=" << decimal(testing_lb_closed_form_tv(cfg)) << "\n";
    if (!o.out_path.empty()) {
      write_json(o.out_path, instance_to_json(inst));
      out << "out=" << o.out_path << "\n";
    }
  } else {  // moment-pair
    const MomentPair pair = find_moment_pair(o.k.value_or(o.order + 2), o.order);
    out << "family=moment-pair\n";
    print_moment_pair(out, pair);
    if (!o.out_path.empty()) {
      nlohmann::ordered_json doc;
      doc["k"] = pair.k;
      doc["order"] = pair.order;
      doc["a"] = pair.a;
      doc["b"] = pair.b;
      doc["p"] = pmf_to_json(pair.p);
      doc["q"] = pmf_to_json(pair.q);
      doc["tv"] = fraction(pair.tv_numerator, pair.tv_denominator);
      write_json(o.out_path, doc);
      out << "out=" << o.out_path << "\n";
    }
  }
  return kExitOk;
}

// ---- test / estimate --------------------------------------------------------

struct SampleOptions {
  std::string q_path;
  std::string samples_path;
  std::string simulate_path;
  std::string which;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> m;
  std::string sampler = "alias";
};

// A pmf document, or the reference of an instance document.
Pmf load_reference(const std::string& path) {
  const auto j = read_json_file(path);
  if (j.contains("probs")) return pmf_from_json(j);
  if (j.contains("reference")) return pmf_from_json(j["reference"]);
  if (j.contains("close")) return pmf_from_json(j["close"].at("reference"));
  if (j.contains("far")) return pmf_from_json(j["far"].at("reference"));
  throw FormatError(path + ": neither a pmf nor an instance document");
}

Pmf load_member(const std::string& path, const std::string& which) {
  const auto j = read_json_file(path);
  if (j.contains("probs")) return pmf_from_json(j);
  if (j.contains("member")) return pmf_from_json(j["member"]);
  if (j.contains("close") || j.contains("far")) {
    if (which.empty()) {
      throw UsageError(path + " holds both members; pick one with --which");
    }
    if (!j.contains(which)) throw FormatError(path + " has no '" + which + "' member");
    return pmf_from_json(j[which].at("member"));
  }
  throw FormatError(path + ": neither a pmf nor an instance document");
}

std::unique_ptr<SampleSource> open_source(const SampleOptions& o, std::size_t n,
                                          std::optional<std::uint64_t>& m) {
  if (o.samples_path.empty() == o.simulate_path.empty()) {
    throw UsageError("give exactly one of --samples and --simulate");
  }
  if (!o.samples_path.empty()) {
    SampleSet s = read_samples_file(o.samples_path, n);
    if (s.draws.empty()) throw FormatError(o.samples_path + " holds no samples");
    if (!m) m = s.draws.size();
    return std::make_unique<RecordedSource>(std::move(s), n);
  }
  const Pmf member = load_member(o.simulate_path, o.which);
  if (member.size() != n) {
    throw DimensionError("simulated member has n = " + std::to_string(member.size()) +
                         ", reference has n = " + std::to_string(n));
  }
  if (o.sampler == "multinomial") return std::make_unique<MultinomialSource>(member);
  return std::make_unique<PmfSource>(member);
}

int run_test(const SampleOptions& o, double epsilon, std::ostream& out) {
  const Pmf q = load_reference(o.q_path);
  std::optional<std::uint64_t> m = o.m;
  const auto source = open_source(o, q.size(), m);
  const TesterParams params = compute_params(q.size(), epsilon);
  const Verdict v = permutation_identity_test(q, epsilon, *source, o.seed, m);
  out << "decision=" << to_string(v.decision) << "\n";
  out << "tail_mass_hat=" << decimal(v.tail_mass_hat) << "\n";
  out << "max_suffix_dev=" << decimal(v.max_suffix_dev) << "\n";
  out << "argmax_suffix=" << v.argmax_suffix << "\n";
  out << "suffix_threshold=" << decimal(params.alg_delta / 3.0) << "\n";
  out << "samples_used=" << v.samples_used << "\n";
  out << "learner_budget=" << params.learner_samples << "\n";
  out << "L=" << params.buckets << "\n";
  return kExitOk;
}

int run_estimate(const SampleOptions& o, double eps_close, double eps_far,
                 std::ostream& out) {
  const Pmf q = load_reference(o.q_path);
  std::optional<std::uint64_t> m = o.m;
  const auto source = open_source(o, q.size(), m);
  const TolerantVerdict v = plugin_tolerant_test(q, eps_close, eps_far, *source, o.seed, m);
  out << "estimate=" << decimal(v.estimate) << "\n";
  out << "samples_used=" << v.samples_used << "\n";
  out << "threshold=" << decimal(v.threshold) << "\n";
  out << "decision=" << to_string(v.decision) << "\n";
  out << "plugin_budget=" << plugin_sample_count(q.size(), eps_close, eps_far) << "\n";
  return kExitOk;
}

// ---- bench ----------------------------------------------------------------

int run_bench(const std::string& config_path, const std::string& out_path,
              std::optional<std::size_t> threads, std::ostream& out) {
  const auto doc = read_json_file(config_path);
  std::vector<ExperimentConfig> configs;
  if (doc.is_array()) {
    for (const auto& j : doc) configs.push_back(config_from_json(j));
  } else {
    configs.push_back(config_from_json(doc));
  }
  if (configs.empty()) throw ConfigError("no experiments in " + config_path);

  std::string csv = csv_header();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    auto& cfg = configs[i];
    if (threads) cfg.threads = *threads;
    const auto records = run_experiment(cfg);
    const auto summaries = summarize(records, effective_grid(cfg));
    csv += csv_rows(cfg, summaries);
    const auto m_star = threshold(summaries);
    out << "experiment=" << i << " family=" << to_string(cfg.family)
        << " tester=" << to_string(cfg.tester) << " n=" << cfg.n
        << " grid_points=" << summaries.size()
        << " threshold=" << (m_star ? std::to_string(*m_star) : "none") << "\n";
  }
  write_file_atomically(out_path, csv);
  out << "out=" << out_path << "\n";
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& family, const std::vector<int>& Cs,
               std::size_t pairs, std::size_t count, std::uint64_t seed,
               std::ostream& out, std::ostream& err) {
  std::vector<ExactCheck> checks;
  auto append = [&checks](std::vector<ExactCheck> more) {
    checks.insert(checks.end(), std::make_move_iterator(more.begin()),
                  std::make_move_iterator(more.end()));
  };
  if (family == "mult" || family == "all") {
    for (int C : Cs) append(verify_multiplicative_exact(C));
  }
  if (family == "cfr" || family == "all") append(verify_cfr_gap(pairs, seed));
  if (family == "instances" || family == "all") {
    append(verify_instance_integrity(count, seed));
  }

  const ExactCheck* first_failure = nullptr;
  for (const auto& c : checks) {
    out << "result=" << (c.passed ? "PASS" : "FAIL") << " check=\"" << c.name << "\"";
    if (!c.detail.empty()) out << " detail=\"" << c.detail << "\"";
    out << "\n";
    if (!c.passed && !first_failure) first_failure = &c;
  }
  out << "checks=" << checks.size() << "\n";
  if (first_failure) {
    out << "status=FAIL\nfirst_failed=\"" << first_failure->name << "\"\n";
    err << "verification failed: " << first_failure->name << " ("
        << first_failure->detail << ")\n";
    return kExitVerificationFailed;
  }
  out << "status=PASS\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Identity testing under a permutation promise"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a hard instance");
  gen_cmd->add_option("--family", gen.family, "mult | cfr | testing-lb | moment-pair")
      ->required()
      ->check(CLI::IsMember({"mult", "cfr", "testing-lb", "moment-pair"}));
  gen_cmd->add_option("--n", gen.n, "domain size (testing-lb)");
  gen_cmd->add_option("--epsilon", gen.epsilon, "mixture epsilon (testing-lb)");
  gen_cmd->add_option("--C", gen.C, "approximation factor (mult)");
  gen_cmd->add_option("--k", gen.k, "largest k of the moment-pair search");
  gen_cmd->add_option("--order", gen.order, "moment order (cfr, moment-pair)");
  gen_cmd->add_option("--blocks", gen.blocks, "block count (mult, cfr)");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--which", gen.which, "emit only one member")
      ->check(CLI::IsMember({"close", "far"}));
  gen_cmd->add_option("--out", gen.out_path, "instance JSON path");

  SampleOptions test;
  double test_eps = 0.0;
  auto* test_cmd = app.add_subcommand("test", "run the identity tester");
  test_cmd->add_option("--q", test.q_path, "reference pmf or instance")->required();
  test_cmd->add_option("--epsilon", test_eps)->required();
  auto* samples_opt = test_cmd->add_option("--samples", test.samples_path, "sample file");
  auto* simulate_opt =
      test_cmd->add_option("--simulate", test.simulate_path, "pmf or instance to sample");
  samples_opt->excludes(simulate_opt);
  test_cmd->add_option("--which", test.which)->check(CLI::IsMember({"close", "far"}));
  test_cmd->add_option("--seed", test.seed);
  test_cmd->add_option("--m", test.m, "override the sample count");
  test_cmd->add_option("--sampler", test.sampler)
      ->check(CLI::IsMember({"alias", "multinomial"}));

  SampleOptions est;
  double eps_close = 0.0;
  double eps_far = 0.0;
  auto* est_cmd = app.add_subcommand("estimate", "plug-in tv estimate");
  est_cmd->add_option("--q", est.q_path)->required();
  est_cmd->add_option("--eps-close", eps_close)->required();
  est_cmd->add_option("--eps-far", eps_far)->required();
  auto* est_samples = est_cmd->add_option("--samples", est.samples_path);
  auto* est_simulate = est_cmd->add_option("--simulate", est.simulate_path);
  est_samples->excludes(est_simulate);
  est_cmd->add_option("--which", est.which)->check(CLI::IsMember({"close", "far"}));
  est_cmd->add_option("--seed", est.seed);
  est_cmd->add_option("--m", est.m);
  est_cmd->add_option("--sampler", est.sampler)
      ->check(CLI::IsMember({"alias", "multinomial"}));

  std::string bench_config;
  std::string bench_out;
  std::optional<std::size_t> bench_threads;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment config");
  bench_cmd->add_option("--config", bench_config)->required();
  bench_cmd->add_option("--out", bench_out, "CSV path")->required();
  bench_cmd->add_option("--threads", bench_threads);

  std::string verify_family = "all";
  std::vector<int> verify_C{2, 3, 4, 5};
  std::size_t verify_pairs = 100;
  std::size_t verify_count = 200;
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "exact construction checks");
  verify_cmd->add_option("--family", verify_family)
      ->check(CLI::IsMember({"mult", "cfr", "instances", "all"}));
  verify_cmd->add_option("--C", verify_C)->expected(1, -1);
  verify_cmd->add_option("--pairs", verify_pairs);
  verify_cmd->add_option("--count", verify_count);
  verify_cmd->add_option("--seed", verify_seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*test_cmd) return run_test(test, test_eps, out);
    if (*est_cmd) return run_estimate(est, eps_close, eps_far, out);
    if (*bench_cmd) return run_bench(bench_config, bench_out, bench_threads, out);
    return run_verify(verify_family, verify_C, verify_pairs, verify_count, verify_seed,
                      out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const NotFoundError& e) {
    err << "construction error: " << e.what() << "\n";
    return kExitConstruction;
  } catch (const Error& e) {
    // FormatError, DimensionError, InvalidPmf, InvalidPermutation,
    // EmptySampleError: the input files are unusable.
    err << "malformed input: " << e.what() << "\n";
    return kExitMalformedInput;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitMalformedInput;
  }
}

}  // namespace permtest
