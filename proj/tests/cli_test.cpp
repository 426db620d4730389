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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "permtest/cli/cli.hpp"
#include "permtest/core/io.hpp"
#include "permtest/core/permutation.hpp"
#include "permtest/core/rng.hpp"
#include "permtest/instances/moment_pair.hpp"

namespace permtest {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
  std::map<std::string, std::string> kv;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) r.kv.emplace(line.substr(0, eq), line.substr(eq + 1));
  }
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("permtest_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  fs::path dir_;
};

TEST_F(CliTest, GenMultWritesBothMembers) {
  const auto r = run({"gen", "--family", "mult", "--C", "2", "--blocks", "1", "--out",
                      path("inst.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.kv.at("true_tv_close_exact"), "1/7");
  EXPECT_EQ(r.kv.at("true_tv_far_exact"), "2/7");
  const auto doc = read_json_file(path("inst.json"));
  EXPECT_NEAR(doc["close"]["true_tv"].get<double>(), 1.0 / 7.0, 1e-12);
  EXPECT_NEAR(doc["far"]["true_tv"].get<double>(), 2.0 / 7.0, 1e-12);
  EXPECT_EQ(doc["far"]["params"]["true_tv_exact"], "2/7");
}

TEST_F(CliTest, GenTestingLbPrintsGeometry) {
  const auto r = run({"gen", "--family", "testing-lb", "--n", "1048576", "--epsilon", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.kv.at("L"), "7");
  EXPECT_EQ(r.kv.at("dev_delta"), "1/45");
  EXPECT_EQ(r.kv.at("used"), "392192");
  EXPECT_EQ(run({"gen", "--family", "testing-lb", "--n", "100", "--epsilon", "0.05"}).code, 3);
  EXPECT_EQ(run({"gen", "--family", "testing-lb", "--epsilon", "0.05"}).code, 2);
}

TEST_F(CliTest, GenMomentPair) {
  const auto r = run({"gen", "--family", "moment-pair", "--order", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto a = nlohmann::json::parse(r.kv.at("a")).get<std::vector<std::int64_t>>();
  const auto b = nlohmann::json::parse(r.kv.at("b")).get<std::vector<std::int64_t>>();
  EXPECT_TRUE(power_sums_match(a, b, 2));
  EXPECT_NE(a, b);
  EXPECT_EQ(run({"gen", "--family", "moment-pair", "--order", "9"}).code, 2);
}

TEST_F(CliTest, GenCfrRoundTripsIntoTest) {
  const auto g = run({"gen", "--family", "cfr", "--order", "2", "--blocks", "4", "--seed", "3",
                      "--out", path("cfr.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto t = run({"test", "--q", path("cfr.json"), "--epsilon", "0.5", "--simulate",
                      path("cfr.json"), "--which", "far", "--m", "2000"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(t.kv.at("samples_used"), "2000");
  // Both members in one file: the member must be named.
  EXPECT_EQ(run({"test", "--q", path("cfr.json"), "--epsilon", "0.5", "--simulate",
                 path("cfr.json")}).code,
            2);
}

TEST_F(CliTest, TestAcceptsTheReferenceItself) {
  ASSERT_EQ(run({"gen", "--family", "mult", "--C", "2", "--blocks", "3", "--which", "far",
                 "--out", path("far.json")}).code,
            0);
  const auto ref = read_json_file(path("far.json"))["reference"];
  write("ref.json", ref.dump());
  int yes = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const auto r = run({"test", "--q", path("ref.json"), "--epsilon", "0.5", "--simulate",
                        path("ref.json"), "--seed", std::to_string(seed), "--sampler",
                        "multinomial"});
    ASSERT_EQ(r.code, 0) << r.err;
    yes += r.kv.at("decision") == "YES";
  }
  EXPECT_GE(yes, 9);
  const auto far = run({"test", "--q", path("far.json"), "--epsilon", "0.5", "--simulate",
                        path("far.json"), "--sampler", "multinomial"});
  EXPECT_EQ(far.kv.at("decision"), "NO");
}

TEST_F(CliTest, UniformReferenceAcceptsAnyRelabeling) {
  write("u.json", pmf_to_json(Pmf::uniform(64)).dump());
  Rng rng(4);
  const auto member = apply_permutation(Pmf::uniform(64), Permutation::random(64, rng));
  write("m.json", pmf_to_json(member).dump());
  const auto r = run({"test", "--q", path("u.json"), "--epsilon", "0.3", "--simulate",
                      path("m.json"), "--m", "500"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.kv.at("decision"), "YES");
}

TEST_F(CliTest, SampleFiles) {
  write("u.json", pmf_to_json(Pmf::uniform(4)).dump());
  write("good.txt", "0\n1\n2\n3\n");
  write("bad.txt", "0\n4\n");
  const auto ok = run({"test", "--q", path("u.json"), "--epsilon", "0.5", "--samples",
                       path("good.txt")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.kv.at("samples_used"), "4");
  EXPECT_EQ(ok.kv.at("decision"), "YES");
  EXPECT_EQ(run({"test", "--q", path("u.json"), "--epsilon", "0.5", "--samples",
                 path("bad.txt")}).code,
            4);
  EXPECT_EQ(run({"test", "--q", path("missing.json"), "--epsilon", "0.5", "--samples",
                 path("good.txt")}).code,
            4);
  write("broken.json", "{not json");
  EXPECT_EQ(run({"test", "--q", path("broken.json"), "--epsilon", "0.5", "--samples",
                 path("good.txt")}).code,
            4);
  write("other.json", pmf_to_json(Pmf::uniform(5)).dump());
  EXPECT_EQ(run({"test", "--q", path("u.json"), "--epsilon", "0.5", "--simulate",
                 path("other.json")}).code,
            4);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"test", "--epsilon", "0.5"}).code, 2);
  write("u.json", pmf_to_json(Pmf::uniform(4)).dump());
  write("s.txt", "0\n");
  EXPECT_EQ(run({"test", "--q", path("u.json"), "--epsilon", "0.5", "--samples", path("s.txt"),
                 "--simulate", path("u.json")}).code,
            2);
  EXPECT_EQ(run({"test", "--q", path("u.json"), "--epsilon", "0.5"}).code, 2);
  EXPECT_EQ(run({"test", "--q", path("u.json"), "--epsilon", "7", "--samples", path("s.txt")}).code,
            2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, Estimate) {
  ASSERT_EQ(run({"gen", "--family", "mult", "--C", "2", "--blocks", "10", "--which", "far",
                 "--out", path("far.json")}).code,
            0);
  const auto r = run({"estimate", "--q", path("far.json"), "--eps-close", "0.142857142857",
                      "--eps-far", "0.285714285714", "--simulate", path("far.json"), "--sampler",
                      "multinomial"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.kv.at("estimate")), 2.0 / 7.0, 0.03);
  EXPECT_EQ(r.kv.at("decision"), "NO");
  EXPECT_EQ(r.kv.at("samples_used"), r.kv.at("plugin_budget"));
}

TEST_F(CliTest, Bench) {
  write("exp.json", R"({"tester":"PERM_ID","family":"EQUAL","n":50,"epsilon":0.5,
                        "sample_grid":[10,100],"trials":3,"master_seed":4})");
  const auto r = run({"bench", "--config", path("exp.json"), "--out", path("out.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("out.csv"));
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header.rfind("family,tester,n,param1", 0), 0u);
  EXPECT_EQ(row1.rfind("EQUAL,PERM_ID,50,0.5,,10,3,1,", 0), 0u);
  EXPECT_FALSE(std::getline(in, extra));

  write("zero.json", R"({"tester":"PERM_ID","family":"EQUAL","n":50,"epsilon":0.5,"trials":0})");
  EXPECT_EQ(run({"bench", "--config", path("zero.json"), "--out", path("z.csv")}).code, 2);
  EXPECT_FALSE(fs::exists(path("z.csv")));
}

TEST_F(CliTest, Verify) {
  const auto mult = run({"verify", "--family", "mult", "--C", "2"});
  EXPECT_EQ(mult.code, 0) << mult.err;
  EXPECT_EQ(mult.kv.at("status"), "PASS");
  EXPECT_EQ(run({"verify", "--family", "cfr", "--pairs", "100", "--seed", "7"}).code, 0);
  EXPECT_EQ(run({"verify", "--family", "instances", "--count", "20"}).code, 0);
  EXPECT_EQ(run({"verify", "--family", "mult", "--C", "1"}).code, 2);
}

TEST_F(CliTest, DeterministicOutput) {
  const std::vector<std::string> args{"gen", "--family", "cfr", "--blocks", "3", "--seed", "9"};
  EXPECT_EQ(run(args).out, run(args).out);
}

#ifdef PERMTEST_BINARY
int exit_status(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = PERMTEST_BINARY;
  EXPECT_EQ(exit_status(bin + " verify --family mult --C 2 > /dev/null"), 0);
  EXPECT_EQ(exit_status(bin + " > /dev/null 2>&1"), 2);
  EXPECT_EQ(exit_status(bin + " gen --family testing-lb --n 64 --epsilon 0.1 > /dev/null 2>&1"),
            3);
  write("u.json", pmf_to_json(Pmf::uniform(4)).dump());
  write("bad.txt", "9\n");
  EXPECT_EQ(exit_status(bin + " test --q " + path("u.json") + " --epsilon 0.5 --samples " +
                        path("bad.txt") + " > /dev/null 2>&1"),
            4);
}
#endif

}  // namespace
}  // namespace permtest
