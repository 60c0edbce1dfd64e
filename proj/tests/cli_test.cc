// Copyright 2026 The sdcscreen Authors.
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
#include <sstream>

#include "sdc/cli/cli.h"
#include "sdc/report/record.h"

namespace sdc {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sdc_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("SDC_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("SDC_SEED");
  }
  std::string path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return path(name);
  }

  fs::path dir_;
};

const std::vector<std::string> kFaultyScan = {
    "scan", "--specs", "core59.spec", "--cores", "56-60", "--count", "50",
    "--targeted", "builtin", "--canonical"};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({"scan", "--cores", "9-1"}).code, kExitError);
  EXPECT_EQ(run({"scan", "--kernels", "NOPE"}).code, kExitError);
  EXPECT_EQ(run({"scan", "--specs", "no_such.spec"}).code, kExitError);
  EXPECT_EQ(run({"--help"}).code, kExitPass);
}

TEST_F(CliTest, CleanScanPasses) {
  const CliRun r = run({"scan", "--cores", "0-7", "--count", "40", "--canonical"});
  EXPECT_EQ(r.code, kExitPass);
  const auto records = parse_report(r.out);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].kind, RecordKind::kScanResult);
  EXPECT_EQ(records[0].payload["status"], "PASS");
  EXPECT_EQ(records[0].payload["seed"], 1);
}

TEST_F(CliTest, FaultyScanReportsCorruption) {
  const CliRun r = run(kFaultyScan);
  EXPECT_EQ(r.code, kExitCorruption);
  const auto records = parse_report(r.out);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].payload["status"], "FAIL");
  EXPECT_EQ(records[0].payload["failing_cores"][0]["core"], 59);
  EXPECT_EQ(records[1].kind, RecordKind::kReproducer);
  EXPECT_NE(r.err.find("core 59"), std::string::npos);
}

TEST_F(CliTest, CanonicalOutputIsByteStable) {
  std::vector<std::string> args = kFaultyScan;
  args.insert(args.end(), {"--out", path("a.jsonl")});
  EXPECT_EQ(run(args).code, kExitCorruption);
  args.back() = path("b.jsonl");
  EXPECT_EQ(run(args).code, kExitCorruption);
  EXPECT_EQ(slurp(path("a.jsonl")), slurp(path("b.jsonl")));

  const std::string conf = fs::path(SDC_TEST_DATA_DIR) / "configs" /
                           "opportunistic.conf";
  const CliRun s1 = run({"simulate", "--config", conf, "--canonical",
                      "--horizon-days", "10"});
  const CliRun s2 = run({"simulate", "--config", conf, "--canonical",
                      "--horizon-days", "10"});
  EXPECT_EQ(s1.code, kExitPass);
  EXPECT_EQ(s1.out, s2.out);
  EXPECT_FALSE(s1.out.empty());
}

TEST_F(CliTest, SeedPrecedence) {
  const std::vector<std::string> base = {"scan", "--cores", "0", "--count",
                                         "5", "--canonical"};
  auto seed_of = [](const CliRun& r) {
    return parse_report(r.out).at(0).payload["seed"].get<std::uint64_t>();
  };
  setenv("SDC_SEED", "7", 1);
  EXPECT_EQ(seed_of(run(base)), 7u);
  std::vector<std::string> flagged = base;
  flagged.insert(flagged.end(), {"--seed", "9"});
  EXPECT_EQ(seed_of(run(flagged)), 9u);
  setenv("SDC_SEED", "seven", 1);
  EXPECT_EQ(run(base).code, kExitError);
}

TEST_F(CliTest, ShrinkAndReplay) {
  std::vector<std::string> args = kFaultyScan;
  args.insert(args.end(), {"--no-shrink", "--out", path("scan.jsonl")});
  ASSERT_EQ(run(args).code, kExitCorruption);

  for (bool with_specs : {true, false}) {
    std::vector<std::string> shrink = {"shrink", path("scan.jsonl"), "--out",
                                       path("repro.jsonl"), "--canonical"};
    if (with_specs) shrink.insert(shrink.end(), {"--specs", "core59.spec"});
    const CliRun r = run(shrink);
    ASSERT_EQ(r.code, kExitPass) << r.err;
    const auto records = parse_report(slurp(path("repro.jsonl")));
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].kind, RecordKind::kReproducer);
    EXPECT_EQ(records[0].payload["minimal_vectors"].size(), 2u);
  }

  // The reproducer alone re-triggers the corruption on the faulty core.
  const CliRun replay = run({"scan", "--specs", "core59.spec", "--cores", "59",
                          "--count", "1", "--targeted", path("repro.jsonl"),
                          "--canonical"});
  EXPECT_EQ(replay.code, kExitCorruption);
  EXPECT_EQ(parse_report(replay.out).at(0).payload["mismatch_count"], 2);
  const CliRun healthy = run({"scan", "--cores", "59", "--count", "1",
                           "--targeted", path("repro.jsonl"), "--canonical"});
  EXPECT_EQ(healthy.code, kExitPass);
}

TEST_F(CliTest, ShrinkWithoutMismatchesFails) {
  ASSERT_EQ(run({"scan", "--cores", "0-1", "--count", "5", "--out",
                 path("clean.jsonl")})
                .code,
            kExitPass);
  EXPECT_EQ(run({"shrink", path("clean.jsonl")}).code, kExitError);
  EXPECT_EQ(run({"shrink", path("missing.jsonl")}).code, kExitError);
  EXPECT_EQ(run({"shrink", write("bad.jsonl", "{nope\n")}).code, kExitError);
}

TEST_F(CliTest, ReportExitReflectsCollectorState) {
  const std::string golden =
      (fs::path(SDC_FIXTURE_DIR) / "golden_report.jsonl").string();
  const CliRun failing = run({"report", golden});
  EXPECT_EQ(failing.code, kExitCorruption);
  EXPECT_NE(failing.out.find("host-a"), std::string::npos);

  ASSERT_EQ(run({"scan", "--cores", "0-1", "--count", "5", "--out",
                 path("clean.jsonl")})
                .code,
            kExitPass);
  EXPECT_EQ(run({"report", path("clean.jsonl")}).code, kExitPass);
  EXPECT_EQ(run({"report", write("bad.jsonl",
                                 R"({"schema_version":9,"kind":"METRICS"})"
                                 "\n")})
                .code,
            kExitError);

  const CliRun copy = run({"report", golden, "--out", path("copy.jsonl")});
  EXPECT_EQ(copy.code, kExitCorruption);
  EXPECT_EQ(slurp(path("copy.jsonl")), slurp(golden));
}

TEST_F(CliTest, SimulateExitCodes) {
  const std::string conf = write("tiny.conf",
                                 "hosts = 8\ncores_per_host = 4\n"
                                 "defect_rate = 0.25\nhorizon_days = 2\n"
                                 "period_days = 2\nscan.count = 4\n");
  const CliRun ok = run({"simulate", "--config", conf, "--canonical"});
  EXPECT_EQ(ok.code, kExitPass);
  const auto records = parse_report(ok.out);
  ASSERT_FALSE(records.empty());
  EXPECT_EQ(records.back().kind, RecordKind::kMetrics);
  EXPECT_EQ(run({"simulate", "--config", conf, "--mode", "sometimes"}).code,
            kExitError);
  EXPECT_EQ(run({"simulate", "--config",
                 write("bad.conf", "hosts = 0\n")})
                .code,
            kExitError);
}

TEST_F(CliTest, MalformedSpecFileIsAnError) {
  const std::string spec = write("bad.spec", "[spec x]\nclass = nope\n");
  const CliRun r = run({"scan", "--specs", spec, "--cores", "0"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("line"), std::string::npos);
}

}  // namespace
}  // namespace sdc
