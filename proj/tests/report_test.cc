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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "sdc/faultsim/faulty_backend.h"
#include "sdc/faultsim/spec_parser.h"
#include "sdc/report/config.h"
#include "sdc/report/serialize.h"

namespace sdc {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::filesystem::path kGolden =
    std::filesystem::path(SDC_FIXTURE_DIR) / "golden_report.jsonl";

FaultReport core59_report() {
  ReferenceBackend ref;
  auto faulty = inject(ref, load_fault_specs_file(resolve_spec_path("core59.spec")));
  ScanPlan plan;
  plan.targeted = builtin_targeted_vectors();
  plan.stream.count = 20;
  plan.cores = {58, 59};
  return scan_host("host-a", plan, *faulty, {.canonical = true});
}

ReportRecord summary_record(const std::string& host, std::uint64_t quantum,
                            std::uint64_t mismatches) {
  ReportRecord r;
  r.timestamp = kCanonicalTimestamp;
  r.payload = {{"host", host},
               {"status", mismatches ? "FAIL" : "PASS"},
               {"plan_hash", hex64(0xabc)},
               {"quantum_id", quantum},
               {"mismatch_count", mismatches}};
  return r;
}

TEST(Record, RoundTrip) {
  ReportRecord r;
  r.kind = RecordKind::kMetrics;
  r.timestamp = "2026-01-02T03:04:05Z";
  r.payload = {{"a", 1}, {"b", {1.5, "x"}}};
  const std::string line = emit_record(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(parse_record(line), r);
  EXPECT_EQ(emit_record(parse_record(line)), line);
}

TEST(Record, UnknownFieldsSurvive) {
  const std::string line =
      R"({"schema_version":1,"kind":"SIM_EVENT","timestamp":"t","payload":{"z":1,"new":[true]},"later":{"k":2},"alpha":3})";
  const ReportRecord r = parse_record(line);
  EXPECT_EQ(r.extra.size(), 2u);
  EXPECT_EQ(r.payload["new"][0], true);
  EXPECT_EQ(emit_record(r), line);
}

TEST(Record, EmptyInputIsEmptyReport) {
  EXPECT_TRUE(parse_report("").empty());
  EXPECT_TRUE(parse_report("\n  \n").empty());
  EXPECT_EQ(emit_report({}), "");
}

TEST(Record, ErrorsNameTheLine) {
  const std::string good = emit_record(summary_record("h", 0, 0));
  const std::string bad_version =
      R"({"schema_version":2,"kind":"SCAN_RESULT","timestamp":"t","payload":{}})";
  try {
    parse_report(good + "\n\n" + bad_version + "\n");
    FAIL();
  } catch (const ReportParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("schema_version"), std::string::npos);
  }
  EXPECT_THROW(parse_record("{"), ReportParseError);
  EXPECT_THROW(parse_record("[]"), ReportParseError);
  EXPECT_THROW(
      parse_record(R"({"schema_version":1,"kind":"NOPE","timestamp":"t","payload":{}})"),
      ReportParseError);
  EXPECT_THROW(parse_record(R"({"schema_version":1,"kind":"METRICS","payload":{}})"),
               ReportParseError);
  EXPECT_THROW(
      parse_record(R"({"schema_version":1,"kind":"METRICS","timestamp":"t","payload":3})"),
      ReportParseError);
}

TEST(Record, GoldenFixtureRoundTripsByteForByte) {
  const std::string bytes = read_file(kGolden);
  ASSERT_FALSE(bytes.empty());
  const auto records = parse_report(bytes);
  EXPECT_EQ(records.size(), 16u);
  EXPECT_EQ(emit_report(records), bytes);
  EXPECT_EQ(records.back().extra["producer"], "lab-7");
  EXPECT_EQ(records.back().payload["rack"], "r12");
}

TEST(Record, FileRoundTrip) {
  const auto records = parse_report(read_file(kGolden));
  const auto path = std::filesystem::temp_directory_path() / "sdc_report_rt.jsonl";
  write_report_file(path.string(), records);
  EXPECT_EQ(read_report_file(path.string()), records);
  std::filesystem::remove(path);
  EXPECT_THROW(read_report_file("/nonexistent/x.jsonl"), std::runtime_error);
}

TEST(Serialize, Hex64) {
  EXPECT_EQ(hex64(0x401d26975b913c1cULL), "0x401d26975b913c1c");
  EXPECT_EQ(hex64(0), "0x0000000000000000");
  EXPECT_EQ(parse_hex64("0x40e0052000000000"), 0x40e0052000000000ULL);
  EXPECT_THROW(parse_hex64("40e0"), ReportFormatError);
  EXPECT_THROW(parse_hex64("0xzz"), ReportFormatError);
}

TEST(Serialize, VectorBitsAreAuthoritative) {
  const TestVector v(1.1, 53, {1, 2, 255});
  const Json j = vector_to_json(v);
  EXPECT_EQ(vector_from_json(j), v);
  Json tampered = j;
  tampered["base"] = 9.0;  // readable field is informational
  EXPECT_EQ(vector_from_json(tampered), v);
  tampered = j;
  tampered["base_bits"] = hex64(double_bits(1.2));
  EXPECT_THROW(vector_from_json(tampered), ReportFormatError);  // id check
  for (double special : {std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::infinity(), -0.0}) {
    const TestVector s(special, -3);
    EXPECT_EQ(vector_from_json(vector_to_json(s)).id(), s.id());
  }
}

TEST(Serialize, ValuesAndVerdicts) {
  for (const KernelValue& v : {KernelValue{std::int64_t{-5}},
                               KernelValue{-0.0}, KernelValue{142.9}}) {
    const KernelValue back = value_from_json(value_to_json(v));
    EXPECT_EQ(back.index(), v.index());
    EXPECT_EQ(format_value(back), format_value(v));
  }
  Verdict verdict;
  verdict.outcome = Outcome::kMismatch;
  verdict.observed = std::int64_t{0};
  verdict.expected = std::int64_t{156};
  verdict.vector = TestVector(1.1, 53);
  verdict.core = {"h", 59};
  const Verdict back = verdict_from_json(verdict_to_json(verdict));
  EXPECT_EQ(back.outcome, verdict.outcome);
  EXPECT_EQ(back.vector, verdict.vector);
  EXPECT_EQ(back.core, verdict.core);
  EXPECT_EQ(std::get<std::int64_t>(back.expected), 156);
}

TEST(Serialize, FaultReportRoundTrip) {
  const FaultReport report = core59_report();
  ASSERT_EQ(report.status, ScanStatus::kFail);
  const ReportRecord record = scan_record(report);
  const FaultReport back = fault_report_from_record(record);
  EXPECT_EQ(back.host, report.host);
  EXPECT_EQ(back.status, report.status);
  EXPECT_EQ(back.plan_hash, report.plan_hash);
  EXPECT_EQ(back.flagged_cores(), report.flagged_cores());
  EXPECT_EQ(back.mismatch_count(), report.mismatch_count());
  EXPECT_EQ(scan_record(back), record);
  EXPECT_EQ(parse_record(emit_record(record)), record);
}

TEST(Serialize, ReproducerRecords) {
  const FaultReport report = core59_report();
  const auto records = reproducer_records(report);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].kind, RecordKind::kReproducer);
  EXPECT_EQ(records[0].payload["core"], 59);
  const ShrinkResult shrink = shrink_from_json(records[0].payload);
  EXPECT_EQ(shrink.minimal_vectors.size(), 2u);
  const auto vectors = reproducer_vectors({records[0], records[0]});
  EXPECT_EQ(vectors, (std::vector<TestVector>{TestVector(1.1, 53),
                                              TestVector(1.1, 68)}));
}

TEST(Serialize, EventsRoundTrip) {
  FleetConfig config;
  config.hosts = 5;
  config.cores_per_host = 2;
  const Fleet fleet = build_fleet(config);
  SimEvent event;
  event.id = 4;
  event.hour = 99;
  event.host = 3;
  event.kind = SimEventKind::kDetected;
  event.cause = 2;
  const ReportRecord record = event_record(event, fleet, kCanonicalTimestamp);
  EXPECT_EQ(record.payload["host_name"], "host-00003");
  EXPECT_EQ(event_from_record(record), event);
  event.cause.reset();
  event.kind = SimEventKind::kQuantumComplete;
  event.quantum_id = 7;
  event.mismatches = 1;
  EXPECT_EQ(event_from_record(event_record(event, fleet, "t")), event);
}

TEST(Collector, DuplicatesAreIdempotent) {
  CollectorState once;
  CollectorState twice;
  const auto r = summary_record("h1", 0, 0);
  collector_ingest(once, r);
  collector_ingest(twice, r);
  collector_ingest(twice, r);
  EXPECT_EQ(once, twice);
  EXPECT_EQ(twice.duplicates_dropped(), 1u);
  EXPECT_EQ(twice.status("h1"), HostHealth::kPass);
  EXPECT_EQ(twice.status("other"), HostHealth::kUntested);
}

TEST(Collector, FailIsStickyUntilReset) {
  CollectorState state;
  collector_ingest(state, summary_record("h", 0, 3));
  collector_ingest(state, summary_record("h", 1, 0));
  collector_ingest(state, summary_record("h", 2, 0));
  EXPECT_EQ(state.status("h"), HostHealth::kFail);
  state.reset("h");
  EXPECT_EQ(state.status("h"), HostHealth::kUntested);
  collector_ingest(state, summary_record("h", 3, 0));
  EXPECT_EQ(state.status("h"), HostHealth::kPass);
}

TEST(Collector, ShuffledDuplicatedStreamGivesSameState) {
  std::vector<ReportRecord> records;
  std::mt19937_64 gen(17);
  for (int i = 0; i < 10000; ++i) {
    const std::string host = "host-" + std::to_string(gen() % 300);
    records.push_back(summary_record(host, gen() % 20, gen() % 50 == 0 ? 1 : 0));
  }
  CollectorState ordered;
  for (const auto& r : records) collector_ingest(ordered, r);

  for (int trial = 0; trial < 3; ++trial) {
    std::vector<ReportRecord> shuffled = records;
    for (std::size_t i = 0; i < records.size(); i += 3) {
      shuffled.push_back(records[i]);
    }
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CollectorState state;
    for (const auto& r : shuffled) collector_ingest(state, r);
    EXPECT_EQ(state, ordered);
    EXPECT_EQ(state.hosts(), ordered.hosts());
  }
}

TEST(Collector, MalformedRecordLeavesStateUnchanged) {
  CollectorState state;
  collector_ingest(state, summary_record("h", 0, 0));
  const CollectorState before = state;
  ReportRecord bad = summary_record("h", 1, 5);
  bad.payload.erase("plan_hash");
  EXPECT_THROW(collector_ingest(state, bad), ReportFormatError);
  ReportRecord wrong_kind = summary_record("h", 1, 5);
  wrong_kind.kind = RecordKind::kMetrics;
  EXPECT_THROW(collector_ingest(state, wrong_kind), ReportFormatError);
  ReportRecord wrong_type = summary_record("h", 1, 5);
  wrong_type.payload["mismatch_count"] = "five";
  EXPECT_THROW(collector_ingest(state, wrong_type), ReportFormatError);
  EXPECT_EQ(state, before);
  EXPECT_EQ(state.status("h"), HostHealth::kPass);
}

TEST(Config, ParsesEveryKey) {
  const FleetConfig c = parse_fleet_config(R"(# comment
mode = production
hosts = 12
cores_per_host = 4
defect_rate = 0.25
maintenance_rate = 0.5
maintenance_duration_hours = 3
provision_at_start = true
workload_overhead_budget = 0.02
plan_cost_hours = 2.5
scan_duration_hours = 2
period_days = 7
horizon_days = 9
seed = 42
app_files_per_host_day = 3
collector_duplicate_rate = 0.1
fault_library = core59.spec, errors_table.spec
scan.kernels = INT_POW, POW_CHAIN
scan.count = 5
scan.seed = 8
scan.targeted = none
scan.budget_ops = 1000
)");
  EXPECT_EQ(c.mode, SchedulerMode::kProductionFriendly);
  EXPECT_EQ(c.hosts, 12u);
  EXPECT_EQ(c.cores_per_host, 4u);
  EXPECT_EQ(c.defect_rate, 0.25);
  EXPECT_EQ(c.maintenance_rate, 0.5);
  EXPECT_EQ(c.maintenance_duration_hours, 3u);
  EXPECT_TRUE(c.provision_at_start);
  EXPECT_EQ(c.workload_overhead_budget, 0.02);
  EXPECT_EQ(c.plan_cost_hours, 2.5);
  EXPECT_EQ(c.scan_duration_hours, 2u);
  EXPECT_EQ(c.period_days, 7u);
  EXPECT_EQ(c.horizon_days, 9u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.app_files_per_host_day, 3u);
  EXPECT_EQ(c.collector_duplicate_rate, 0.1);
  EXPECT_EQ(c.fault_library.size(), 3u);
  EXPECT_EQ(c.scan_plan.kernels,
            (std::vector<KernelKind>{KernelKind::kIntPow, KernelKind::kPowChain}));
  EXPECT_EQ(c.scan_plan.stream.count, 5u);
  EXPECT_EQ(c.scan_plan.stream.seed, 8u);
  EXPECT_TRUE(c.scan_plan.targeted.empty());
  EXPECT_EQ(c.scan_plan.budget_ops, 1000u);
}

TEST(Config, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_fleet_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return 999;
  };
  EXPECT_EQ(line_of("hosts = 3\nbogus = 1\n"), 2u);
  EXPECT_EQ(line_of("hosts = 3\nhosts = 4\n"), 2u);
  EXPECT_EQ(line_of("hosts = three\n"), 1u);
  EXPECT_EQ(line_of("# c\nmode = sometimes\n"), 2u);
  EXPECT_EQ(line_of("no equals sign\n"), 1u);
  EXPECT_EQ(line_of("scan.kernels = INT_POW, NOPE\n"), 1u);
  EXPECT_EQ(line_of("fault_library = missing_file.spec\n"), 1u);
  EXPECT_EQ(line_of("hosts = -1\n"), 1u);
  // Range checks run after parsing and carry no line.
  EXPECT_EQ(line_of("defect_rate = 2\n"), 0u);
}

TEST(Config, SplitList) {
  EXPECT_EQ(split_list(" a, b ,,c "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_list("  ").empty());
}

TEST(Config, BundledConfigsLoad) {
  for (const char* name : {"periodic_15d.conf", "opportunistic.conf",
                           "production.conf", "healthy.conf"}) {
    EXPECT_NO_THROW(load_fleet_config_file(
        std::filesystem::path(SDC_TEST_DATA_DIR) / "configs" / name))
        << name;
  }
}

}  // namespace
}  // namespace sdc
