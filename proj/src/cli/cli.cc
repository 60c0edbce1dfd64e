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

#include "sdc/cli/cli.h"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "sdc/detector/scan.h"
#include "sdc/detector/shrink.h"
#include "sdc/faultsim/faulty_backend.h"
#include "sdc/faultsim/spec_parser.h"
#include "sdc/fleetsim/fleet.h"
#include "sdc/fleetsim/simulator.h"
#include "sdc/report/config.h"
#include "sdc/report/record.h"
#include "sdc/report/serialize.h"

namespace sdc {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string specs;
  std::string config;
  std::string out;
  bool canonical = false;
};

void add_common(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--seed", flags.seed, "Seed (default: $SDC_SEED, then 1)");
  cmd.add_option("--specs", flags.specs,
                 "Fault spec files, comma-separated (bundled names allowed)");
  cmd.add_option("--config", flags.config, "key = value configuration file");
  cmd.add_option("--out", flags.out, "Write JSONL here instead of stdout");
  cmd.add_flag("--canonical", flags.canonical,
               "Fixed timestamps and durations for byte-stable output");
}

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("SDC_SEED");
  if (text == nullptr || *text == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const char* end = text + std::char_traits<char>::length(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(std::string("SDC_SEED is not an unsigned integer: ") +
                     text);
  }
  return value;
}

std::vector<FaultSpec> load_specs(const std::string& list) {
  std::vector<FaultSpec> specs;
  for (const std::string& name : split_list(list)) {
    auto more = load_fault_specs_file(resolve_spec_path(name));
    specs.insert(specs.end(), more.begin(), more.end());
  }
  return specs;
}

std::vector<KernelKind> parse_kernels(const std::string& list) {
  std::vector<KernelKind> kernels;
  for (std::string name : split_list(list)) {
    for (char& c : name) c = static_cast<char>(std::toupper(c));
    const auto kind = kernel_kind_from_string(name);
    if (!kind) throw UsageError("unknown kernel '" + name + "'");
    kernels.push_back(*kind);
  }
  if (kernels.empty()) throw UsageError("--kernels is empty");
  return kernels;
}

std::vector<TestVector> targeted_from(const std::string& value) {
  if (value == "builtin") return builtin_targeted_vectors();
  if (value == "none") return {};
  return reproducer_vectors(read_report_file(value));
}

void emit(const std::vector<ReportRecord>& records, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << emit_report(records);
  } else {
    write_report_file(path, records);
  }
}

// Human-readable text goes to stdout unless stdout carries the JSONL.
std::ostream& summary_stream(const CommonFlags& flags, std::ostream& out,
                             std::ostream& err) {
  return flags.out.empty() ? err : out;
}

std::string describe_vector(const TestVector& v) {
  std::string text = fmt::format("x={} y={}", v.base(), v.exponent());
  if (!v.payload().empty()) {
    text += fmt::format(" payload={}B", v.payload().size());
  }
  return text;
}

struct ScanFlags {
  CommonFlags common;
  std::string cores = "0-63";
  std::string kernels;
  std::optional<std::size_t> count;
  std::string targeted;
  std::string host = "localhost";
  bool no_shrink = false;
};

int cmd_scan(const ScanFlags& flags, std::ostream& out, std::ostream& err) {
  ScanPlan plan;
  if (!flags.common.config.empty()) {
    plan = load_fleet_config_file(flags.common.config).scan_plan;
  }
  plan.cores = parse_core_list(flags.cores);
  if (!flags.kernels.empty()) plan.kernels = parse_kernels(flags.kernels);
  if (flags.count) plan.stream.count = *flags.count;
  if (!flags.targeted.empty()) plan.targeted = targeted_from(flags.targeted);
  if (flags.common.seed) {
    plan.stream.seed = *flags.common.seed;
  } else if (flags.common.config.empty()) {
    if (const auto seed = env_seed()) plan.stream.seed = *seed;
  }

  ReferenceBackend reference;
  std::unique_ptr<ArithmeticBackend> faulty;
  if (!flags.common.specs.empty()) {
    faulty = inject(reference, load_specs(flags.common.specs));
  }
  const ArithmeticBackend& backend = faulty ? *faulty : reference;

  ScanHostOptions options;
  options.shrink = !flags.no_shrink;
  options.canonical = flags.common.canonical;
  const FaultReport report = scan_host(flags.host, plan, backend, options);

  std::vector<ReportRecord> records{scan_record(report)};
  for (ReportRecord& r : reproducer_records(report)) {
    records.push_back(std::move(r));
  }
  emit(records, flags.common.out, out);

  std::ostream& text = summary_stream(flags.common, out, err);
  fmt::print(text, "host {}: {} cores x {} vectors, seed {}, plan {}\n",
             report.host, report.cores_scanned, report.vectors_per_core,
             report.seed, hex64(report.plan_hash));
  if (report.status == ScanStatus::kPass) {
    fmt::print(text, "PASS\n");
    return kExitPass;
  }
  for (const CoreFindings& f : report.failing_cores) {
    fmt::print(text, "FAIL core {}: {} mismatches\n", f.core,
               f.mismatches.size());
  }
  return kExitCorruption;
}

struct SimulateFlags {
  CommonFlags common;
  std::string mode;
  std::optional<std::uint32_t> horizon_days;
};

std::string hours_text(const std::optional<double>& hours) {
  if (!hours) return "-";
  if (std::isinf(*hours)) return "inf";
  return fmt::format("{:g}", *hours);
}

int cmd_simulate(const SimulateFlags& flags, std::ostream& out,
                 std::ostream& err) {
  FleetConfig config;
  bool seed_from_config = false;
  if (!flags.common.config.empty()) {
    config = load_fleet_config_file(flags.common.config);
    seed_from_config = true;
  }
  if (!flags.mode.empty()) {
    const auto mode = scheduler_mode_from_string(flags.mode);
    if (!mode) throw UsageError("unknown mode '" + flags.mode + "'");
    config.mode = *mode;
  }
  if (flags.horizon_days) config.horizon_days = *flags.horizon_days;
  if (!flags.common.specs.empty()) {
    config.fault_library = load_specs(flags.common.specs);
  }
  if (flags.common.seed) {
    config.seed = *flags.common.seed;
  } else if (!seed_from_config) {
    config.seed = env_seed().value_or(1);
  }

  Fleet fleet = build_fleet(config);
  const SimulationResult result = run_simulation(fleet, config);
  const std::string timestamp =
      flags.common.canonical ? kCanonicalTimestamp : utc_timestamp_now();

  std::vector<ReportRecord> records;
  records.reserve(result.events.size() + 1);
  for (const SimEvent& event : result.events) {
    records.push_back(event_record(event, fleet, timestamp));
  }
  records.push_back(metrics_record(result.metrics, config, timestamp));
  emit(records, flags.common.out, out);

  const CoverageMetrics& m = result.metrics;
  std::ostream& text = summary_stream(flags.common, out, err);
  fmt::print(text, "{:<22}{}\n", "mode", to_string(m.mode));
  fmt::print(text, "{:<22}{}\n", "hosts", m.hosts);
  fmt::print(text, "{:<22}{} h\n", "horizon", m.horizon_hours);
  fmt::print(text, "{:<22}{:.1f}%\n", "scanned",
             100.0 * m.scanned_fraction);
  fmt::print(text, "{:<22}{}/{}\n", "detected", m.detected, m.defective);
  fmt::print(text, "{:<22}{}\n", "median ttd (h)",
             hours_text(m.median_time_to_detect_hours));
  fmt::print(text, "{:<22}{:g} h\n", "production lost",
             m.production_time_lost_hours);
  fmt::print(text, "{:<22}{:.6f} (budget {:g})\n", "overhead max",
             m.overhead_fraction_max, config.workload_overhead_budget);
  fmt::print(text, "{:<22}{}/{} files\n", "silent loss", m.silent_loss,
             m.files_submitted);
  return kExitPass;
}

struct ShrinkFlags {
  CommonFlags common;
  std::string input;
};

// Reproducer for one (core, kernel) from the report's own findings: the
// embedded shrink result, else one vector per distinct mismatch.
ShrinkResult reproducer_from_findings(const CoreFindings& findings,
                                      KernelKind kernel) {
  const auto it = findings.reproducers.find(kernel);
  if (it != findings.reproducers.end()) return it->second;
  ShrinkResult result;
  result.kernel = kernel;
  std::set<std::string> seen;
  result.stream_length = findings.mismatches.size();
  for (const Verdict& v : findings.mismatches) {
    if (v.kernel != kernel) continue;
    const std::string identity =
        format_value(v.observed) + "|" + format_value(v.expected) + "|" +
        std::to_string(static_cast<int>(v.observed_status)) +
        std::to_string(static_cast<int>(v.expected_status));
    if (!seen.insert(identity).second) continue;
    result.minimal_vectors.push_back(v.vector);
    result.certificates.push_back({v.vector, v.observed, v.expected});
  }
  return result;
}

int cmd_shrink(const ShrinkFlags& flags, std::ostream& out,
               std::ostream& err) {
  const std::vector<ReportRecord> input = read_report_file(flags.input);
  ReferenceBackend reference;
  std::unique_ptr<ArithmeticBackend> faulty;
  if (!flags.common.specs.empty()) {
    faulty = inject(reference, load_specs(flags.common.specs));
  }

  std::vector<ReportRecord> records;
  std::ostream& text = summary_stream(flags.common, out, err);
  for (const ReportRecord& record : input) {
    if (record.kind != RecordKind::kScanResult) continue;
    FaultReport report = fault_report_from_record(record);
    if (flags.common.canonical) report.timestamp = kCanonicalTimestamp;
    for (CoreFindings& findings : report.failing_cores) {
      std::set<KernelKind> kernels;
      for (const Verdict& v : findings.mismatches) kernels.insert(v.kernel);
      for (KernelKind kernel : kernels) {
        ShrinkResult result;
        if (faulty) {
          std::vector<TestVector> stream;
          std::set<std::uint64_t> ids;
          for (const Verdict& v : findings.mismatches) {
            if (v.kernel == kernel && ids.insert(v.vector.id()).second) {
              stream.push_back(v.vector);
            }
          }
          auto session = faulty->fresh_session();
          session->begin_scan(report.sim_time_hours);
          result = shrink(stream, CoreId{report.host, findings.core}, kernel,
                          *session);
        } else {
          result = reproducer_from_findings(findings, kernel);
        }
        fmt::print(text, "{} core {} {}: {} vector(s), {} evaluations\n",
                   report.host, findings.core, to_string(kernel),
                   result.minimal_vectors.size(), result.steps);
        for (const ShrinkCertificate& c : result.certificates) {
          fmt::print(text, "  {} -> observed {} expected {}\n",
                     describe_vector(c.vector), format_value(c.observed),
                     format_value(c.expected));
        }
        findings.reproducers[kernel] = std::move(result);
      }
    }
    for (ReportRecord& r : reproducer_records(report)) {
      records.push_back(std::move(r));
    }
  }
  if (records.empty()) {
    err << "shrink: " << flags.input << " contains no mismatches\n";
    return kExitError;
  }
  emit(records, flags.common.out, out);
  return kExitPass;
}

struct ReportFlags {
  CommonFlags common;
  std::vector<std::string> inputs;
};

int cmd_report(const ReportFlags& flags, std::ostream& out, std::ostream& err) {
  std::vector<ReportRecord> all;
  for (const std::string& path : flags.inputs) {
    try {
      auto records = read_report_file(path);
      all.insert(all.end(), records.begin(), records.end());
    } catch (const ReportParseError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  std::map<RecordKind, std::size_t> counts;
  CollectorState collector;
  for (const ReportRecord& record : all) {
    ++counts[record.kind];
    if (record.kind == RecordKind::kScanResult) collector_ingest(collector, record);
  }
  if (!flags.common.out.empty()) emit(all, flags.common.out, out);

  std::ostream& text = out;
  fmt::print(text, "{} records\n", all.size());
  for (const auto& [kind, n] : counts) {
    fmt::print(text, "  {:<14}{}\n", to_string(kind), n);
  }
  bool any_fail = false;
  for (const auto& [host, health] : collector.hosts()) {
    fmt::print(text, "{:<20}{}\n", host, to_string(health));
    any_fail |= health == HostHealth::kFail;
  }
  for (const ReportRecord& record : all) {
    if (record.kind != RecordKind::kMetrics) continue;
    const Json& p = record.payload;
    fmt::print(text, "metrics: mode {} detected {}/{} scanned {}\n",
               p.value("mode", std::string("?")), p.value("detected", 0),
               p.value("defective", 0), p.value("scanned_fraction", 0.0));
  }
  (void)err;
  return any_fail ? kExitCorruption : kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Silent data corruption screening toolkit", "sdcscreen"};
  app.require_subcommand(1);

  ScanFlags scan_flags;
  CLI::App* scan = app.add_subcommand("scan", "Scan cores of one host");
  add_common(*scan, scan_flags.common);
  scan->add_option("--cores", scan_flags.cores, "Core list, e.g. 0-3,7");
  scan->add_option("--kernels", scan_flags.kernels, "Kernel list");
  scan->add_option("--count", scan_flags.count, "Stream vectors per core");
  scan->add_option("--targeted", scan_flags.targeted,
                   "builtin, none, or a reproducer JSONL file");
  scan->add_option("--host", scan_flags.host, "Host name");
  scan->add_flag("--no-shrink", scan_flags.no_shrink, "Skip minimization");

  SimulateFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a fleet simulation");
  add_common(*simulate, sim_flags.common);
  simulate->add_option("--mode", sim_flags.mode,
                       "opportunistic, periodic or production");
  simulate->add_option("--horizon-days", sim_flags.horizon_days,
                       "Simulated days");

  ShrinkFlags shrink_flags;
  CLI::App* shrink_cmd =
      app.add_subcommand("shrink", "Minimize the mismatches of a scan report");
  add_common(*shrink_cmd, shrink_flags.common);
  shrink_cmd->add_option("report", shrink_flags.input, "Scan report (JSONL)")
      ->required();

  ReportFlags report_flags;
  CLI::App* report = app.add_subcommand("report", "Summarize JSONL reports");
  add_common(*report, report_flags.common);
  report->add_option("reports", report_flags.inputs, "JSONL files")->required();

  std::vector<const char*> argv{"sdcscreen"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (scan->parsed()) return cmd_scan(scan_flags, out, err);
    if (simulate->parsed()) return cmd_simulate(sim_flags, out, err);
    if (shrink_cmd->parsed()) return cmd_shrink(shrink_flags, out, err);
    if (report->parsed()) return cmd_report(report_flags, out, err);
  } catch (const std::exception& e) {
    err << "sdcscreen: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace sdc
