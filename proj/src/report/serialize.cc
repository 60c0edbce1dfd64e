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

#include "sdc/report/serialize.h"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>

#include "sdc/kernels/hashing.h"

namespace sdc {
namespace {

std::string_view status_name(KernelStatus status) {
  return status == KernelStatus::kOk ? "OK" : "DOMAIN_ERROR";
}

KernelStatus status_from(const Json& json) {
  const auto name = json.get<std::string>();
  if (name == "OK") return KernelStatus::kOk;
  if (name == "DOMAIN_ERROR") return KernelStatus::kDomainError;
  throw ReportFormatError("unknown kernel status '" + name + "'");
}

const Json& field(const Json& json, const char* key) {
  if (!json.is_object()) throw ReportFormatError("expected an object");
  const auto it = json.find(key);
  if (it == json.end()) {
    throw ReportFormatError(std::string("missing field '") + key + "'");
  }
  return *it;
}

template <typename T>
T get(const Json& json, const char* key) {
  try {
    return field(json, key).get<T>();
  } catch (const Json::exception& e) {
    throw ReportFormatError(std::string("field '") + key + "': " + e.what());
  }
}

Json readable(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

void put_double(Json& json, const std::string& key, double value) {
  json[key] = readable(value);
  json[key + "_bits"] = hex64(double_bits(value));
}

double get_double(const Json& json, const std::string& key) {
  return double_from_bits(
      parse_hex64(get<std::string>(json, (key + "_bits").c_str())));
}

KernelKind kernel_from(const Json& json) {
  const auto name = json.get<std::string>();
  const auto kind = kernel_kind_from_string(name);
  if (!kind) throw ReportFormatError("unknown kernel '" + name + "'");
  return *kind;
}

std::string payload_hex(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : bytes) {
    out += kDigits[b >> 4];
    out += kDigits[b & 0xF];
  }
  return out;
}

std::vector<std::uint8_t> payload_from_hex(const std::string& text) {
  if (text.size() % 2) throw ReportFormatError("odd-length payload hex");
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < text.size(); i += 2) {
    unsigned value = 0;
    if (std::sscanf(text.substr(i, 2).c_str(), "%2x", &value) != 1) {
      throw ReportFormatError("bad payload hex");
    }
    bytes.push_back(static_cast<std::uint8_t>(value));
  }
  return bytes;
}

Json optional_number(const std::optional<double>& value) {
  return value ? readable(*value) : Json("inf");
}

}  // namespace

std::string hex64(std::uint64_t value) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016" PRIx64, value);
  return buf;
}

std::uint64_t parse_hex64(const std::string& text) {
  if (text.size() != 18 || text[0] != '0' || text[1] != 'x' ||
      text.find_first_not_of("0123456789abcdefABCDEF", 2) != std::string::npos) {
    throw ReportFormatError("bad 64-bit hex value '" + text + "'");
  }
  return std::stoull(text.substr(2), nullptr, 16);
}

Json vector_to_json(const TestVector& vector) {
  Json json = Json::object();
  put_double(json, "base", vector.base());
  put_double(json, "exponent", vector.exponent());
  json["payload"] = payload_hex(vector.payload());
  json["id"] = hex64(vector.id());
  return json;
}

TestVector vector_from_json(const Json& json) {
  TestVector vector(get_double(json, "base"), get_double(json, "exponent"),
                    payload_from_hex(get<std::string>(json, "payload")));
  if (json.contains("id") &&
      parse_hex64(get<std::string>(json, "id")) != vector.id()) {
    throw ReportFormatError("vector id does not match its fields");
  }
  return vector;
}

Json value_to_json(const KernelValue& value) {
  Json json = Json::object();
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    json["type"] = "int";
    json["int"] = *i;
  } else {
    json["type"] = "real";
    put_double(json, "real", std::get<double>(value));
  }
  return json;
}

KernelValue value_from_json(const Json& json) {
  const auto type = get<std::string>(json, "type");
  if (type == "int") return get<std::int64_t>(json, "int");
  if (type == "real") return get_double(json, "real");
  throw ReportFormatError("unknown value type '" + type + "'");
}

Json verdict_to_json(const Verdict& verdict) {
  Json json = Json::object();
  json["kernel"] = to_string(verdict.kernel);
  json["host"] = verdict.core.host;
  json["core"] = verdict.core.core;
  json["vector"] = vector_to_json(verdict.vector);
  json["observed"] = value_to_json(verdict.observed);
  json["expected"] = value_to_json(verdict.expected);
  json["observed_status"] = status_name(verdict.observed_status);
  json["expected_status"] = status_name(verdict.expected_status);
  return json;
}

Verdict verdict_from_json(const Json& json) {
  Verdict verdict;
  verdict.outcome = Outcome::kMismatch;
  verdict.kernel = kernel_from(field(json, "kernel"));
  verdict.core = CoreId{get<std::string>(json, "host"),
                        get<std::uint32_t>(json, "core")};
  verdict.vector = vector_from_json(field(json, "vector"));
  verdict.observed = value_from_json(field(json, "observed"));
  verdict.expected = value_from_json(field(json, "expected"));
  verdict.observed_status = status_from(field(json, "observed_status"));
  verdict.expected_status = status_from(field(json, "expected_status"));
  return verdict;
}

Json shrink_to_json(const ShrinkResult& result) {
  Json json = Json::object();
  json["kernel"] = to_string(result.kernel);
  json["stream_length"] = result.stream_length;
  Json vectors = Json::array();
  for (const TestVector& v : result.minimal_vectors) {
    vectors.push_back(vector_to_json(v));
  }
  json["minimal_vectors"] = std::move(vectors);
  json["steps"] = result.steps;
  json["subset_tests"] = result.subset_tests;
  Json certs = Json::array();
  for (const ShrinkCertificate& c : result.certificates) {
    Json cert = Json::object();
    cert["vector"] = vector_to_json(c.vector);
    cert["observed"] = value_to_json(c.observed);
    cert["expected"] = value_to_json(c.expected);
    certs.push_back(std::move(cert));
  }
  json["certificates"] = std::move(certs);
  return json;
}

ShrinkResult shrink_from_json(const Json& json) {
  ShrinkResult result;
  result.kernel = kernel_from(field(json, "kernel"));
  result.stream_length = get<std::size_t>(json, "stream_length");
  for (const Json& v : field(json, "minimal_vectors")) {
    result.minimal_vectors.push_back(vector_from_json(v));
  }
  result.steps = get<std::uint64_t>(json, "steps");
  result.subset_tests = get<std::uint64_t>(json, "subset_tests");
  for (const Json& c : field(json, "certificates")) {
    result.certificates.push_back({vector_from_json(field(c, "vector")),
                                   value_from_json(field(c, "observed")),
                                   value_from_json(field(c, "expected"))});
  }
  return result;
}

ReportRecord scan_record(const FaultReport& report, std::uint64_t quantum_id) {
  ReportRecord record;
  record.kind = RecordKind::kScanResult;
  record.timestamp = report.timestamp;
  Json& p = record.payload;
  p["host"] = report.host;
  p["status"] = report.status == ScanStatus::kPass ? "PASS" : "FAIL";
  p["seed"] = report.seed;
  p["plan_hash"] = hex64(report.plan_hash);
  p["quantum_id"] = quantum_id;
  p["cores_scanned"] = report.cores_scanned;
  p["vectors_per_core"] = report.vectors_per_core;
  p["sim_time_hours"] = readable(report.sim_time_hours);
  p["duration_ms"] = readable(report.duration_ms);
  p["mismatch_count"] = report.mismatch_count();
  Json cores = Json::array();
  for (const CoreFindings& findings : report.failing_cores) {
    Json core = Json::object();
    core["core"] = findings.core;
    Json mismatches = Json::array();
    for (const Verdict& v : findings.mismatches) {
      mismatches.push_back(verdict_to_json(v));
    }
    core["mismatches"] = std::move(mismatches);
    Json reproducers = Json::array();
    for (const auto& [kernel, result] : findings.reproducers) {
      reproducers.push_back(shrink_to_json(result));
    }
    core["reproducers"] = std::move(reproducers);
    cores.push_back(std::move(core));
  }
  p["failing_cores"] = std::move(cores);
  return record;
}

FaultReport fault_report_from_record(const ReportRecord& record) {
  if (record.kind != RecordKind::kScanResult) {
    throw ReportFormatError("expected a SCAN_RESULT record");
  }
  const Json& p = record.payload;
  FaultReport report;
  report.host = get<std::string>(p, "host");
  const auto status = get<std::string>(p, "status");
  if (status != "PASS" && status != "FAIL") {
    throw ReportFormatError("unknown scan status '" + status + "'");
  }
  report.status = status == "PASS" ? ScanStatus::kPass : ScanStatus::kFail;
  report.seed = get<std::uint64_t>(p, "seed");
  report.plan_hash = parse_hex64(get<std::string>(p, "plan_hash"));
  report.cores_scanned = get<std::size_t>(p, "cores_scanned");
  report.vectors_per_core = get<std::size_t>(p, "vectors_per_core");
  report.sim_time_hours = get<double>(p, "sim_time_hours");
  report.duration_ms = get<double>(p, "duration_ms");
  report.timestamp = record.timestamp;
  for (const Json& core : field(p, "failing_cores")) {
    CoreFindings findings;
    findings.core = get<std::uint32_t>(core, "core");
    for (const Json& v : field(core, "mismatches")) {
      findings.mismatches.push_back(verdict_from_json(v));
    }
    for (const Json& r : field(core, "reproducers")) {
      ShrinkResult result = shrink_from_json(r);
      findings.reproducers.emplace(result.kernel, std::move(result));
    }
    report.failing_cores.push_back(std::move(findings));
  }
  return report;
}

ScanResultSummary scan_summary(const ReportRecord& record) {
  if (record.kind != RecordKind::kScanResult) {
    throw ReportFormatError("collector accepts SCAN_RESULT records only");
  }
  const Json& p = record.payload;
  ScanResultSummary summary;
  summary.host = get<std::string>(p, "host");
  if (summary.host.empty()) throw ReportFormatError("empty host");
  summary.plan_hash = parse_hex64(get<std::string>(p, "plan_hash"));
  summary.quantum_id = get<std::uint64_t>(p, "quantum_id");
  summary.mismatches = get<std::uint64_t>(p, "mismatch_count");
  return summary;
}

std::vector<ReportRecord> reproducer_records(const FaultReport& report) {
  std::vector<ReportRecord> records;
  for (const CoreFindings& findings : report.failing_cores) {
    for (const auto& [kernel, result] : findings.reproducers) {
      ReportRecord record;
      record.kind = RecordKind::kReproducer;
      record.timestamp = report.timestamp;
      record.payload["host"] = report.host;
      record.payload["core"] = findings.core;
      record.payload["plan_hash"] = hex64(report.plan_hash);
      record.payload["step_bound"] =
          shrink_step_bound(result.stream_length,
                            result.minimal_vectors.size());
      const Json body = shrink_to_json(result);
      for (auto it = body.begin(); it != body.end(); ++it) {
        record.payload[it.key()] = it.value();
      }
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::vector<TestVector> reproducer_vectors(
    const std::vector<ReportRecord>& records) {
  std::vector<TestVector> vectors;
  std::set<std::uint64_t> seen;
  for (const ReportRecord& record : records) {
    if (record.kind != RecordKind::kReproducer) continue;
    for (const Json& v : field(record.payload, "minimal_vectors")) {
      TestVector vector = vector_from_json(v);
      if (seen.insert(vector.id()).second) vectors.push_back(std::move(vector));
    }
  }
  return vectors;
}

ReportRecord event_record(const SimEvent& event, const Fleet& fleet,
                          const std::string& timestamp) {
  ReportRecord record;
  record.kind = RecordKind::kSimEvent;
  record.timestamp = timestamp;
  Json& p = record.payload;
  p["id"] = event.id;
  p["hour"] = event.hour;
  p["host"] = event.host;
  p["host_name"] = event.host < fleet.hosts.size()
                       ? fleet.hosts[event.host].name
                       : host_name(event.host);
  p["event"] = to_string(event.kind);
  p["mismatches"] = event.mismatches;
  p["quantum_id"] = event.quantum_id;
  p["cause"] = event.cause ? Json(*event.cause) : Json(nullptr);
  return record;
}

SimEvent event_from_record(const ReportRecord& record) {
  if (record.kind != RecordKind::kSimEvent) {
    throw ReportFormatError("expected a SIM_EVENT record");
  }
  const Json& p = record.payload;
  SimEvent event;
  event.id = get<std::uint64_t>(p, "id");
  event.hour = get<std::uint64_t>(p, "hour");
  event.host = get<std::uint32_t>(p, "host");
  const auto name = get<std::string>(p, "event");
  const auto kind = sim_event_kind_from_string(name);
  if (!kind) throw ReportFormatError("unknown event '" + name + "'");
  event.kind = *kind;
  event.mismatches = get<std::uint64_t>(p, "mismatches");
  event.quantum_id = get<std::uint64_t>(p, "quantum_id");
  const Json& cause = field(p, "cause");
  if (!cause.is_null()) event.cause = cause.get<std::uint64_t>();
  return event;
}

ReportRecord metrics_record(const CoverageMetrics& m, const FleetConfig& config,
                            const std::string& timestamp) {
  ReportRecord record;
  record.kind = RecordKind::kMetrics;
  record.timestamp = timestamp;
  Json& p = record.payload;
  p["mode"] = to_string(m.mode);
  p["seed"] = config.seed;
  p["hosts"] = m.hosts;
  p["cores_per_host"] = config.cores_per_host;
  p["horizon_hours"] = m.horizon_hours;
  p["hosts_scanned"] = m.hosts_scanned;
  p["scanned_fraction"] = m.scanned_fraction;
  p["defective"] = m.defective;
  p["detected"] = m.detected;
  p["median_time_to_detect_hours"] =
      m.median_time_to_detect_hours ? readable(*m.median_time_to_detect_hours)
                                    : Json(nullptr);
  p["scans_total"] = m.scans_total;
  p["quanta_total"] = m.quanta_total;
  p["production_time_lost_hours"] = m.production_time_lost_hours;
  p["workload_overhead_budget"] = config.workload_overhead_budget;
  p["overhead_fraction_max"] = m.overhead_fraction_max;
  p["overhead_fraction_mean"] = m.overhead_fraction_mean;
  p["collector_duplicates_dropped"] = m.collector_duplicates_dropped;
  p["files_submitted"] = m.files_submitted;
  p["files_written"] = m.files_written;
  p["silent_loss"] = m.silent_loss;
  p["error_events"] = m.error_events;
  Json detections = Json::array();
  for (const HostDetection& d : m.detections) {
    Json j = Json::object();
    j["host"] = d.host;
    j["spec_id"] = d.spec_id;
    j["core"] = d.core;
    j["onset_hours"] = readable(d.onset_hours);
    j["detected_hour"] = d.detected_hour ? Json(*d.detected_hour) : Json(nullptr);
    j["time_to_detect_hours"] = optional_number(d.time_to_detect_hours);
    j["detection_event_id"] =
        d.detection_event_id ? Json(*d.detection_event_id) : Json(nullptr);
    detections.push_back(std::move(j));
  }
  p["detections"] = std::move(detections);
  if (!m.overhead_per_host.empty()) {
    p["overhead_per_host"] = m.overhead_per_host;
  }
  return record;
}

void collector_ingest(CollectorState& state, const ReportRecord& record) {
  // Parse everything before touching the state.
  const ScanResultSummary summary = scan_summary(record);
  state.ingest(summary);
}

}  // namespace sdc
