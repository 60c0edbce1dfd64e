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

#include "sdc/report/record.h"

#include <fstream>
#include <sstream>

namespace sdc {
namespace {

constexpr RecordKind kAllKinds[] = {RecordKind::kScanResult,
                                    RecordKind::kSimEvent, RecordKind::kMetrics,
                                    RecordKind::kReproducer};

}  // namespace

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::kScanResult:
      return "SCAN_RESULT";
    case RecordKind::kSimEvent:
      return "SIM_EVENT";
    case RecordKind::kMetrics:
      return "METRICS";
    case RecordKind::kReproducer:
      return "REPRODUCER";
  }
  return "UNKNOWN";
}

std::optional<RecordKind> record_kind_from_string(std::string_view name) {
  for (RecordKind kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

ReportParseError::ReportParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

ReportRecord parse_record(std::string_view text, std::size_t line) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ReportParseError(line, std::string("invalid JSON: ") + e.what());
  }
  if (!json.is_object()) throw ReportParseError(line, "record is not an object");

  ReportRecord record;
  const auto version = json.find("schema_version");
  if (version == json.end() || !version->is_number_integer()) {
    throw ReportParseError(line, "missing integer schema_version");
  }
  if (version->get<long long>() != kSchemaVersion) {
    throw ReportParseError(line, "unsupported schema_version " +
                                     version->dump() + " (expected " +
                                     std::to_string(kSchemaVersion) + ")");
  }
  record.schema_version = kSchemaVersion;

  const auto kind = json.find("kind");
  if (kind == json.end() || !kind->is_string()) {
    throw ReportParseError(line, "missing string kind");
  }
  const auto parsed_kind = record_kind_from_string(kind->get<std::string>());
  if (!parsed_kind) {
    throw ReportParseError(line, "unknown kind " + kind->dump());
  }
  record.kind = *parsed_kind;

  const auto timestamp = json.find("timestamp");
  if (timestamp == json.end() || !timestamp->is_string()) {
    throw ReportParseError(line, "missing string timestamp");
  }
  record.timestamp = timestamp->get<std::string>();

  const auto payload = json.find("payload");
  if (payload == json.end() || !payload->is_object()) {
    throw ReportParseError(line, "missing object payload");
  }
  record.payload = *payload;

  for (auto it = json.begin(); it != json.end(); ++it) {
    const std::string& key = it.key();
    if (key != "schema_version" && key != "kind" && key != "timestamp" &&
        key != "payload") {
      record.extra[key] = it.value();
    }
  }
  return record;
}

std::vector<ReportRecord> parse_report(std::string_view bytes) {
  std::vector<ReportRecord> records;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    ++line;
    std::string_view text = bytes.substr(pos, end - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    pos = end + 1;
    if (text.find_first_not_of(" \t") == std::string_view::npos) continue;
    records.push_back(parse_record(text, line));
  }
  return records;
}

std::string emit_record(const ReportRecord& record) {
  Json json = Json::object();
  json["schema_version"] = record.schema_version;
  json["kind"] = to_string(record.kind);
  json["timestamp"] = record.timestamp;
  json["payload"] = record.payload;
  for (auto it = record.extra.begin(); it != record.extra.end(); ++it) {
    json[it.key()] = it.value();
  }
  return json.dump();
}

std::string emit_report(const std::vector<ReportRecord>& records) {
  std::string out;
  for (const ReportRecord& record : records) {
    out += emit_record(record);
    out += '\n';
  }
  return out;
}

std::vector<ReportRecord> read_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_report(buffer.str());
}

void write_report_file(const std::string& path,
                       const std::vector<ReportRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << emit_report(records);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sdc
