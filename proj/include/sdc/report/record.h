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

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sdc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class RecordKind : std::uint8_t {
  kScanResult,
  kSimEvent,
  kMetrics,
  kReproducer,
};

std::string_view to_string(RecordKind kind);
std::optional<RecordKind> record_kind_from_string(std::string_view name);

// One JSONL line. Top-level fields other than the four below are kept in
// `extra`, in their original order, and written back after them.
struct ReportRecord {
  int schema_version = kSchemaVersion;
  RecordKind kind = RecordKind::kScanResult;
  std::string timestamp;
  Json payload = Json::object();
  Json extra = Json::object();

  friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

class ReportParseError : public std::runtime_error {
 public:
  ReportParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Blank lines are skipped. Throws ReportParseError naming the 1-based line
// of the first malformed record.
std::vector<ReportRecord> parse_report(std::string_view bytes);

// Parses a single line; `line` is only used in error messages.
ReportRecord parse_record(std::string_view text, std::size_t line = 1);

std::string emit_record(const ReportRecord& record);
// One record per line, each terminated by '\n'.
std::string emit_report(const std::vector<ReportRecord>& records);

std::vector<ReportRecord> read_report_file(const std::string& path);
void write_report_file(const std::string& path,
                       const std::vector<ReportRecord>& records);

}  // namespace sdc
