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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdc/detector/scan.h"
#include "sdc/detector/shrink.h"
#include "sdc/fleetsim/fleet.h"
#include "sdc/fleetsim/simulator.h"
#include "sdc/report/collector.h"
#include "sdc/report/record.h"

namespace sdc {

// A payload is missing a field or holds a value of the wrong type.
class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "0x" + 16 lowercase hex digits.
std::string hex64(std::uint64_t value);
std::uint64_t parse_hex64(const std::string& text);

// Doubles are written as a readable number (or string for NaN and infinity)
// next to their exact bit pattern; readers use the bits.
Json vector_to_json(const TestVector& vector);
TestVector vector_from_json(const Json& json);
Json value_to_json(const KernelValue& value);
KernelValue value_from_json(const Json& json);
Json verdict_to_json(const Verdict& verdict);
Verdict verdict_from_json(const Json& json);
Json shrink_to_json(const ShrinkResult& result);
ShrinkResult shrink_from_json(const Json& json);

ReportRecord scan_record(const FaultReport& report,
                         std::uint64_t quantum_id = 0);
FaultReport fault_report_from_record(const ReportRecord& record);
ScanResultSummary scan_summary(const ReportRecord& record);

// One REPRODUCER record per (core, kernel) reproducer in the report.
std::vector<ReportRecord> reproducer_records(const FaultReport& report);
// Minimal vectors of every REPRODUCER record, in order, without repeats.
std::vector<TestVector> reproducer_vectors(
    const std::vector<ReportRecord>& records);

ReportRecord event_record(const SimEvent& event, const Fleet& fleet,
                          const std::string& timestamp);
SimEvent event_from_record(const ReportRecord& record);
ReportRecord metrics_record(const CoverageMetrics& metrics,
                            const FleetConfig& config,
                            const std::string& timestamp);

// Folds one SCAN_RESULT into the collector. Anything else, or a payload
// missing the collector fields, throws ReportFormatError and leaves
// `state` unchanged.
void collector_ingest(CollectorState& state, const ReportRecord& record);

}  // namespace sdc
