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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdc/detector/shrink.h"
#include "sdc/kernels/backend.h"
#include "sdc/kernels/kernels.h"
#include "sdc/oracle/oracle.h"

namespace sdc {

class ScanPlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OperandStreamSpec {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  OperandDomain domain;
};

struct ScanPlan {
  std::vector<KernelKind> kernels = {KernelKind::kIntPow};
  OperandStreamSpec stream;
  std::vector<TestVector> targeted;
  ComparisonPolicy policy = ComparisonPolicy::standard();
  std::vector<std::uint32_t> cores;
  // Max primitive ops per core; nullopt is unlimited.
  std::optional<std::uint64_t> budget_ops;

  // Stable 64-bit digest of every field that influences scan results.
  std::uint64_t hash() const;
};

// Vectors known to reproduce past corruptions: the core-pinned iteration
// inputs and the catalogued error values.
std::vector<TestVector> builtin_targeted_vectors();

// A plan with its vectors generated and the reference output of every
// (vector, kernel) pair computed once.
struct PreparedPlan {
  ScanPlan plan;
  std::uint64_t plan_hash = 0;
  std::vector<TestVector> vectors;  // targeted first, then the stream
  std::size_t targeted_count = 0;
  // expected[v * kernels.size() + k]
  std::vector<KernelOutput> expected;

  const KernelOutput& expected_for(std::size_t vector_index,
                                   std::size_t kernel_index) const {
    return expected[vector_index * plan.kernels.size() + kernel_index];
  }
  std::uint64_t ops_per_vector() const;
};

// Throws ScanPlanError on an empty kernel list, count == 0, an invalid
// policy, or a budget smaller than the targeted vectors need.
PreparedPlan prepare_plan(const ScanPlan& plan);

struct CoreScan {
  CoreId core;
  std::vector<Verdict> mismatches;
  std::size_t vectors_evaluated = 0;
  std::uint64_t ops_used = 0;
};

// Runs the plan on one core: targeted vectors first, then the stream, until
// the op budget is exhausted. Every primitive carries `core`.
CoreScan scan_core(const CoreId& core, const PreparedPlan& prepared,
                   ArithmeticBackend& backend);

// Throws ScanPlanError when core.core is not in plan.cores.
CoreScan scan_core(const CoreId& core, const ScanPlan& plan,
                   ArithmeticBackend& backend);

// Scans vectors [begin, end) of the prepared plan only. Used for
// production-friendly quanta.
CoreScan scan_core_slice(const CoreId& core, const PreparedPlan& prepared,
                         ArithmeticBackend& backend, std::size_t begin,
                         std::size_t end);

enum class ScanStatus : std::uint8_t { kPass, kFail };

struct CoreFindings {
  std::uint32_t core = 0;
  std::vector<Verdict> mismatches;
  // One shrink per kernel kind with mismatches on this core.
  std::map<KernelKind, ShrinkResult> reproducers;
};

struct FaultReport {
  std::string host;
  ScanStatus status = ScanStatus::kPass;
  std::vector<CoreFindings> failing_cores;  // ascending core index
  std::uint64_t seed = 0;
  std::uint64_t plan_hash = 0;
  std::size_t cores_scanned = 0;
  std::size_t vectors_per_core = 0;
  double sim_time_hours = 0.0;
  std::string timestamp;  // ISO-8601 UTC
  double duration_ms = 0.0;

  std::size_t mismatch_count() const;
  std::vector<std::uint32_t> flagged_cores() const;
};

inline constexpr const char* kCanonicalTimestamp = "1970-01-01T00:00:00Z";

// ISO-8601 UTC, second resolution.
std::string utc_timestamp_now();

struct ScanHostOptions {
  bool shrink = true;
  double t_hours = 0.0;
  // Fixed timestamp and zero duration, for byte-stable output.
  bool canonical = false;
};

// Scans every plan core with its own fresh session of `prototype` and
// shrinks each failing core's stream.
FaultReport scan_host(const std::string& host, const PreparedPlan& prepared,
                      const ArithmeticBackend& prototype,
                      const ScanHostOptions& options = {});

FaultReport scan_host(const std::string& host, const ScanPlan& plan,
                      const ArithmeticBackend& prototype,
                      const ScanHostOptions& options = {});

// "0-3,7,9-10" style list; throws ScanPlanError on malformed input.
std::vector<std::uint32_t> parse_core_list(const std::string& text);

}  // namespace sdc
