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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/detector/scan.h"
#include "sdc/faultsim/fault_spec.h"
#include "sdc/kernels/hashing.h"

namespace sdc {

class FleetConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SchedulerMode : std::uint8_t {
  kOpportunistic,
  kPeriodic,
  kProductionFriendly,
};

std::string_view to_string(SchedulerMode mode);
// Accepts "opportunistic", "periodic", "production" and
// "production_friendly".
std::optional<SchedulerMode> scheduler_mode_from_string(std::string_view name);

inline constexpr double kHoursPerDay = 24.0;

// Builtin targeted vectors plus 64 stream vectors of INT_POW per core.
ScanPlan default_fleet_scan_plan();

struct FleetConfig {
  std::uint32_t hosts = 1000;
  std::uint32_t cores_per_host = 64;
  // Fraction of hosts carrying one fault; ceil(defect_rate * hosts) hosts
  // are defective.
  double defect_rate = 1e-3;
  // Templates. Each defective host gets one, re-scoped to its own name and
  // a seeded core index. Empty means default_fault_library().
  std::vector<FaultSpec> fault_library;
  // Mean maintenance events per host per simulated day (Poisson).
  double maintenance_rate = 0.0;
  std::uint32_t maintenance_duration_hours = 4;
  bool provision_at_start = false;
  // Fraction of a host's daily compute usable by in-production test quanta.
  double workload_overhead_budget = 0.01;
  // Compute cost of one full plan, in host-hours (production-friendly mode).
  double plan_cost_hours = 1.0;
  // Wall duration of a full out-of-production scan.
  std::uint32_t scan_duration_hours = 1;
  // Plan template; cores are filled with [0, cores_per_host).
  ScanPlan scan_plan = default_fleet_scan_plan();
  SchedulerMode mode = SchedulerMode::kPeriodic;
  std::uint32_t period_days = 15;
  std::uint32_t horizon_days = 30;
  std::uint64_t seed = 1;
  // Decompression files per production host per day; 0 disables the
  // application workload.
  std::uint32_t app_files_per_host_day = 0;
  // Probability that a collector delivery is sent twice.
  double collector_duplicate_rate = 0.0;

  // Throws FleetConfigError on out-of-range fields.
  void validate() const;
};

// Core-59 style template: SET_CONSTANT 0 on the EXP2 step of the (1.1, 53)
// and (1.1, 68) chains.
std::vector<FaultSpec> default_fault_library();

enum class HostMode : std::uint8_t {
  kProduction,
  kMaintenance,
  kProvisioning,
  kOutForTest,
};

std::string_view to_string(HostMode mode);

struct HostState {
  std::uint32_t id = 0;
  std::string name;
  HostMode state = HostMode::kProduction;
  std::vector<FaultSpec> specs;
  double age_hours = 0.0;
  std::vector<std::uint64_t> scan_history;  // event ids of scan results
  bool detected = false;

  bool defective() const { return !specs.empty(); }
};

struct Fleet {
  std::vector<HostState> hosts;
  std::vector<std::uint32_t> defective;  // ascending host ids
};

std::string host_name(std::uint32_t id);

std::size_t defective_host_count(std::uint32_t hosts, double defect_rate);

// Deterministic in config.seed. Throws FleetConfigError on an invalid
// config.
Fleet build_fleet(const FleetConfig& config);

// Scheduler arithmetic shared by the simulator and its tests.

// Periodic mode: first test hour of `host`, staggered evenly over one period.
std::uint64_t periodic_offset_hours(std::uint32_t host, std::uint32_t hosts,
                                    std::uint64_t period_hours);

// Production-friendly accounting runs in integer micro-hours so that the
// per-day budget is never exceeded through rounding.
inline constexpr double kMicroHoursPerHour = 1e6;

std::uint64_t to_micro_hours(double hours);

// Daily test allowance for `budget`, rounded to micro-hours and never above
// budget * 24 hours.
std::uint64_t daily_test_allowance(double budget);

// ceil(plan_cost / (budget * 24)), in whole days.
std::uint64_t days_to_full_coverage(double plan_cost_hours, double budget);

// Work units [begin, end) of a plan with `units` units covered by one day's
// quantum that advances plan progress from `done` micro-hours.
struct QuantumSlice {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::uint64_t compute_micro_hours = 0;
};

QuantumSlice production_quantum(std::uint64_t done, std::uint64_t plan_cost,
                                std::uint64_t allowance, std::size_t units);

// Next maintenance arrival strictly after `from_hour` for a Poisson process
// of `rate_per_day`; nullopt when the rate is zero.
std::optional<std::uint64_t> next_maintenance_hour(SplitMix64& rng,
                                                   double rate_per_day,
                                                   std::uint64_t from_hour);

}  // namespace sdc
