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
#include <string>
#include <string_view>
#include <vector>

#include "sdc/fleetsim/fleet.h"

namespace sdc {

enum class SimEventKind : std::uint8_t {
  kProvisioningStart,
  kProvisioningEnd,
  kMaintenanceStart,
  kMaintenanceEnd,
  kTestStart,
  kTestEnd,
  kScanComplete,
  kQuantumComplete,
  kDetected,
};

std::string_view to_string(SimEventKind kind);
std::optional<SimEventKind> sim_event_kind_from_string(std::string_view name);

struct SimEvent {
  std::uint64_t id = 0;  // position in the log
  std::uint64_t hour = 0;
  std::uint32_t host = 0;
  SimEventKind kind = SimEventKind::kTestStart;
  // SCAN_COMPLETE / QUANTUM_COMPLETE only.
  std::uint64_t mismatches = 0;
  std::uint64_t quantum_id = 0;
  // DETECTED: id of the scan or quantum event that flagged the host.
  std::optional<std::uint64_t> cause;

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct HostDetection {
  std::uint32_t host = 0;
  std::string spec_id;
  std::uint32_t core = 0;
  double onset_hours = 0.0;
  std::optional<std::uint64_t> detected_hour;
  // detected_hour - onset; nullopt stands for infinity (not detected).
  std::optional<double> time_to_detect_hours;
  std::optional<std::uint64_t> detection_event_id;

  friend bool operator==(const HostDetection&, const HostDetection&) = default;
};

struct CoverageMetrics {
  SchedulerMode mode = SchedulerMode::kPeriodic;
  std::uint32_t hosts = 0;
  std::uint64_t horizon_hours = 0;
  std::uint32_t hosts_scanned = 0;
  double scanned_fraction = 0.0;
  std::uint32_t defective = 0;
  std::uint32_t detected = 0;
  std::vector<HostDetection> detections;  // one per defective host
  std::optional<double> median_time_to_detect_hours;
  std::uint64_t scans_total = 0;   // full out-of-production scans
  std::uint64_t quanta_total = 0;  // production-friendly quanta
  double production_time_lost_hours = 0.0;
  // Production-friendly only: test compute / production compute per host.
  std::vector<double> overhead_per_host;
  double overhead_fraction_max = 0.0;
  double overhead_fraction_mean = 0.0;
  std::uint64_t collector_duplicates_dropped = 0;
  std::uint64_t files_submitted = 0;
  std::uint64_t files_written = 0;
  std::uint64_t silent_loss = 0;
  std::uint64_t error_events = 0;

  friend bool operator==(const CoverageMetrics&,
                         const CoverageMetrics&) = default;
};

struct SimulationResult {
  CoverageMetrics metrics;
  std::vector<SimEvent> events;
};

// Hosts whose periodic test starts at `hour`: each host is taken out every
// period_days, staggered by id so that its test ends inside each period.
std::vector<std::uint32_t> schedule_periodic(const Fleet& fleet,
                                             const FleetConfig& config,
                                             std::uint64_t hour);

// Hosts currently in an opportunity state (MAINTENANCE or PROVISIONING) and
// not yet flagged. Production hosts are never returned.
std::vector<std::uint32_t> schedule_opportunistic(const Fleet& fleet);

// Test quantum for one production host and day, given the plan progress
// carried over from earlier days.
QuantumSlice schedule_production_friendly(const FleetConfig& config,
                                          std::uint64_t progress_micro_hours,
                                          std::size_t plan_units);

// Runs the event loop over [0, horizon_days * 24] hours. A scan or state
// visit is only started if it finishes within the horizon. `fleet` is
// updated in place (states, ages, scan history, detection flags).
// Throws FleetConfigError on an invalid config.
SimulationResult run_simulation(Fleet& fleet, const FleetConfig& config);

}  // namespace sdc
