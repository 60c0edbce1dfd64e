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

#include "sdc/fleetsim/fleet.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace sdc {

std::string_view to_string(SchedulerMode mode) {
  switch (mode) {
    case SchedulerMode::kOpportunistic:
      return "opportunistic";
    case SchedulerMode::kPeriodic:
      return "periodic";
    case SchedulerMode::kProductionFriendly:
      return "production";
  }
  return "unknown";
}

std::optional<SchedulerMode> scheduler_mode_from_string(std::string_view name) {
  if (name == "opportunistic") return SchedulerMode::kOpportunistic;
  if (name == "periodic") return SchedulerMode::kPeriodic;
  if (name == "production" || name == "production_friendly") {
    return SchedulerMode::kProductionFriendly;
  }
  return std::nullopt;
}

std::string_view to_string(HostMode mode) {
  switch (mode) {
    case HostMode::kProduction:
      return "PRODUCTION";
    case HostMode::kMaintenance:
      return "MAINTENANCE";
    case HostMode::kProvisioning:
      return "PROVISIONING";
    case HostMode::kOutForTest:
      return "OUT_FOR_TEST";
  }
  return "UNKNOWN";
}

ScanPlan default_fleet_scan_plan() {
  ScanPlan plan;
  plan.targeted = builtin_targeted_vectors();
  plan.stream.count = 64;
  return plan;
}

void FleetConfig::validate() const {
  if (hosts == 0) throw FleetConfigError("hosts must be >= 1");
  if (cores_per_host == 0) throw FleetConfigError("cores_per_host must be >= 1");
  if (!(defect_rate >= 0.0 && defect_rate <= 1.0)) {
    throw FleetConfigError("defect_rate must be in [0, 1]");
  }
  if (!(maintenance_rate >= 0.0) || !std::isfinite(maintenance_rate)) {
    throw FleetConfigError("maintenance_rate must be >= 0");
  }
  if (mode == SchedulerMode::kPeriodic && period_days < 1) {
    throw FleetConfigError("period_days must be >= 1");
  }
  if (mode == SchedulerMode::kProductionFriendly) {
    if (!(workload_overhead_budget > 0.0 && workload_overhead_budget <= 1.0)) {
      throw FleetConfigError("workload_overhead_budget must be in (0, 1]");
    }
    if (daily_test_allowance(workload_overhead_budget) == 0) {
      throw FleetConfigError("workload_overhead_budget is below one "
                             "micro-hour per day");
    }
    if (!(plan_cost_hours > 0.0) || !std::isfinite(plan_cost_hours)) {
      throw FleetConfigError("plan_cost_hours must be > 0");
    }
  }
  if (scan_duration_hours < 1) {
    throw FleetConfigError("scan_duration_hours must be >= 1");
  }
  if (mode == SchedulerMode::kPeriodic &&
      scan_duration_hours > static_cast<std::uint64_t>(period_days) * 24) {
    throw FleetConfigError("scan_duration_hours exceeds the period");
  }
  if (!(collector_duplicate_rate >= 0.0 && collector_duplicate_rate <= 1.0)) {
    throw FleetConfigError("collector_duplicate_rate must be in [0, 1]");
  }
  for (const FaultSpec& spec : fault_library) {
    try {
      sdc::validate(spec);
    } catch (const FaultSpecError& e) {
      throw FleetConfigError(e.what());
    }
  }
}

std::vector<FaultSpec> default_fault_library() {
  FaultSpec spec;
  spec.id = "core59";
  spec.defect_class = DefectClass::kDeviceError;
  spec.scope.core = 59;
  spec.trigger.kind = PrimKind::kExp2;
  const double log = std::log2(1.1);
  spec.trigger.alternatives = {{OperandMatcher::exact(53.0 * log)},
                               {OperandMatcher::exact(68.0 * log)}};
  spec.transform = CorruptionTransform::set_constant(0.0);
  return {spec};
}

std::string host_name(std::uint32_t id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "host-%05u", id);
  return buf;
}

std::size_t defective_host_count(std::uint32_t hosts, double defect_rate) {
  // Tolerate products like 0.001 * 1000 landing a hair above an integer.
  const double exact = defect_rate * static_cast<double>(hosts);
  const auto count = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min<std::size_t>(count, hosts);
}

Fleet build_fleet(const FleetConfig& config) {
  config.validate();
  const std::vector<FaultSpec> library = config.fault_library.empty()
                                             ? default_fault_library()
                                             : config.fault_library;
  Fleet fleet;
  fleet.hosts.resize(config.hosts);
  for (std::uint32_t i = 0; i < config.hosts; ++i) {
    fleet.hosts[i].id = i;
    fleet.hosts[i].name = host_name(i);
  }

  // Partial Fisher-Yates picks the defective subset.
  SplitMix64 rng(mix64(config.seed ^ 0xDEFEC7ULL));
  std::vector<std::uint32_t> order(config.hosts);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t count = defective_host_count(config.hosts, config.defect_rate);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.next_below(config.hosts - i);
    std::swap(order[i], order[j]);
  }
  fleet.defective.assign(order.begin(), order.begin() + count);
  std::sort(fleet.defective.begin(), fleet.defective.end());

  for (std::uint32_t id : fleet.defective) {
    HostState& host = fleet.hosts[id];
    FaultSpec spec = library[rng.next_below(library.size())];
    spec.id += "@" + host.name;
    spec.scope.host_pattern = host.name;
    spec.scope.core =
        static_cast<std::uint32_t>(rng.next_below(config.cores_per_host));
    host.specs.push_back(std::move(spec));
  }
  return fleet;
}

std::uint64_t periodic_offset_hours(std::uint32_t host, std::uint32_t hosts,
                                    std::uint64_t period_hours) {
  return static_cast<std::uint64_t>(host) * period_hours / hosts;
}

std::uint64_t to_micro_hours(double hours) {
  return static_cast<std::uint64_t>(std::llround(hours * kMicroHoursPerHour));
}

std::uint64_t daily_test_allowance(double budget) {
  const double day = kHoursPerDay * kMicroHoursPerHour;
  auto allowance = static_cast<std::uint64_t>(std::llround(budget * day));
  while (allowance > 0 && static_cast<double>(allowance) / day > budget) {
    --allowance;
  }
  return allowance;
}

std::uint64_t days_to_full_coverage(double plan_cost_hours, double budget) {
  const std::uint64_t plan = to_micro_hours(plan_cost_hours);
  const std::uint64_t allowance = daily_test_allowance(budget);
  return (plan + allowance - 1) / allowance;
}

QuantumSlice production_quantum(std::uint64_t done, std::uint64_t plan_cost,
                                std::uint64_t allowance, std::size_t units) {
  QuantumSlice slice;
  const std::uint64_t q = std::min(allowance, plan_cost - done);
  const std::uint64_t next = done + q;
  auto unit_at = [&](std::uint64_t progress) {
    return static_cast<std::size_t>(
        static_cast<unsigned __int128>(units) * progress / plan_cost);
  };
  slice.begin = unit_at(done);
  slice.end = next >= plan_cost ? units : unit_at(next);
  slice.compute_micro_hours = q;
  return slice;
}

std::optional<std::uint64_t> next_maintenance_hour(SplitMix64& rng,
                                                   double rate_per_day,
                                                   std::uint64_t from_hour) {
  if (!(rate_per_day > 0.0)) return std::nullopt;
  const double rate_per_hour = rate_per_day / kHoursPerDay;
  const double u = rng.next_unit();
  double wait = std::ceil(-std::log1p(-u) / rate_per_hour);
  wait = std::clamp(wait, 1.0, 0x1.0p52);
  return from_hour + static_cast<std::uint64_t>(wait);
}

}  // namespace sdc
