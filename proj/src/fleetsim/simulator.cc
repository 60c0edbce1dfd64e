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

#include "sdc/fleetsim/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

#include "sdc/faultsim/faulty_backend.h"
#include "sdc/fleetsim/app_workload.h"
#include "sdc/report/collector.h"

namespace sdc {
namespace {

constexpr SimEventKind kAllKinds[] = {
    SimEventKind::kProvisioningStart, SimEventKind::kProvisioningEnd,
    SimEventKind::kMaintenanceStart,  SimEventKind::kMaintenanceEnd,
    SimEventKind::kTestStart,         SimEventKind::kTestEnd,
    SimEventKind::kScanComplete,      SimEventKind::kQuantumComplete,
    SimEventKind::kDetected,
};

enum class Action : std::uint8_t { kVisitStart, kScanDone, kVisitEnd, kDayTick };

struct Pending {
  std::uint64_t hour = 0;
  std::uint64_t seq = 0;
  Action action = Action::kDayTick;
  std::uint32_t host = 0;
  HostMode visit = HostMode::kProduction;
  std::uint64_t visit_start = 0;
  std::uint64_t mismatches = 0;
};

struct Later {
  bool operator()(const Pending& a, const Pending& b) const {
    return a.hour != b.hour ? a.hour > b.hour : a.seq > b.seq;
  }
};

SimEventKind start_kind(HostMode visit) {
  switch (visit) {
    case HostMode::kProvisioning:
      return SimEventKind::kProvisioningStart;
    case HostMode::kMaintenance:
      return SimEventKind::kMaintenanceStart;
    default:
      return SimEventKind::kTestStart;
  }
}

SimEventKind end_kind(HostMode visit) {
  switch (visit) {
    case HostMode::kProvisioning:
      return SimEventKind::kProvisioningEnd;
    case HostMode::kMaintenance:
      return SimEventKind::kMaintenanceEnd;
    default:
      return SimEventKind::kTestEnd;
  }
}

std::uint64_t period_hours(const FleetConfig& config) {
  return static_cast<std::uint64_t>(config.period_days) * 24;
}

// Offsets are spread over P - D + 1 hours so every test ends inside its
// period.
std::uint64_t stagger_offset(const FleetConfig& config, std::uint32_t host) {
  const std::uint64_t window =
      period_hours(config) - config.scan_duration_hours + 1;
  return periodic_offset_hours(host, config.hosts, window);
}

class Simulation {
 public:
  Simulation(Fleet& fleet, const FleetConfig& config)
      : fleet_(fleet),
        config_(config),
        horizon_(static_cast<std::uint64_t>(config.horizon_days) * 24),
        duration_(config.scan_duration_hours) {
    ScanPlan plan = config.scan_plan;
    plan.cores.clear();
    for (std::uint32_t c = 0; c < config.cores_per_host; ++c) {
      plan.cores.push_back(c);
    }
    try {
      prepared_ = prepare_plan(plan);
    } catch (const ScanPlanError& e) {
      throw FleetConfigError(e.what());
    }
    const std::size_t n = fleet.hosts.size();
    backends_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (fleet.hosts[i].defective()) {
        backends_[i] = inject(reference_, fleet.hosts[i].specs);
      }
    }
    scanned_.assign(n, false);
    detected_hour_.assign(n, std::nullopt);
    detection_event_.assign(n, std::nullopt);
    progress_.assign(n, 0);
    quanta_.assign(n, 0);
    test_micro_.assign(n, 0);
    production_days_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      maintenance_rng_.emplace_back(mix64(config.seed ^ mix64(i + 1)));
    }
    plan_cost_ = to_micro_hours(config.plan_cost_hours);
  }

  SimulationResult run() {
    seed_queue();
    while (!queue_.empty() && queue_.top().hour <= horizon_) {
      const Pending next = queue_.top();
      queue_.pop();
      now_ = next.hour;
      switch (next.action) {
        case Action::kVisitStart:
          visit_start(next);
          break;
        case Action::kScanDone:
          scan_done(next);
          break;
        case Action::kVisitEnd:
          visit_end(next);
          break;
        case Action::kDayTick:
          day_tick();
          break;
      }
    }
    for (HostState& host : fleet_.hosts) host.age_hours = horizon_;
    return {metrics(), std::move(events_)};
  }

 private:
  const ArithmeticBackend& backend_for(std::uint32_t host) const {
    if (backends_[host]) return *backends_[host];
    return reference_;
  }

  void push(Pending p) {
    p.seq = seq_++;
    queue_.push(p);
  }

  std::uint64_t log(std::uint32_t host, SimEventKind kind,
                    std::uint64_t mismatches = 0, std::uint64_t quantum = 0,
                    std::optional<std::uint64_t> cause = std::nullopt) {
    SimEvent event;
    event.id = events_.size();
    event.hour = now_;
    event.host = host;
    event.kind = kind;
    event.mismatches = mismatches;
    event.quantum_id = quantum;
    event.cause = cause;
    events_.push_back(event);
    fleet_.hosts[host].age_hours = static_cast<double>(now_);
    return event.id;
  }

  bool fits(std::uint64_t start) const { return start + duration_ <= horizon_; }

  void schedule_visit(std::uint32_t host, HostMode visit, std::uint64_t hour) {
    if (!fits(hour)) return;
    push({.hour = hour, .action = Action::kVisitStart, .host = host,
          .visit = visit});
  }

  void schedule_next_maintenance(std::uint32_t host, std::uint64_t from) {
    const auto arrival = next_maintenance_hour(
        maintenance_rng_[host], config_.maintenance_rate, from);
    if (arrival) schedule_visit(host, HostMode::kMaintenance, *arrival);
  }

  void seed_queue() {
    if (horizon_ == 0) return;
    const auto hosts = static_cast<std::uint32_t>(fleet_.hosts.size());
    switch (config_.mode) {
      case SchedulerMode::kOpportunistic:
        for (std::uint32_t h = 0; h < hosts; ++h) {
          if (config_.provision_at_start) {
            schedule_visit(h, HostMode::kProvisioning, 0);
          } else {
            schedule_next_maintenance(h, 0);
          }
        }
        break;
      case SchedulerMode::kPeriodic:
        for (std::uint32_t h = 0; h < hosts; ++h) {
          schedule_visit(h, HostMode::kOutForTest, stagger_offset(config_, h));
        }
        break;
      case SchedulerMode::kProductionFriendly:
        break;
    }
    if (config_.mode == SchedulerMode::kProductionFriendly ||
        config_.app_files_per_host_day > 0) {
      for (std::uint64_t d = 1; d <= config_.horizon_days; ++d) {
        push({.hour = d * 24, .action = Action::kDayTick});
      }
    }
  }

  std::uint64_t full_scan(std::uint32_t host) {
    ScanHostOptions options;
    options.shrink = false;
    options.canonical = true;
    options.t_hours = static_cast<double>(now_);
    const FaultReport report = scan_host(fleet_.hosts[host].name, prepared_,
                                         backend_for(host), options);
    return report.mismatch_count();
  }

  void visit_start(const Pending& p) {
    HostState& host = fleet_.hosts[p.host];
    if (host.detected) return;
    host.state = p.visit;
    log(p.host, start_kind(p.visit));
    scanned_[p.host] = true;
    const std::uint64_t mismatches = full_scan(p.host);
    push({.hour = now_ + duration_, .action = Action::kScanDone,
          .host = p.host, .visit = p.visit, .visit_start = now_,
          .mismatches = mismatches});
  }

  void detect(std::uint32_t host, std::uint64_t cause) {
    HostState& state = fleet_.hosts[host];
    state.detected = true;
    state.state = HostMode::kMaintenance;  // pulled for repair
    detected_hour_[host] = now_;
    detection_event_[host] = log(host, SimEventKind::kDetected, 0, 0, cause);
  }

  void scan_done(const Pending& p) {
    HostState& host = fleet_.hosts[p.host];
    ++scans_total_;
    const std::uint64_t id =
        log(p.host, SimEventKind::kScanComplete, p.mismatches);
    host.scan_history.push_back(id);
    if (p.visit == HostMode::kOutForTest) {
      production_time_lost_ += static_cast<double>(duration_);
    }
    if (p.mismatches > 0) {
      detect(p.host, id);
      return;
    }
    std::uint64_t end = now_;
    if (p.visit != HostMode::kOutForTest) {
      end = std::max<std::uint64_t>(
          now_, p.visit_start + config_.maintenance_duration_hours);
    }
    push({.hour = end, .action = Action::kVisitEnd, .host = p.host,
          .visit = p.visit, .visit_start = p.visit_start});
  }

  void visit_end(const Pending& p) {
    HostState& host = fleet_.hosts[p.host];
    host.state = HostMode::kProduction;
    log(p.host, end_kind(p.visit));
    if (p.visit == HostMode::kOutForTest) {
      schedule_visit(p.host, HostMode::kOutForTest,
                     p.visit_start + period_hours(config_));
    } else {
      schedule_next_maintenance(p.host, now_);
    }
  }

  void day_tick() {
    const std::uint64_t day = now_ / 24 - 1;
    const double day_start = static_cast<double>(now_ - 24);
    for (std::uint32_t h = 0; h < fleet_.hosts.size(); ++h) {
      const HostState& host = fleet_.hosts[h];
      if (host.detected || host.state != HostMode::kProduction) continue;
      if (config_.app_files_per_host_day > 0) run_app(h, day, day_start);
      if (config_.mode == SchedulerMode::kProductionFriendly) {
        run_quantum(h, day_start);
      }
    }
  }

  void run_app(std::uint32_t h, std::uint64_t day, double day_start) {
    const std::uint64_t seed = mix64(config_.seed ^ mix64(h + 1) ^ (day << 32));
    const auto headers = app_file_headers(seed, config_.app_files_per_host_day);
    auto session = backend_for(h).fresh_session();
    session->begin_scan(day_start);
    const AppWorkloadResult r = app_workload_decompression(
        fleet_.hosts[h].name, config_.cores_per_host, headers, *session,
        mix64(seed));
    files_submitted_ += r.files_submitted;
    files_written_ += r.files_written;
    silent_loss_ += r.files_silently_dropped;
    error_events_ += r.error_events_emitted;
  }

  void run_quantum(std::uint32_t h, double day_start) {
    HostState& host = fleet_.hosts[h];
    const std::size_t per_core = prepared_.vectors.size();
    const std::size_t units = per_core * prepared_.plan.cores.size();
    ++production_days_[h];
    scanned_[h] = true;
    const QuantumSlice slice =
        schedule_production_friendly(config_, progress_[h], units);
    std::uint64_t mismatches = 0;
    for (std::size_t u = slice.begin; u < slice.end;) {
      const std::size_t c = u / per_core;
      const std::size_t vb = u - c * per_core;
      const std::size_t ve = std::min(slice.end - c * per_core, per_core);
      auto session = backend_for(h).fresh_session();
      session->begin_scan(day_start);
      const CoreScan scan =
          scan_core_slice(CoreId{host.name, prepared_.plan.cores[c]},
                          prepared_, *session, vb, ve);
      mismatches += scan.mismatches.size();
      u = c * per_core + ve;
    }
    test_micro_[h] += slice.compute_micro_hours;
    progress_[h] += slice.compute_micro_hours;
    if (progress_[h] >= plan_cost_) progress_[h] = 0;
    const std::uint64_t quantum = quanta_[h]++;
    ++quanta_total_;
    const std::uint64_t id =
        log(h, SimEventKind::kQuantumComplete, mismatches, quantum);
    host.scan_history.push_back(id);

    // At-least-once delivery; the collector deduplicates.
    const ScanResultSummary summary{host.name, prepared_.plan_hash, quantum,
                                    mismatches};
    collector_.ingest(summary);
    if (config_.collector_duplicate_rate > 0.0 &&
        delivery_rng_.next_unit() < config_.collector_duplicate_rate) {
      collector_.ingest(summary);
    }
    if (collector_.status(host.name) == HostHealth::kFail) detect(h, id);
  }

  CoverageMetrics metrics() const {
    CoverageMetrics m;
    m.mode = config_.mode;
    m.hosts = static_cast<std::uint32_t>(fleet_.hosts.size());
    m.horizon_hours = horizon_;
    m.hosts_scanned = static_cast<std::uint32_t>(
        std::count(scanned_.begin(), scanned_.end(), true));
    m.scanned_fraction =
        m.hosts == 0 ? 0.0 : static_cast<double>(m.hosts_scanned) / m.hosts;
    std::vector<double> ttd;
    for (std::uint32_t id : fleet_.defective) {
      const HostState& host = fleet_.hosts[id];
      const FaultSpec& spec = host.specs.front();
      HostDetection d;
      d.host = id;
      d.spec_id = spec.id;
      d.core = spec.scope.core.value_or(0);
      d.onset_hours = onset_start_hours(spec);
      d.detected_hour = detected_hour_[id];
      d.detection_event_id = detection_event_[id];
      if (d.detected_hour) {
        d.time_to_detect_hours = std::max(
            0.0, static_cast<double>(*d.detected_hour) - d.onset_hours);
        ++m.detected;
        ttd.push_back(*d.time_to_detect_hours);
      } else {
        ttd.push_back(std::numeric_limits<double>::infinity());
      }
      m.detections.push_back(std::move(d));
    }
    m.defective = static_cast<std::uint32_t>(fleet_.defective.size());
    if (!ttd.empty()) {
      std::sort(ttd.begin(), ttd.end());
      const std::size_t mid = ttd.size() / 2;
      m.median_time_to_detect_hours =
          ttd.size() % 2 ? ttd[mid] : (ttd[mid - 1] + ttd[mid]) / 2.0;
    }
    m.scans_total = scans_total_;
    m.quanta_total = quanta_total_;
    m.production_time_lost_hours = production_time_lost_;
    if (config_.mode == SchedulerMode::kProductionFriendly) {
      const double day = kHoursPerDay * kMicroHoursPerHour;
      double sum = 0.0;
      for (std::size_t i = 0; i < fleet_.hosts.size(); ++i) {
        const double overhead =
            production_days_[i] == 0
                ? 0.0
                : static_cast<double>(test_micro_[i]) /
                      (day * static_cast<double>(production_days_[i]));
        m.overhead_per_host.push_back(overhead);
        m.overhead_fraction_max = std::max(m.overhead_fraction_max, overhead);
        sum += overhead;
      }
      if (!fleet_.hosts.empty()) {
        m.overhead_fraction_mean = sum / static_cast<double>(fleet_.hosts.size());
      }
    }
    m.collector_duplicates_dropped = collector_.duplicates_dropped();
    m.files_submitted = files_submitted_;
    m.files_written = files_written_;
    m.silent_loss = silent_loss_;
    m.error_events = error_events_;
    return m;
  }

  Fleet& fleet_;
  const FleetConfig& config_;
  const std::uint64_t horizon_;
  const std::uint64_t duration_;
  ReferenceBackend reference_;
  PreparedPlan prepared_;
  std::vector<std::unique_ptr<ArithmeticBackend>> backends_;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  std::uint64_t seq_ = 0;
  std::uint64_t now_ = 0;
  std::vector<SimEvent> events_;
  std::vector<SplitMix64> maintenance_rng_;
  SplitMix64 delivery_rng_{mix64(config_.seed ^ 0xC011EC7ULL)};
  CollectorState collector_;
  std::uint64_t plan_cost_ = 0;

  std::vector<bool> scanned_;
  std::vector<std::optional<std::uint64_t>> detected_hour_;
  std::vector<std::optional<std::uint64_t>> detection_event_;
  std::vector<std::uint64_t> progress_;
  std::vector<std::uint64_t> quanta_;
  std::vector<std::uint64_t> test_micro_;
  std::vector<std::uint64_t> production_days_;
  std::uint64_t scans_total_ = 0;
  std::uint64_t quanta_total_ = 0;
  double production_time_lost_ = 0.0;
  std::uint64_t files_submitted_ = 0;
  std::uint64_t files_written_ = 0;
  std::uint64_t silent_loss_ = 0;
  std::uint64_t error_events_ = 0;
};

}  // namespace

std::string_view to_string(SimEventKind kind) {
  switch (kind) {
    case SimEventKind::kProvisioningStart:
      return "PROVISIONING_START";
    case SimEventKind::kProvisioningEnd:
      return "PROVISIONING_END";
    case SimEventKind::kMaintenanceStart:
      return "MAINTENANCE_START";
    case SimEventKind::kMaintenanceEnd:
      return "MAINTENANCE_END";
    case SimEventKind::kTestStart:
      return "TEST_START";
    case SimEventKind::kTestEnd:
      return "TEST_END";
    case SimEventKind::kScanComplete:
      return "SCAN_COMPLETE";
    case SimEventKind::kQuantumComplete:
      return "QUANTUM_COMPLETE";
    case SimEventKind::kDetected:
      return "DETECTED";
  }
  return "UNKNOWN";
}

std::optional<SimEventKind> sim_event_kind_from_string(std::string_view name) {
  for (SimEventKind kind : kAllKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<std::uint32_t> schedule_periodic(const Fleet& fleet,
                                             const FleetConfig& config,
                                             std::uint64_t hour) {
  std::vector<std::uint32_t> due;
  const std::uint64_t period = period_hours(config);
  for (const HostState& host : fleet.hosts) {
    if (host.detected) continue;
    const std::uint64_t offset = stagger_offset(config, host.id);
    if (hour >= offset && (hour - offset) % period == 0) due.push_back(host.id);
  }
  return due;
}

std::vector<std::uint32_t> schedule_opportunistic(const Fleet& fleet) {
  std::vector<std::uint32_t> hosts;
  for (const HostState& host : fleet.hosts) {
    if (host.detected) continue;
    if (host.state == HostMode::kMaintenance ||
        host.state == HostMode::kProvisioning) {
      hosts.push_back(host.id);
    }
  }
  return hosts;
}

QuantumSlice schedule_production_friendly(const FleetConfig& config,
                                          std::uint64_t progress_micro_hours,
                                          std::size_t plan_units) {
  return production_quantum(progress_micro_hours,
                            to_micro_hours(config.plan_cost_hours),
                            daily_test_allowance(config.workload_overhead_budget),
                            plan_units);
}

SimulationResult run_simulation(Fleet& fleet, const FleetConfig& config) {
  config.validate();
  if (fleet.hosts.size() != config.hosts) {
    throw FleetConfigError("fleet size does not match config.hosts");
  }
  return Simulation(fleet, config).run();
}

}  // namespace sdc
