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

#include "sdc/detector/scan.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>
#include <sstream>

#include "sdc/kernels/hashing.h"

namespace sdc {

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t secs = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

void require_core_in_plan(const CoreId& core, const ScanPlan& plan) {
  if (std::find(plan.cores.begin(), plan.cores.end(), core.core) ==
      plan.cores.end()) {
    throw ScanPlanError("core " + std::to_string(core.core) +
                        " is not part of the scan plan");
  }
}

}  // namespace

std::uint64_t ScanPlan::hash() const {
  std::uint64_t h = kFnvOffsetBasis;
  h = fnv1a64_word(h, kernels.size());
  for (KernelKind k : kernels) {
    h = fnv1a64_word(h, static_cast<std::uint64_t>(k));
    h = fnv1a64_word(h, static_cast<std::uint64_t>(policy.mode_for(k)));
  }
  h = fnv1a64_word(h, stream.seed);
  h = fnv1a64_word(h, stream.count);
  h = fnv1a64_word(h, double_bits(stream.domain.base_min));
  h = fnv1a64_word(h, double_bits(stream.domain.base_max));
  h = fnv1a64_word(h, double_bits(stream.domain.exponent_min));
  h = fnv1a64_word(h, double_bits(stream.domain.exponent_max));
  h = fnv1a64_word(h, stream.domain.integer_exponent ? 1 : 0);
  h = fnv1a64_word(h, stream.domain.payload_bytes);
  h = fnv1a64_word(h, targeted.size());
  for (const TestVector& v : targeted) h = fnv1a64_word(h, v.id());
  h = fnv1a64_word(h, cores.size());
  for (std::uint32_t c : cores) h = fnv1a64_word(h, c);
  h = fnv1a64_word(h, budget_ops.value_or(~std::uint64_t{0}));
  return mix64(h);
}

std::vector<TestVector> builtin_targeted_vectors() {
  return {
      TestVector(1.1, 53.0),  TestVector(1.1, 68.0),  TestVector(1.1, 78.0),
      TestVector(1.1, 52.0),  TestVector(1.1, 3.0),   TestVector(1.1, 107.0),
      TestVector(1.1, -3.0),
  };
}

std::uint64_t PreparedPlan::ops_per_vector() const {
  std::uint64_t ops = 0;
  for (KernelKind k : plan.kernels) ops += kernel_op_count(k);
  return ops;
}

PreparedPlan prepare_plan(const ScanPlan& plan) {
  if (plan.kernels.empty()) throw ScanPlanError("scan plan has no kernels");
  if (plan.stream.count == 0) {
    throw ScanPlanError("scan plan stream count must be >= 1");
  }
  try {
    plan.policy.validate();
  } catch (const OracleError& e) {
    throw ScanPlanError(e.what());
  }

  PreparedPlan prepared;
  prepared.plan = plan;
  prepared.plan_hash = plan.hash();
  prepared.vectors = plan.targeted;
  prepared.targeted_count = plan.targeted.size();

  const std::uint64_t per_vector = prepared.ops_per_vector();
  if (plan.budget_ops &&
      *plan.budget_ops < per_vector * prepared.targeted_count) {
    throw ScanPlanError("op budget " + std::to_string(*plan.budget_ops) +
                        " is below the " +
                        std::to_string(per_vector * prepared.targeted_count) +
                        " ops the targeted vectors need");
  }

  std::vector<TestVector> stream;
  try {
    stream = gen_operand_stream(plan.stream.seed, plan.stream.count,
                                plan.stream.domain);
  } catch (const KernelInputError& e) {
    throw ScanPlanError(e.what());
  }
  prepared.vectors.insert(prepared.vectors.end(),
                          std::make_move_iterator(stream.begin()),
                          std::make_move_iterator(stream.end()));

  prepared.expected.reserve(prepared.vectors.size() * plan.kernels.size());
  for (const TestVector& v : prepared.vectors) {
    for (KernelKind k : plan.kernels) {
      prepared.expected.push_back(
          reference_eval(k, v, EvalOptions{.record_trace = false}));
    }
  }
  return prepared;
}

CoreScan scan_core_slice(const CoreId& core, const PreparedPlan& prepared,
                         ArithmeticBackend& backend, std::size_t begin,
                         std::size_t end) {
  CoreScan result;
  result.core = core;
  const auto& kernels = prepared.plan.kernels;
  const std::uint64_t per_vector = prepared.ops_per_vector();
  const auto budget = prepared.plan.budget_ops;
  end = std::min(end, prepared.vectors.size());

  for (std::size_t v = begin; v < end; ++v) {
    if (budget && result.ops_used + per_vector > *budget) break;
    const TestVector& vector = prepared.vectors[v];
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      const KernelOutput observed =
          evaluate_kernel(kernels[k], vector, backend, core,
                          EvalOptions{.record_trace = false});
      Verdict verdict = compare(observed, prepared.expected_for(v, k),
                                prepared.plan.policy, vector, core);
      if (verdict.mismatch()) result.mismatches.push_back(std::move(verdict));
    }
    result.ops_used += per_vector;
    ++result.vectors_evaluated;
  }
  return result;
}

CoreScan scan_core(const CoreId& core, const PreparedPlan& prepared,
                   ArithmeticBackend& backend) {
  require_core_in_plan(core, prepared.plan);
  return scan_core_slice(core, prepared, backend, 0, prepared.vectors.size());
}

CoreScan scan_core(const CoreId& core, const ScanPlan& plan,
                   ArithmeticBackend& backend) {
  require_core_in_plan(core, plan);
  return scan_core(core, prepare_plan(plan), backend);
}

std::size_t FaultReport::mismatch_count() const {
  std::size_t n = 0;
  for (const CoreFindings& f : failing_cores) n += f.mismatches.size();
  return n;
}

std::vector<std::uint32_t> FaultReport::flagged_cores() const {
  std::vector<std::uint32_t> cores;
  for (const CoreFindings& f : failing_cores) cores.push_back(f.core);
  return cores;
}

FaultReport scan_host(const std::string& host, const PreparedPlan& prepared,
                      const ArithmeticBackend& prototype,
                      const ScanHostOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  FaultReport report;
  report.host = host;
  report.seed = prepared.plan.stream.seed;
  report.plan_hash = prepared.plan_hash;
  report.sim_time_hours = options.t_hours;
  report.timestamp =
      options.canonical ? kCanonicalTimestamp : utc_timestamp_now();

  std::vector<std::uint32_t> cores = prepared.plan.cores;
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());

  for (std::uint32_t index : cores) {
    const CoreId core{host, index};
    auto session = prototype.fresh_session();
    session->begin_scan(options.t_hours);
    CoreScan scan = scan_core(core, prepared, *session);
    ++report.cores_scanned;
    report.vectors_per_core =
        std::max(report.vectors_per_core, scan.vectors_evaluated);
    if (scan.mismatches.empty()) continue;

    CoreFindings findings;
    findings.core = index;
    if (options.shrink) {
      std::set<KernelKind> failing_kernels;
      for (const Verdict& v : scan.mismatches) failing_kernels.insert(v.kernel);
      const std::vector<TestVector> stream(
          prepared.vectors.begin(),
          prepared.vectors.begin() +
              static_cast<std::ptrdiff_t>(scan.vectors_evaluated));
      for (KernelKind kernel : failing_kernels) {
        auto shrink_session = prototype.fresh_session();
        shrink_session->begin_scan(options.t_hours);
        try {
          findings.reproducers.emplace(
              kernel, shrink(stream, core, kernel, *shrink_session,
                             prepared.plan.policy));
        } catch (const NothingToShrinkError&) {
          // A sampled (degradation) fault did not fire again in the shrink
          // session; the raw mismatches are still reported.
        }
      }
    }
    findings.mismatches = std::move(scan.mismatches);
    report.failing_cores.push_back(std::move(findings));
  }

  report.status =
      report.failing_cores.empty() ? ScanStatus::kPass : ScanStatus::kFail;
  report.duration_ms =
      options.canonical
          ? 0.0
          : std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
  return report;
}

FaultReport scan_host(const std::string& host, const ScanPlan& plan,
                      const ArithmeticBackend& prototype,
                      const ScanHostOptions& options) {
  return scan_host(host, prepare_plan(plan), prototype, options);
}

std::vector<std::uint32_t> parse_core_list(const std::string& text) {
  std::vector<std::uint32_t> cores;
  std::stringstream in(text);
  std::string item;
  auto parse_uint = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos ||
        s.size() > 9) {
      throw ScanPlanError("bad core index '" + s + "' in '" + text + "'");
    }
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      cores.push_back(parse_uint(item));
      continue;
    }
    const std::uint32_t lo = parse_uint(item.substr(0, dash));
    const std::uint32_t hi = parse_uint(item.substr(dash + 1));
    if (lo > hi) throw ScanPlanError("descending core range '" + item + "'");
    for (std::uint32_t c = lo; c <= hi; ++c) cores.push_back(c);
  }
  if (cores.empty()) throw ScanPlanError("empty core list");
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());
  return cores;
}

}  // namespace sdc
