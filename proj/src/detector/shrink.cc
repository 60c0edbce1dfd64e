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

#include "sdc/detector/shrink.h"

#include <cmath>
#include <map>
#include <tuple>

#include "sdc/detector/ddmin.h"
#include "sdc/kernels/hashing.h"
#include "sdc/kernels/kernels.h"

namespace sdc {
namespace {

std::uint64_t value_key(const KernelValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return double_bits(*d);
  return static_cast<std::uint64_t>(std::get<std::int64_t>(value));
}

// (observed, expected, observed status, expected status) within one kernel.
using MismatchIdentity =
    std::tuple<std::uint64_t, std::uint64_t, KernelStatus, KernelStatus>;

MismatchIdentity identity_of(const Verdict& v) {
  return {value_key(v.observed), value_key(v.expected), v.observed_status,
          v.expected_status};
}

}  // namespace

double shrink_step_bound(std::size_t stream_length, std::size_t minimal_size) {
  const double n = static_cast<double>(stream_length);
  const double k = static_cast<double>(minimal_size);
  const double n_log_n = stream_length > 1 ? n * std::log2(n) : 0.0;
  return kShrinkBoundConstant * n_log_n + k * k;
}

ShrinkResult shrink(const std::vector<TestVector>& failing_stream,
                    const CoreId& core, KernelKind kernel,
                    ArithmeticBackend& backend,
                    const ComparisonPolicy& policy) {
  ShrinkResult result;
  result.kernel = kernel;
  result.stream_length = failing_stream.size();

  std::vector<Verdict> failing;
  std::vector<std::size_t> identity;  // per failing vector
  std::map<MismatchIdentity, std::size_t> identities;
  for (const TestVector& vector : failing_stream) {
    const KernelOutput observed = evaluate_kernel(
        kernel, vector, backend, core, EvalOptions{.record_trace = false});
    ++result.steps;
    const KernelOutput expected =
        reference_eval(kernel, vector, EvalOptions{.record_trace = false});
    Verdict v = compare(observed, expected, policy, vector, core);
    if (!v.mismatch()) continue;
    const auto [it, inserted] =
        identities.emplace(identity_of(v), identities.size());
    identity.push_back(it->second);
    failing.push_back(std::move(v));
  }
  if (failing.empty()) {
    throw NothingToShrinkError("no vector in the stream mismatches on " +
                               to_string(core));
  }

  const std::size_t distinct = identities.size();
  std::vector<char> seen(distinct);
  const DdminResult reduced =
      ddmin(failing.size(), [&](std::span<const std::size_t> subset) {
        std::fill(seen.begin(), seen.end(), 0);
        std::size_t covered = 0;
        for (std::size_t i : subset) {
          if (!seen[identity[i]]) {
            seen[identity[i]] = 1;
            ++covered;
          }
        }
        return covered == distinct;
      });
  result.subset_tests = reduced.tests;

  for (std::size_t i : reduced.minimal) {
    const Verdict& v = failing[i];
    result.minimal_vectors.push_back(v.vector);
    result.certificates.push_back({v.vector, v.observed, v.expected});
  }
  return result;
}

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::kConsistentFail:
      return "CONSISTENT_FAIL";
    case Consistency::kFlaky:
      return "FLAKY";
    case Consistency::kConsistentPass:
      return "CONSISTENT_PASS";
  }
  return "UNKNOWN";
}

std::vector<DependencyRow> classify_data_dependency(
    const ShrinkResult& reproducer, const CoreId& core, KernelKind kernel,
    ArithmeticBackend& backend, std::uint32_t repeats, double t_hours,
    const ComparisonPolicy& policy) {
  if (repeats < 2) {
    throw std::invalid_argument("classification needs at least 2 repeats");
  }
  std::vector<DependencyRow> rows;
  for (const TestVector& vector : reproducer.minimal_vectors) {
    const KernelOutput expected =
        reference_eval(kernel, vector, EvalOptions{.record_trace = false});
    DependencyRow row;
    row.vector = vector;
    for (std::uint32_t r = 0; r < repeats; ++r) {
      backend.begin_scan(t_hours);
      const KernelOutput observed = evaluate_kernel(
          kernel, vector, backend, core, EvalOptions{.record_trace = false});
      if (compare(observed, expected, policy).mismatch()) {
        ++row.failures;
      } else {
        ++row.passes;
      }
    }
    if (row.failures > 0 && row.passes > 0) {
      row.consistency = Consistency::kFlaky;
    } else if (row.failures > 0) {
      row.consistency = Consistency::kConsistentFail;
    } else {
      row.consistency = Consistency::kConsistentPass;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sdc
