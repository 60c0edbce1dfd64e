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

#include "sdc/oracle/oracle.h"

#include <cmath>
#include <string>

#include "sdc/kernels/hashing.h"

namespace sdc {

std::string_view to_string(ComparisonMode mode) {
  return mode == ComparisonMode::kBitExact ? "BIT_EXACT" : "INTEGER_EXACT";
}

ComparisonMode required_mode(KernelKind kind) {
  return kind == KernelKind::kPowChain ? ComparisonMode::kBitExact
                                       : ComparisonMode::kIntegerExact;
}

ComparisonPolicy ComparisonPolicy::standard() {
  ComparisonPolicy policy;
  for (KernelKind kind :
       {KernelKind::kIntPow, KernelKind::kPowChain, KernelKind::kSquareLut,
        KernelKind::kDecompressSize, KernelKind::kRoundtrip}) {
    policy.modes_[kind] = required_mode(kind);
  }
  return policy;
}

ComparisonMode ComparisonPolicy::mode_for(KernelKind kind) const {
  const auto it = modes_.find(kind);
  return it == modes_.end() ? required_mode(kind) : it->second;
}

ComparisonPolicy& ComparisonPolicy::set(KernelKind kind, ComparisonMode mode) {
  modes_[kind] = mode;
  return *this;
}

void ComparisonPolicy::validate() const {
  for (const auto& [kind, mode] : modes_) {
    if (mode != required_mode(kind)) {
      throw OracleError(std::string("policy assigns ") +
                        std::string(to_string(mode)) + " to " +
                        std::string(to_string(kind)) + ", which requires " +
                        std::string(to_string(required_mode(kind))));
    }
  }
}

KernelOutput reference_eval(KernelKind kernel, const TestVector& vector,
                            EvalOptions options) {
  ReferenceBackend backend;
  return evaluate_kernel(kernel, vector, backend, CoreId{"reference", 0},
                         options);
}

bool values_equal(const KernelValue& a, const KernelValue& b,
                  ComparisonMode mode) {
  if (a.index() != b.index()) return false;
  if (const auto* da = std::get_if<double>(&a)) {
    const double db = std::get<double>(b);
    if (mode == ComparisonMode::kBitExact) {
      return double_bits(*da) == double_bits(db);
    }
    return !std::isnan(*da) && !std::isnan(db) && *da == db;
  }
  return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
}

Verdict compare(const KernelOutput& observed, const KernelOutput& expected,
                const ComparisonPolicy& policy, const TestVector& vector,
                const CoreId& core) {
  if (observed.kind != expected.kind) {
    throw OracleError("cannot compare " + std::string(to_string(observed.kind)) +
                      " output against " +
                      std::string(to_string(expected.kind)));
  }
  const ComparisonMode mode = policy.mode_for(observed.kind);
  if (mode != required_mode(observed.kind)) {
    throw OracleError("policy mode " + std::string(to_string(mode)) +
                      " does not fit kernel " +
                      std::string(to_string(observed.kind)));
  }
  Verdict v;
  v.kernel = observed.kind;
  v.observed = observed.value;
  v.expected = expected.value;
  v.observed_status = observed.status;
  v.expected_status = expected.status;
  v.vector = vector;
  v.core = core;
  const bool same = observed.status == expected.status &&
                    values_equal(observed.value, expected.value, mode);
  v.outcome = same ? Outcome::kMatch : Outcome::kMismatch;
  return v;
}

}  // namespace sdc
