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
#include <vector>

#include "sdc/kernels/backend.h"
#include "sdc/kernels/types.h"
#include "sdc/oracle/oracle.h"

namespace sdc {

class NothingToShrinkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ShrinkCertificate {
  TestVector vector;
  KernelValue observed;
  KernelValue expected;
};

struct ShrinkResult {
  KernelKind kernel = KernelKind::kIntPow;
  std::size_t stream_length = 0;  // n
  std::vector<TestVector> minimal_vectors;
  // Kernel evaluations on the device under test.
  std::uint64_t steps = 0;
  // ddmin predicate invocations.
  std::uint64_t subset_tests = 0;
  std::vector<ShrinkCertificate> certificates;
};

// Constant C of the evaluation bound steps <= C * n * log2(n) + k^2.
inline constexpr double kShrinkBoundConstant = 1.0;

double shrink_step_bound(std::size_t stream_length, std::size_t minimal_size);

// Minimizes a failing stream to one witness per distinct mismatch. A
// mismatch's identity is (kernel, observed value, expected value). Each
// vector is evaluated exactly once on `backend`; ddmin then runs over the
// failing vectors with the recorded outcomes. Throws NothingToShrinkError
// when no vector mismatches.
ShrinkResult shrink(const std::vector<TestVector>& failing_stream,
                    const CoreId& core, KernelKind kernel,
                    ArithmeticBackend& backend,
                    const ComparisonPolicy& policy =
                        ComparisonPolicy::standard());

enum class Consistency : std::uint8_t {
  kConsistentFail,
  kFlaky,
  kConsistentPass,
};

std::string_view to_string(Consistency c);

struct DependencyRow {
  TestVector vector;
  std::uint32_t failures = 0;
  std::uint32_t passes = 0;
  Consistency consistency = Consistency::kConsistentPass;
};

// Re-evaluates each minimal vector `repeats` times, each repeat being a new
// scan (backend.begin_scan(t_hours)) on `core`. Throws std::invalid_argument
// when repeats < 2.
std::vector<DependencyRow> classify_data_dependency(
    const ShrinkResult& reproducer, const CoreId& core, KernelKind kernel,
    ArithmeticBackend& backend, std::uint32_t repeats, double t_hours = 0.0,
    const ComparisonPolicy& policy = ComparisonPolicy::standard());

}  // namespace sdc
