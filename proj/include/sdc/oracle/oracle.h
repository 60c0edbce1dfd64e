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
#include <string_view>

#include "sdc/kernels/kernels.h"
#include "sdc/kernels/types.h"

namespace sdc {

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ComparisonMode : std::uint8_t { kBitExact, kIntegerExact };

std::string_view to_string(ComparisonMode mode);

// Which comparison each kernel kind uses. The binary64 power chain must be
// compared bit-exactly; every integer-valued kernel integer-exactly.
class ComparisonPolicy {
 public:
  static ComparisonPolicy standard();

  ComparisonMode mode_for(KernelKind kind) const;
  ComparisonPolicy& set(KernelKind kind, ComparisonMode mode);

  // Throws OracleError if an assignment contradicts the value kind of the
  // kernel.
  void validate() const;

  friend bool operator==(const ComparisonPolicy&,
                         const ComparisonPolicy&) = default;

 private:
  std::map<KernelKind, ComparisonMode> modes_;
};

// The mode a kernel kind's value requires.
ComparisonMode required_mode(KernelKind kind);

enum class Outcome : std::uint8_t { kMatch, kMismatch };

struct Verdict {
  Outcome outcome = Outcome::kMatch;
  KernelKind kernel = KernelKind::kIntPow;
  KernelValue observed = std::int64_t{0};
  KernelValue expected = std::int64_t{0};
  KernelStatus observed_status = KernelStatus::kOk;
  KernelStatus expected_status = KernelStatus::kOk;
  TestVector vector;
  CoreId core;

  bool mismatch() const { return outcome == Outcome::kMismatch; }
};

// Evaluates `kernel` on a pristine reference session. This is the expected
// value for detection.
KernelOutput reference_eval(KernelKind kernel, const TestVector& vector,
                            EvalOptions options = {});

// Compares under the policy's mode for the output kind. A status difference
// is a mismatch; NaN never matches a non-NaN. Throws OracleError when the
// kinds differ or the policy mode is wrong for the kind.
Verdict compare(const KernelOutput& observed, const KernelOutput& expected,
                const ComparisonPolicy& policy, const TestVector& vector = {},
                const CoreId& core = {});

// Values equal under `mode` (bit pattern for binary64, integer equality
// otherwise).
bool values_equal(const KernelValue& a, const KernelValue& b,
                  ComparisonMode mode);

}  // namespace sdc
