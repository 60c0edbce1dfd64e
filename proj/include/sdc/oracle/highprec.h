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

// Independent golden model of the power chain. Deliberately free of any
// dependency on the kernels library so that a defect in shared kernel code
// cannot hide in both paths.

namespace sdc::highprec {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr long kWorkingPrecisionBits = 128;

// log2(x), y*log, 2^(y*log), each computed with MPFR at
// kWorkingPrecisionBits and rounded to nearest binary64 before the next step.
// Throws DomainError unless x > 0 and y is finite.
double chain_value(double x, double y);

// chain_value followed by truncation toward zero with int32 saturation and
// NaN mapped to 0 (Scala Double.toInt).
std::int64_t chain_eval(double x, double y);

}  // namespace sdc::highprec

namespace sdc {

// Alias kept next to the oracle's other entry points.
inline std::int64_t highprec_chain_eval(double x, double y) {
  return highprec::chain_eval(x, y);
}

}  // namespace sdc
