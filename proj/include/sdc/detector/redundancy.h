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

#include <stdexcept>
#include <vector>

#include "sdc/kernels/backend.h"
#include "sdc/kernels/types.h"
#include "sdc/oracle/oracle.h"

namespace sdc {

// No value reached a strict majority. Carries every core's output.
class NoMajorityError : public std::runtime_error {
 public:
  NoMajorityError(std::vector<CoreId> cores, std::vector<KernelOutput> outputs);

  const std::vector<CoreId>& cores() const { return cores_; }
  const std::vector<KernelOutput>& outputs() const { return outputs_; }

 private:
  std::vector<CoreId> cores_;
  std::vector<KernelOutput> outputs_;
};

struct VoteResult {
  KernelOutput voted;
  // Set iff at least one core produced a value other than the voted one.
  bool disagreement = false;
  std::vector<KernelOutput> per_core;
};

// Runs `kernel` on every core and takes the strict-majority value under the
// policy's comparison mode. Requires an odd number of cores, at least 3
// (std::invalid_argument otherwise).
VoteResult redundant_execute(KernelKind kernel, const TestVector& vector,
                             const std::vector<CoreId>& cores,
                             ArithmeticBackend& backend,
                             const ComparisonPolicy& policy =
                                 ComparisonPolicy::standard());

}  // namespace sdc
