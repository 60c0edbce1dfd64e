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
#include <memory>
#include <vector>

#include "sdc/faultsim/fault_spec.h"
#include "sdc/kernels/backend.h"

namespace sdc {

// Delegates each primitive to a wrapped reference session, then applies the
// transform of every spec that is in scope, onset-active and triggered, in
// declaration order. Never throws, logs or reports status: corruption is
// visible only in the returned values.
class FaultyBackend final : public ArithmeticBackend {
 public:
  FaultyBackend(std::unique_ptr<ArithmeticBackend> reference,
                std::shared_ptr<const std::vector<FaultSpec>> specs);

  std::unique_ptr<ArithmeticBackend> fresh_session() const override;

  // Sets the simulated time and starts a new sampling epoch.
  void begin_scan(double t_hours) override;

  double time_hours() const { return t_hours_; }
  std::uint64_t epoch() const { return epoch_; }
  const std::vector<FaultSpec>& specs() const { return *specs_; }

 protected:
  double compute(const PrimOp& op) const override;

 private:
  const std::vector<const FaultSpec*>& specs_for(const CoreId& core) const;

  std::unique_ptr<ArithmeticBackend> reference_;
  std::shared_ptr<const std::vector<FaultSpec>> specs_;
  double t_hours_ = 0.0;
  std::uint64_t epoch_ = 0;

  // Scope filtering result for the most recently seen core.
  mutable bool cache_valid_ = false;
  mutable CoreId cached_core_;
  mutable std::vector<const FaultSpec*> cached_specs_;
};

// Wraps a fresh session of `reference` with `specs`. Throws FaultSpecError on
// duplicate spec ids or a malformed spec.
std::unique_ptr<FaultyBackend> inject(const ArithmeticBackend& reference,
                                      std::vector<FaultSpec> specs);

}  // namespace sdc
