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

#include "sdc/faultsim/faulty_backend.h"

#include <set>
#include <string>
#include <utility>

namespace sdc {

FaultyBackend::FaultyBackend(
    std::unique_ptr<ArithmeticBackend> reference,
    std::shared_ptr<const std::vector<FaultSpec>> specs)
    : reference_(std::move(reference)), specs_(std::move(specs)) {}

std::unique_ptr<ArithmeticBackend> FaultyBackend::fresh_session() const {
  auto session =
      std::make_unique<FaultyBackend>(reference_->fresh_session(), specs_);
  session->t_hours_ = t_hours_;
  return session;
}

void FaultyBackend::begin_scan(double t_hours) {
  t_hours_ = t_hours;
  ++epoch_;
  reference_->begin_scan(t_hours);
}

const std::vector<const FaultSpec*>& FaultyBackend::specs_for(
    const CoreId& core) const {
  if (!cache_valid_ || cached_core_ != core) {
    cached_specs_.clear();
    for (const FaultSpec& spec : *specs_) {
      if (spec.scope.matches(core)) cached_specs_.push_back(&spec);
    }
    cached_core_ = core;
    cache_valid_ = true;
  }
  return cached_specs_;
}

double FaultyBackend::compute(const PrimOp& op) const {
  double value = reference_->evaluate(op);
  for (const FaultSpec* spec : specs_for(op.core)) {
    if (spec->trigger.matches(op) && onset_active(*spec, t_hours_, epoch_)) {
      value = corrupt(value, spec->transform, &op);
    }
  }
  return value;
}

std::unique_ptr<FaultyBackend> inject(const ArithmeticBackend& reference,
                                      std::vector<FaultSpec> specs) {
  std::set<std::string> ids;
  for (const FaultSpec& spec : specs) {
    validate(spec);
    if (!ids.insert(spec.id).second) {
      throw FaultSpecError("duplicate fault spec id '" + spec.id + "'");
    }
  }
  return std::make_unique<FaultyBackend>(
      reference.fresh_session(),
      std::make_shared<const std::vector<FaultSpec>>(std::move(specs)));
}

}  // namespace sdc
