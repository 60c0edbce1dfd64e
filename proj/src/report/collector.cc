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

#include "sdc/report/collector.h"

#include <algorithm>

namespace sdc {

std::string_view to_string(HostHealth health) {
  switch (health) {
    case HostHealth::kUntested:
      return "UNTESTED";
    case HostHealth::kPass:
      return "PASS";
    case HostHealth::kFail:
      return "FAIL";
  }
  return "UNTESTED";
}

bool CollectorState::ingest(const ScanResultSummary& summary) {
  Key key{summary.host, summary.plan_hash, summary.quantum_id};
  auto [it, inserted] = records_.emplace(std::move(key), summary.mismatches);
  if (!inserted) {
    ++duplicates_;
    it->second = std::max(it->second, summary.mismatches);
  }
  HostHealth& health = health_[summary.host];
  if (summary.mismatches > 0) {
    health = HostHealth::kFail;
  } else if (health == HostHealth::kUntested) {
    health = HostHealth::kPass;
  }
  return inserted;
}

void CollectorState::reset(const std::string& host) {
  std::erase_if(records_,
                [&](const auto& entry) { return std::get<0>(entry.first) == host; });
  health_.erase(host);
}

HostHealth CollectorState::status(const std::string& host) const {
  const auto it = health_.find(host);
  return it == health_.end() ? HostHealth::kUntested : it->second;
}

}  // namespace sdc
