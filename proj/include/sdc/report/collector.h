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
#include <string>
#include <string_view>
#include <tuple>

namespace sdc {

enum class HostHealth : std::uint8_t { kUntested, kPass, kFail };

std::string_view to_string(HostHealth health);

// What the collector needs from one SCAN_RESULT.
struct ScanResultSummary {
  std::string host;
  std::uint64_t plan_hash = 0;
  std::uint64_t quantum_id = 0;
  std::uint64_t mismatches = 0;
};

// Pass/fail aggregation point. Each (host, plan hash, quantum id) key counts
// once; repeated keys merge by taking the larger mismatch count, which makes
// ingestion commutative and idempotent. FAIL is sticky until reset().
class CollectorState {
 public:
  using Key = std::tuple<std::string, std::uint64_t, std::uint64_t>;

  // Returns false when the record was a duplicate key.
  bool ingest(const ScanResultSummary& summary);

  // Explicitly clears a host (after repair); drops its records.
  void reset(const std::string& host);

  HostHealth status(const std::string& host) const;
  const std::map<std::string, HostHealth>& hosts() const { return health_; }
  std::size_t unique_records() const { return records_.size(); }
  std::size_t duplicates_dropped() const { return duplicates_; }

  // Status and record set equality; duplicate counters are not compared.
  friend bool operator==(const CollectorState& a, const CollectorState& b) {
    return a.health_ == b.health_ && a.records_ == b.records_;
  }

 private:
  std::map<Key, std::uint64_t> records_;
  std::map<std::string, HostHealth> health_;
  std::size_t duplicates_ = 0;
};

}  // namespace sdc
