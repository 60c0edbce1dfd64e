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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sdc {

// Predicate over a subset of indices; true when the subset still exhibits
// the failure being minimized.
using SubsetTest = std::function<bool(std::span<const std::size_t>)>;

struct DdminResult {
  std::vector<std::size_t> minimal;  // ascending indices
  std::size_t tests = 0;             // predicate invocations
};

// Zeller-Hildebrandt ddmin over {0, ..., n-1}. `still_fails` must hold for
// the full set. The result is 1-minimal: removing any single index makes the
// predicate false.
DdminResult ddmin(std::size_t n, const SubsetTest& still_fails);

}  // namespace sdc
