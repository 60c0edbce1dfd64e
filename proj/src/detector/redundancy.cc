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

#include "sdc/detector/redundancy.h"

#include <string>

#include "sdc/kernels/kernels.h"

namespace sdc {

NoMajorityError::NoMajorityError(std::vector<CoreId> cores,
                                 std::vector<KernelOutput> outputs)
    : std::runtime_error([&] {
        std::string msg = "no majority among";
        for (std::size_t i = 0; i < outputs.size(); ++i) {
          msg += " " + to_string(cores[i]) + "=" +
                 format_value(outputs[i].value);
        }
        return msg;
      }()),
      cores_(std::move(cores)),
      outputs_(std::move(outputs)) {}

VoteResult redundant_execute(KernelKind kernel, const TestVector& vector,
                             const std::vector<CoreId>& cores,
                             ArithmeticBackend& backend,
                             const ComparisonPolicy& policy) {
  if (cores.size() < 3 || cores.size() % 2 == 0) {
    throw std::invalid_argument("redundant execution needs an odd number of "
                                "cores, at least 3");
  }
  const ComparisonMode mode = policy.mode_for(kernel);
  auto same = [&](const KernelOutput& a, const KernelOutput& b) {
    return a.status == b.status && values_equal(a.value, b.value, mode);
  };

  VoteResult result;
  for (const CoreId& core : cores) {
    result.per_core.push_back(evaluate_kernel(kernel, vector, backend, core));
  }

  const std::size_t k = result.per_core.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t votes = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (same(result.per_core[i], result.per_core[j])) ++votes;
    }
    if (votes * 2 > k) {
      result.voted = result.per_core[i];
      result.disagreement = votes != k;
      return result;
    }
  }
  throw NoMajorityError(cores, std::move(result.per_core));
}

}  // namespace sdc
