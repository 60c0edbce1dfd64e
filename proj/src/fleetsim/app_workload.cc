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

#include "sdc/fleetsim/app_workload.h"

#include <stdexcept>

#include "sdc/kernels/hashing.h"

namespace sdc {

AppWorkloadResult app_workload_decompression(
    const std::string& host, std::uint32_t cores_per_host,
    const std::vector<DecompressHeader>& files, ArithmeticBackend& backend,
    std::uint64_t seed) {
  if (files.empty()) throw std::invalid_argument("no files to decompress");
  if (cores_per_host == 0) throw std::invalid_argument("host has no cores");
  AppWorkloadResult result;
  SplitMix64 placement(seed);
  CoreId core{host, 0};
  for (const DecompressHeader& header : files) {
    core.core = static_cast<std::uint32_t>(placement.next_below(cores_per_host));
    const KernelOutput size = decompress_size(
        header, backend, core, EvalOptions{.record_trace = false});
    ++result.files_submitted;
    if (size.ok() && size.integer() > 0) {
      ++result.files_written;
    } else {
      ++result.files_silently_dropped;
    }
  }
  return result;
}

std::vector<DecompressHeader> app_file_headers(std::uint64_t seed,
                                               std::size_t count) {
  SplitMix64 rng(seed);
  std::vector<DecompressHeader> headers;
  headers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    headers.push_back({1.1, static_cast<double>(rng.next_below(129))});
  }
  return headers;
}

}  // namespace sdc
