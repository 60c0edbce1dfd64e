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
#include <string>
#include <vector>

#include "sdc/kernels/backend.h"
#include "sdc/kernels/kernels.h"

namespace sdc {

struct AppWorkloadResult {
  std::uint64_t files_submitted = 0;
  std::uint64_t files_written = 0;
  std::uint64_t files_silently_dropped = 0;
  // The pipeline has no failure path; this stays 0.
  std::uint64_t error_events_emitted = 0;
};

// Decompression pipeline of the case study. Each file's size is computed by
// decompress_size on a core picked by SplitMix64(seed), so work is not
// pinned. Size 0 means the file is skipped without any error; size > 0
// means it is written. Throws std::invalid_argument on an empty file list.
AppWorkloadResult app_workload_decompression(
    const std::string& host, std::uint32_t cores_per_host,
    const std::vector<DecompressHeader>& files, ArithmeticBackend& backend,
    std::uint64_t seed);

// Headers with base 1.1 and an integer level in [0, 128], so every file has
// a non-zero true size.
std::vector<DecompressHeader> app_file_headers(std::uint64_t seed,
                                               std::size_t count);

}  // namespace sdc
