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

#include "sdc/detector/ddmin.h"

#include <algorithm>
#include <numeric>

namespace sdc {
namespace {

std::vector<std::vector<std::size_t>> split_chunks(
    const std::vector<std::size_t>& set, std::size_t n) {
  std::vector<std::vector<std::size_t>> chunks;
  chunks.reserve(n);
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t end = start + (set.size() - start) / (n - i);
    chunks.emplace_back(set.begin() + start, set.begin() + end);
    start = end;
  }
  return chunks;
}

std::vector<std::size_t> complement_of(
    const std::vector<std::vector<std::size_t>>& chunks, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i != skip) out.insert(out.end(), chunks[i].begin(), chunks[i].end());
  }
  return out;
}

}  // namespace

DdminResult ddmin(std::size_t n, const SubsetTest& still_fails) {
  DdminResult result;
  std::vector<std::size_t> current(n);
  std::iota(current.begin(), current.end(), 0);

  auto test = [&](const std::vector<std::size_t>& subset) {
    ++result.tests;
    return still_fails(subset);
  };

  std::size_t granularity = 2;
  while (current.size() >= 2) {
    granularity = std::min(granularity, current.size());
    const auto chunks = split_chunks(current, granularity);

    bool reduced = false;
    for (const auto& chunk : chunks) {
      if (test(chunk)) {
        current = chunk;
        granularity = 2;
        reduced = true;
        break;
      }
    }
    // With two chunks each complement is the other chunk, already tested.
    if (!reduced && granularity > 2) {
      for (std::size_t i = 0; i < chunks.size(); ++i) {
        auto complement = complement_of(chunks, i);
        if (test(complement)) {
          current = std::move(complement);
          granularity = std::max<std::size_t>(granularity - 1, 2);
          reduced = true;
          break;
        }
      }
    }
    if (reduced) continue;
    if (granularity >= current.size()) break;
    granularity = std::min(granularity * 2, current.size());
  }

  result.minimal = std::move(current);
  return result;
}

}  // namespace sdc
