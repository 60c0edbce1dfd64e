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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdc/fleetsim/fleet.h"

namespace sdc {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Flat "key = value" lines; '#' starts a comment line. Keys are the
// FleetConfig field names plus:
//   fault_library  comma-separated spec files (bundled names allowed)
//   scan.kernels   comma-separated kernel names
//   scan.count     stream vectors per core
//   scan.seed      operand stream seed
//   scan.targeted  none | builtin | <reproducer JSONL path>
//   scan.budget_ops
// Relative paths resolve against `base_dir`, then the bundled data.
// Unknown or repeated keys and bad values throw ConfigError.
FleetConfig parse_fleet_config(std::string_view text,
                               const std::filesystem::path& base_dir = {});

FleetConfig load_fleet_config_file(const std::filesystem::path& path);

// Splits "a,b , c" into trimmed, non-empty items.
std::vector<std::string> split_list(std::string_view text);

}  // namespace sdc
