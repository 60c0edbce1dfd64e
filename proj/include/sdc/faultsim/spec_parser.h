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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/faultsim/fault_spec.h"

namespace sdc {

// Error from load_fault_specs; what() reads "line N: field 'f': message".
class FaultSpecParseError : public FaultSpecError {
 public:
  FaultSpecParseError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Parses a fault-spec document (grammar in docs/fault_spec_format.md).
// All-or-nothing: any violation throws and no specs are returned.
std::vector<FaultSpec> load_fault_specs(std::string_view text);

std::vector<FaultSpec> load_fault_specs_file(const std::filesystem::path& path);

// Renders specs in the same grammar; load_fault_specs(format_fault_specs(s))
// returns s.
std::string format_fault_specs(const std::vector<FaultSpec>& specs);

// Directory holding the bundled spec library (core59.spec,
// errors_table.spec, ...). Overridable with the SDC_DATA_DIR environment
// variable.
std::filesystem::path bundled_spec_dir();

// Resolves `name` as a path, falling back to the bundled spec directory.
std::filesystem::path resolve_spec_path(const std::filesystem::path& name);

}  // namespace sdc
