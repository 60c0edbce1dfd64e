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

#include "sdc/report/config.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sdc/faultsim/spec_parser.h"
#include "sdc/report/record.h"
#include "sdc/report/serialize.h"

namespace sdc {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_unsigned(std::string_view text) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a non-negative integer");
  }
  return value;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number");
  }
  if (used != s.size()) throw std::invalid_argument("expected a number");
  return value;
}

bool parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("expected true or false");
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& name) {
  const std::filesystem::path p(name);
  if (p.is_relative() && !base.empty() && std::filesystem::exists(base / p)) {
    return base / p;
  }
  return resolve_spec_path(p);
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message
                              : message),
      line_(line) {}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(pos, end - pos));
    if (!item.empty()) items.emplace_back(item);
    pos = end + 1;
  }
  return items;
}

FleetConfig parse_fleet_config(std::string_view text,
                               const std::filesystem::path& base_dir) {
  FleetConfig config;
  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"hosts", [&](auto v) { config.hosts = parse_unsigned<std::uint32_t>(v); }},
      {"cores_per_host",
       [&](auto v) { config.cores_per_host = parse_unsigned<std::uint32_t>(v); }},
      {"defect_rate", [&](auto v) { config.defect_rate = parse_double(v); }},
      {"maintenance_rate",
       [&](auto v) { config.maintenance_rate = parse_double(v); }},
      {"maintenance_duration_hours",
       [&](auto v) {
         config.maintenance_duration_hours = parse_unsigned<std::uint32_t>(v);
       }},
      {"provision_at_start",
       [&](auto v) { config.provision_at_start = parse_bool(v); }},
      {"workload_overhead_budget",
       [&](auto v) { config.workload_overhead_budget = parse_double(v); }},
      {"plan_cost_hours",
       [&](auto v) { config.plan_cost_hours = parse_double(v); }},
      {"scan_duration_hours",
       [&](auto v) {
         config.scan_duration_hours = parse_unsigned<std::uint32_t>(v);
       }},
      {"mode",
       [&](auto v) {
         const auto mode = scheduler_mode_from_string(v);
         if (!mode) throw std::invalid_argument("unknown mode");
         config.mode = *mode;
       }},
      {"period_days",
       [&](auto v) { config.period_days = parse_unsigned<std::uint32_t>(v); }},
      {"horizon_days",
       [&](auto v) { config.horizon_days = parse_unsigned<std::uint32_t>(v); }},
      {"seed", [&](auto v) { config.seed = parse_unsigned<std::uint64_t>(v); }},
      {"app_files_per_host_day",
       [&](auto v) {
         config.app_files_per_host_day = parse_unsigned<std::uint32_t>(v);
       }},
      {"collector_duplicate_rate",
       [&](auto v) { config.collector_duplicate_rate = parse_double(v); }},
      {"fault_library",
       [&](auto v) {
         config.fault_library.clear();
         for (const std::string& name : split_list(v)) {
           auto specs = load_fault_specs_file(resolve(base_dir, name));
           config.fault_library.insert(config.fault_library.end(),
                                       specs.begin(), specs.end());
         }
       }},
      {"scan.kernels",
       [&](auto v) {
         config.scan_plan.kernels.clear();
         for (const std::string& name : split_list(v)) {
           const auto kind = kernel_kind_from_string(name);
           if (!kind) throw std::invalid_argument("unknown kernel " + name);
           config.scan_plan.kernels.push_back(*kind);
         }
       }},
      {"scan.count",
       [&](auto v) {
         config.scan_plan.stream.count = parse_unsigned<std::size_t>(v);
       }},
      {"scan.seed",
       [&](auto v) {
         config.scan_plan.stream.seed = parse_unsigned<std::uint64_t>(v);
       }},
      {"scan.targeted",
       [&](auto v) {
         if (v == "none") {
           config.scan_plan.targeted.clear();
         } else if (v == "builtin") {
           config.scan_plan.targeted = builtin_targeted_vectors();
         } else {
           config.scan_plan.targeted = reproducer_vectors(
               read_report_file(resolve(base_dir, std::string(v)).string()));
         }
       }},
      {"scan.budget_ops",
       [&](auto v) {
         config.scan_plan.budget_ops = parse_unsigned<std::uint64_t>(v);
       }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto setter = setters.find(key);
    if (setter == setters.end()) {
      throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    try {
      setter->second(value);
    } catch (const std::exception& e) {
      throw ConfigError(line_no, std::string(key) + ": " + e.what());
    }
  }
  try {
    config.validate();
  } catch (const FleetConfigError& e) {
    throw ConfigError(0, e.what());
  }
  return config;
}

FleetConfig load_fleet_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fleet_config(buffer.str(), path.parent_path());
}

}  // namespace sdc
