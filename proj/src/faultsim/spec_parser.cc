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

#include "sdc/faultsim/spec_parser.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sdc/kernels/hashing.h"

#ifndef SDC_DEFAULT_DATA_DIR
#define SDC_DEFAULT_DATA_DIR "data"
#endif

namespace sdc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct Field {
  int line = 0;
  std::string value;
};

struct Section {
  int line = 0;
  std::string id;
  std::map<std::string, Field> fields;
};

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "class",          "host_pattern",     "core",
      "op_kind",        "operands",         "broad",
      "transform",      "transform_params", "activation_hours",
      "ramp_hours",     "rated_life_hours",
  };
  return keys;
}

class SectionReader {
 public:
  explicit SectionReader(const Section& section) : section_(section) {}

  [[noreturn]] void fail(const std::string& key,
                         const std::string& message) const {
    const auto it = section_.fields.find(key);
    const int line = it == section_.fields.end() ? section_.line
                                                 : it->second.line;
    throw FaultSpecParseError(line, key, message);
  }

  const std::string* find(const std::string& key) const {
    const auto it = section_.fields.find(key);
    return it == section_.fields.end() ? nullptr : &it->second.value;
  }

  const std::string& require(const std::string& key) const {
    const std::string* v = find(key);
    if (v == nullptr) fail(key, "missing required field");
    return *v;
  }

  double number(const std::string& key, std::string_view text) const {
    text = trim(text);
    if (text.size() == 18 && text.substr(0, 2) == "0x") {
      std::uint64_t bits = 0;
      const auto* end = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(text.data() + 2, end, bits, 16);
      if (ec == std::errc() && ptr == end) return double_from_bits(bits);
      fail(key, "bad hex bit pattern '" + std::string(text) + "'");
    }
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
      fail(key, "bad number '" + std::string(text) + "'");
    }
    return value;
  }

  unsigned small_uint(const std::string& key, std::string_view text) const {
    text = trim(text);
    unsigned value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
      fail(key, "bad integer '" + std::string(text) + "'");
    }
    return value;
  }

  OperandMatcher matcher(std::string_view text) const {
    text = trim(text);
    if (text == "*") return OperandMatcher::any();
    const auto dots = text.find("..");
    if (dots != std::string_view::npos) {
      return OperandMatcher::interval(number("operands", text.substr(0, dots)),
                                      number("operands", text.substr(dots + 2)));
    }
    if (text.size() == 18 && text.substr(0, 2) == "0x") {
      return OperandMatcher::exact_bits(
          double_bits(number("operands", text)));
    }
    return OperandMatcher::exact(number("operands", text));
  }

 private:
  const Section& section_;
};

FaultSpec build_spec(const Section& section) {
  SectionReader r(section);
  FaultSpec spec;
  spec.id = section.id;

  const std::string& cls = r.require("class");
  const auto defect = defect_class_from_string(cls);
  if (!defect) r.fail("class", "unknown defect class '" + cls + "'");
  spec.defect_class = *defect;

  if (const std::string* host = r.find("host_pattern")) {
    if (host->empty()) r.fail("host_pattern", "empty pattern");
    spec.scope.host_pattern = *host;
  }
  const std::string& core = r.require("core");
  if (core != "*") spec.scope.core = r.small_uint("core", core);

  const std::string& op_kind = r.require("op_kind");
  const auto kind = prim_kind_from_string(op_kind);
  if (!kind) r.fail("op_kind", "unknown op kind '" + op_kind + "'");
  spec.trigger.kind = *kind;

  if (const std::string* broad = r.find("broad")) {
    if (*broad == "true") {
      spec.trigger.broad = true;
    } else if (*broad != "false") {
      r.fail("broad", "expected true or false");
    }
  }
  if (const std::string* operands = r.find("operands")) {
    for (std::string_view alt : split(*operands, ';')) {
      if (alt.empty()) r.fail("operands", "empty alternative");
      OperandPattern pattern;
      for (std::string_view position : split(alt, ',')) {
        pattern.push_back(r.matcher(position));
      }
      spec.trigger.alternatives.push_back(std::move(pattern));
    }
  }
  if (spec.trigger.alternatives.empty() && !spec.trigger.broad) {
    r.fail("operands", "no operands given; set broad = true to fire on "
                       "every op of this kind");
  }

  const std::string& transform = r.require("transform");
  const auto tkind = transform_kind_from_string(transform);
  if (!tkind) r.fail("transform", "unknown transform '" + transform + "'");
  const std::string& params = r.require("transform_params");
  switch (*tkind) {
    case TransformKind::kBitflip: {
      const unsigned bit = r.small_uint("transform_params", params);
      if (bit > 63) r.fail("transform_params", "bit index > 63");
      spec.transform = CorruptionTransform::bitflip(bit);
      break;
    }
    case TransformKind::kExponentFlip: {
      const unsigned bit = r.small_uint("transform_params", params);
      if (bit > 10) r.fail("transform_params", "exponent bit index > 10");
      spec.transform = CorruptionTransform::exponent_flip(bit);
      break;
    }
    case TransformKind::kSetConstant:
      spec.transform = CorruptionTransform::set_constant(
          r.number("transform_params", params));
      break;
    case TransformKind::kLutEntryOverride: {
      std::istringstream in(params);
      std::string index, value, extra;
      if (!(in >> index >> value) || (in >> extra)) {
        r.fail("transform_params", "expected '<index> <value>'");
      }
      const unsigned idx = r.small_uint("transform_params", index);
      if (idx > 255) r.fail("transform_params", "lut index > 255");
      spec.transform = CorruptionTransform::lut_entry_override(
          idx, r.number("transform_params", value));
      break;
    }
  }

  auto hours = [&](const std::string& key) {
    return r.number(key, r.require(key));
  };
  switch (spec.defect_class) {
    case DefectClass::kDeviceError:
      break;
    case DefectClass::kEarlyLife:
      spec.onset.activation_hours = hours("activation_hours");
      break;
    case DefectClass::kDegradation:
      spec.onset.ramp_hours = hours("ramp_hours");
      break;
    case DefectClass::kWearout:
      spec.onset.rated_life_hours = hours("rated_life_hours");
      break;
  }

  try {
    validate(spec);
  } catch (const FaultSpecError& e) {
    throw FaultSpecParseError(section.line, "spec", e.what());
  }
  return spec;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string format_bits(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(double_bits(value)));
  return buf;
}

std::string format_matcher(const OperandMatcher& m) {
  switch (m.kind) {
    case OperandMatcher::Kind::kAny:
      return "*";
    case OperandMatcher::Kind::kExactBits:
      return format_bits(double_from_bits(m.bits));
    case OperandMatcher::Kind::kInterval:
      return format_number(m.lo) + ".." + format_number(m.hi);
  }
  return "*";
}

}  // namespace

FaultSpecParseError::FaultSpecParseError(int line, std::string field,
                                         const std::string& message)
    : FaultSpecError("line " + std::to_string(line) + ": field '" + field +
                     "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::vector<FaultSpec> load_fault_specs(std::string_view text) {
  std::vector<Section> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.substr(0, 6) != "[spec ") {
        throw FaultSpecParseError(line_no, "section",
                                  "expected '[spec <id>]'");
      }
      const std::string id(trim(line.substr(6, line.size() - 7)));
      if (id.empty()) {
        throw FaultSpecParseError(line_no, "section", "empty spec id");
      }
      for (const Section& s : sections) {
        if (s.id == id) {
          throw FaultSpecParseError(line_no, "section",
                                    "duplicate spec id '" + id + "'");
        }
      }
      sections.push_back({line_no, id, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FaultSpecParseError(line_no, std::string(line),
                                "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (sections.empty()) {
      throw FaultSpecParseError(line_no, key, "field outside a [spec] section");
    }
    if (!known_keys().contains(key)) {
      throw FaultSpecParseError(line_no, key, "unknown field");
    }
    auto& fields = sections.back().fields;
    if (fields.contains(key)) {
      throw FaultSpecParseError(line_no, key, "duplicate field");
    }
    fields.emplace(key, Field{line_no, value});
  }

  std::vector<FaultSpec> specs;
  specs.reserve(sections.size());
  for (const Section& section : sections) specs.push_back(build_spec(section));
  return specs;
}

std::vector<FaultSpec> load_fault_specs_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FaultSpecError("cannot read fault spec file '" + path.string() +
                         "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_fault_specs(buffer.str());
}

std::string format_fault_specs(const std::vector<FaultSpec>& specs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const FaultSpec& s = specs[i];
    if (i > 0) out << '\n';
    out << "[spec " << s.id << "]\n";
    out << "class = " << to_string(s.defect_class) << '\n';
    out << "host_pattern = " << s.scope.host_pattern << '\n';
    out << "core = "
        << (s.scope.core ? std::to_string(*s.scope.core) : std::string("*"))
        << '\n';
    out << "op_kind = " << to_string(s.trigger.kind) << '\n';
    if (!s.trigger.alternatives.empty()) {
      out << "operands = ";
      for (std::size_t a = 0; a < s.trigger.alternatives.size(); ++a) {
        if (a > 0) out << "; ";
        const OperandPattern& pattern = s.trigger.alternatives[a];
        for (std::size_t p = 0; p < pattern.size(); ++p) {
          if (p > 0) out << ", ";
          out << format_matcher(pattern[p]);
        }
      }
      out << '\n';
    }
    out << "broad = " << (s.trigger.broad ? "true" : "false") << '\n';
    out << "transform = " << to_string(s.transform.kind) << '\n';
    out << "transform_params = ";
    switch (s.transform.kind) {
      case TransformKind::kBitflip:
      case TransformKind::kExponentFlip:
        out << s.transform.bit;
        break;
      case TransformKind::kSetConstant:
        out << format_bits(s.transform.constant);
        break;
      case TransformKind::kLutEntryOverride:
        out << s.transform.lut_index << ' '
            << format_bits(s.transform.lut_value);
        break;
    }
    out << '\n';
    switch (s.defect_class) {
      case DefectClass::kDeviceError:
        break;
      case DefectClass::kEarlyLife:
        out << "activation_hours = " << format_number(s.onset.activation_hours)
            << '\n';
        break;
      case DefectClass::kDegradation:
        out << "ramp_hours = " << format_number(s.onset.ramp_hours) << '\n';
        break;
      case DefectClass::kWearout:
        out << "rated_life_hours = "
            << format_number(s.onset.rated_life_hours) << '\n';
        break;
    }
  }
  return out.str();
}

std::filesystem::path bundled_spec_dir() {
  if (const char* dir = std::getenv("SDC_DATA_DIR"); dir && *dir) {
    return std::filesystem::path(dir) / "specs";
  }
  return std::filesystem::path(SDC_DEFAULT_DATA_DIR) / "specs";
}

std::filesystem::path resolve_spec_path(const std::filesystem::path& name) {
  if (std::filesystem::exists(name)) return name;
  const auto bundled = bundled_spec_dir() / name;
  if (std::filesystem::exists(bundled)) return bundled;
  return name;
}

}  // namespace sdc
