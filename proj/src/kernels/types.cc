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

#include "sdc/kernels/types.h"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "sdc/kernels/hashing.h"

namespace sdc {
namespace {

constexpr std::array<std::pair<PrimKind, std::string_view>, 7> kPrimNames = {{
    {PrimKind::kLog2, "LOG2"},
    {PrimKind::kExp2, "EXP2"},
    {PrimKind::kMul, "MUL"},
    {PrimKind::kAdd, "ADD"},
    {PrimKind::kTruncToInt, "TRUNC_TO_INT"},
    {PrimKind::kLutSquare, "LUT_SQUARE"},
    {PrimKind::kChecksum, "CHECKSUM"},
}};

constexpr std::array<std::pair<KernelKind, std::string_view>, 5> kKernelNames =
    {{
        {KernelKind::kIntPow, "INT_POW"},
        {KernelKind::kPowChain, "POW_CHAIN"},
        {KernelKind::kSquareLut, "SQUARE_LUT"},
        {KernelKind::kDecompressSize, "DECOMPRESS_SIZE"},
        {KernelKind::kRoundtrip, "ROUNDTRIP"},
    }};

}  // namespace

std::string to_string(const CoreId& id) {
  return id.host + ":" + std::to_string(id.core);
}

std::string_view to_string(PrimKind kind) {
  for (const auto& [k, name] : kPrimNames) {
    if (k == kind) return name;
  }
  return "UNKNOWN";
}

std::optional<PrimKind> prim_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kPrimNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

int prim_arity(PrimKind kind) {
  switch (kind) {
    case PrimKind::kLog2:
    case PrimKind::kExp2:
    case PrimKind::kTruncToInt:
    case PrimKind::kLutSquare:
      return 1;
    case PrimKind::kMul:
    case PrimKind::kAdd:
      return 2;
    case PrimKind::kChecksum:
      return kVariableArity;
  }
  return kVariableArity;
}

std::string_view to_string(KernelKind kind) {
  for (const auto& [k, name] : kKernelNames) {
    if (k == kind) return name;
  }
  return "UNKNOWN";
}

std::optional<KernelKind> kernel_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKernelNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

int kernel_op_count(KernelKind kind) {
  switch (kind) {
    case KernelKind::kIntPow:
    case KernelKind::kDecompressSize:
      return 4;
    case KernelKind::kPowChain:
      return 3;
    case KernelKind::kSquareLut:
      return 1;
    case KernelKind::kRoundtrip:
      return 2;
  }
  return 0;
}

std::uint64_t compute_vector_id(double base, double exponent,
                                const std::vector<std::uint8_t>& payload) {
  std::uint64_t h = fnv1a64_word(kFnvOffsetBasis, double_bits(base));
  h = fnv1a64_word(h, double_bits(exponent));
  h = fnv1a64_word(h, payload.size());
  h = fnv1a64(payload, h);
  return mix64(h);
}

TestVector::TestVector(double base, double exponent,
                       std::vector<std::uint8_t> payload)
    : base_(base),
      exponent_(exponent),
      payload_(std::move(payload)),
      id_(compute_vector_id(base_, exponent_, payload_)) {}

bool operator==(const TestVector& a, const TestVector& b) {
  return a.id_ == b.id_ && double_bits(a.base_) == double_bits(b.base_) &&
         double_bits(a.exponent_) == double_bits(b.exponent_) &&
         a.payload_ == b.payload_;
}

std::string format_value(const KernelValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    return std::to_string(*i);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(value));
  return buf;
}

std::int64_t KernelOutput::integer() const {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  throw std::logic_error("kernel output holds a binary64 value");
}

double KernelOutput::real() const {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  return static_cast<double>(std::get<std::int64_t>(value));
}

}  // namespace sdc
