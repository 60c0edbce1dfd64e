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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace sdc {

// A core on a host. Core indices are dense in [0, cores_per_host).
struct CoreId {
  std::string host;
  std::uint32_t core = 0;

  friend auto operator<=>(const CoreId&, const CoreId&) = default;
  friend bool operator==(const CoreId&, const CoreId&) = default;
};

std::string to_string(const CoreId& id);

enum class PrimKind : std::uint8_t {
  kLog2,
  kExp2,
  kMul,
  kAdd,
  kTruncToInt,
  kLutSquare,
  kChecksum,
};

inline constexpr int kVariableArity = -1;

std::string_view to_string(PrimKind kind);
std::optional<PrimKind> prim_kind_from_string(std::string_view name);
// Operand count for `kind`, or kVariableArity for CHECKSUM.
int prim_arity(PrimKind kind);

using OperandList = boost::container::small_vector<double, 2>;

// One primitive arithmetic step, the unit at which faults are injected.
struct PrimOp {
  PrimKind kind = PrimKind::kAdd;
  OperandList operands;
  CoreId core;
  std::uint64_t seq = 0;
};

struct TraceEntry {
  PrimOp op;
  double result = 0.0;
};

enum class KernelKind : std::uint8_t {
  kIntPow,
  kPowChain,
  kSquareLut,
  kDecompressSize,
  kRoundtrip,
};

std::string_view to_string(KernelKind kind);
std::optional<KernelKind> kernel_kind_from_string(std::string_view name);
// Number of primitive ops one evaluation of `kind` issues.
int kernel_op_count(KernelKind kind);

// Operands of one computation test. The id is derived from the fields and
// cannot be set independently.
class TestVector {
 public:
  TestVector() : TestVector(1.0, 0.0) {}
  TestVector(double base, double exponent,
             std::vector<std::uint8_t> payload = {});

  double base() const { return base_; }
  double exponent() const { return exponent_; }
  const std::vector<std::uint8_t>& payload() const { return payload_; }
  std::uint64_t id() const { return id_; }

  friend bool operator==(const TestVector& a, const TestVector& b);

 private:
  double base_;
  double exponent_;
  std::vector<std::uint8_t> payload_;
  std::uint64_t id_;
};

// Bit-level field hash used for TestVector::id().
std::uint64_t compute_vector_id(double base, double exponent,
                                const std::vector<std::uint8_t>& payload);

enum class KernelStatus : std::uint8_t { kOk, kDomainError };

// Integer results (truncated powers, sizes, LUT reads, pass/fail) are held as
// int64; the power chain result is a binary64.
using KernelValue = std::variant<double, std::int64_t>;

std::string format_value(const KernelValue& value);

struct KernelOutput {
  KernelKind kind = KernelKind::kIntPow;
  KernelValue value = std::int64_t{0};
  std::vector<TraceEntry> trace;
  KernelStatus status = KernelStatus::kOk;

  bool ok() const { return status == KernelStatus::kOk; }
  std::int64_t integer() const;
  double real() const;
};

}  // namespace sdc
