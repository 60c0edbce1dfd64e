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

#include "sdc/kernels/backend.h"

#include <array>
#include <cmath>
#include <limits>

#include "sdc/kernels/hashing.h"

namespace sdc {
namespace {

constexpr std::array<std::int64_t, 256> make_square_table() {
  std::array<std::int64_t, 256> table{};
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = static_cast<std::int64_t>(i * i);
  }
  return table;
}

constexpr std::array<std::int64_t, 256> kSquareTable = make_square_table();

double checksum_operands(const OperandList& operands) {
  std::uint64_t h = kFnvOffsetBasis;
  for (double v : operands) {
    h = fnv1a64_step(h, static_cast<std::uint8_t>(static_cast<std::int64_t>(v)));
  }
  return double_from_bits(h);
}

}  // namespace

TraceEntry ArithmeticBackend::execute(PrimKind kind,
                                      std::span<const double> operands,
                                      const CoreId& core) {
  TraceEntry entry;
  entry.op.kind = kind;
  entry.op.operands.assign(operands.begin(), operands.end());
  entry.op.core = core;
  entry.op.seq = next_seq_++;
  entry.result = compute(entry.op);
  return entry;
}

std::unique_ptr<ArithmeticBackend> ReferenceBackend::fresh_session() const {
  return std::make_unique<ReferenceBackend>();
}

double ReferenceBackend::compute(const PrimOp& op) const {
  return reference_primitive(op);
}

double saturating_trunc_to_int(double value) {
  constexpr double kMin = std::numeric_limits<std::int32_t>::min();
  constexpr double kMax = std::numeric_limits<std::int32_t>::max();
  if (std::isnan(value)) return 0.0;
  if (value <= kMin) return kMin;
  if (value >= kMax) return kMax;
  return std::trunc(value);
}

std::int64_t square_table_entry(std::size_t index) {
  return kSquareTable.at(index);
}

double reference_primitive(const PrimOp& op) {
  const auto& a = op.operands;
  switch (op.kind) {
    case PrimKind::kLog2:
      return std::log2(a.at(0));
    case PrimKind::kExp2:
      return std::exp2(a.at(0));
    case PrimKind::kMul:
      return a.at(0) * a.at(1);
    case PrimKind::kAdd:
      return a.at(0) + a.at(1);
    case PrimKind::kTruncToInt:
      return saturating_trunc_to_int(a.at(0));
    case PrimKind::kLutSquare: {
      const double x = a.at(0);
      if (!(x >= 0.0 && x <= 255.0) || std::trunc(x) != x) {
        return std::numeric_limits<double>::quiet_NaN();
      }
      return static_cast<double>(kSquareTable[static_cast<std::size_t>(x)]);
    }
    case PrimKind::kChecksum:
      return checksum_operands(a);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace sdc
