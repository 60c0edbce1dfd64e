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
#include <memory>
#include <span>

#include "sdc/kernels/types.h"

namespace sdc {

// Every primitive step of every kernel flows through a backend. A backend
// instance is a session: it owns a sequence counter and must not be shared
// between threads concurrently. fresh_session() yields an independent
// session with identical arithmetic.
class ArithmeticBackend {
 public:
  virtual ~ArithmeticBackend() = default;

  // Executes one primitive on `core`, stamping it with the next sequence
  // number.
  TraceEntry execute(PrimKind kind, std::span<const double> operands,
                     const CoreId& core);

  // Recomputes an already-stamped op without advancing the sequence.
  double evaluate(const PrimOp& op) const { return compute(op); }

  virtual std::unique_ptr<ArithmeticBackend> fresh_session() const = 0;

  // Marks the start of a scan at simulated time `t_hours`. Backends whose
  // behaviour depends on time or per-scan sampling override this.
  virtual void begin_scan(double t_hours) { (void)t_hours; }

  std::uint64_t ops_executed() const { return next_seq_; }

 protected:
  virtual double compute(const PrimOp& op) const = 0;

 private:
  std::uint64_t next_seq_ = 0;
};

// Pristine IEEE binary64 arithmetic on top of the platform libm.
class ReferenceBackend final : public ArithmeticBackend {
 public:
  std::unique_ptr<ArithmeticBackend> fresh_session() const override;

 protected:
  double compute(const PrimOp& op) const override;
};

// Primitive semantics shared by the reference backend and anything that
// needs the unfaulted result of a single op.
double reference_primitive(const PrimOp& op);

// Scala-style Double.toInt: truncation toward zero, saturating to the int32
// range, NaN to 0.
double saturating_trunc_to_int(double value);

// x*x for x in [0, 255].
std::int64_t square_table_entry(std::size_t index);

}  // namespace sdc
