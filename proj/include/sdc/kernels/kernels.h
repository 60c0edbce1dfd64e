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
#include <span>
#include <stdexcept>
#include <vector>

#include "sdc/kernels/backend.h"
#include "sdc/kernels/types.h"

namespace sdc {

class KernelInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EvalOptions {
  // Scans that only need the final value may skip trace recording.
  bool record_trace = true;
};

// x^y as EXP2(MUL(y, LOG2(x))), every step a separate backend primitive.
// DOMAIN_ERROR (with an empty trace) for x <= 0, NaN operands or infinite y.
KernelOutput pow_via_log2(double x, double y, ArithmeticBackend& backend,
                          const CoreId& core, EvalOptions options = {});

// TRUNC_TO_INT applied to the pow_via_log2 chain.
KernelOutput int_pow_trunc(double x, double y, ArithmeticBackend& backend,
                           const CoreId& core, EvalOptions options = {});

// Reads x*x from a 256-entry table through a LUT_SQUARE primitive. Throws
// KernelInputError when x is outside [0, 255].
KernelOutput square_lut(std::int64_t x, ArithmeticBackend& backend,
                        const CoreId& core, EvalOptions options = {});

struct DecompressHeader {
  double base = 1.0;
  double level = 0.0;
};

// Decompressed size computed as int_pow_trunc(base, level).
KernelOutput decompress_size(const DecompressHeader& header,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options = {});

// RLE round trip of `payload` with CHECKSUM(output) == CHECKSUM(input) as the
// verdict; value 1 on pass, 0 on fail. Throws KernelInputError on an empty
// payload.
KernelOutput roundtrip_check(std::span<const std::uint8_t> payload,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options = {});

// Dispatches a TestVector to the kernel of the given kind. SQUARE_LUT uses
// the low byte of the vector id as its operand; ROUNDTRIP uses the payload,
// or roundtrip_payload(vector) when the payload is empty.
KernelOutput evaluate_kernel(KernelKind kind, const TestVector& vector,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options = {});

std::int64_t square_lut_operand(const TestVector& vector);
std::vector<std::uint8_t> roundtrip_payload(const TestVector& vector);

// Recomputes the final kernel value from a recorded trace alone.
KernelValue value_from_trace(KernelKind kind,
                             std::span<const TraceEntry> trace);

// Re-executes each traced op through `backend` and checks every result and
// the final value reproduce bit-exactly.
bool replay_trace(const KernelOutput& output,
                  const ArithmeticBackend& backend);

// Order-0 run-length codec: a sequence of (run length 1..255, byte) pairs.
std::vector<std::uint8_t> rle_compress(std::span<const std::uint8_t> data);
// Throws KernelInputError on odd-length or zero-run input.
std::vector<std::uint8_t> rle_decompress(std::span<const std::uint8_t> data);

struct OperandDomain {
  double base_min = 1.0;
  double base_max = 2.0;
  double exponent_min = -128.0;
  double exponent_max = 128.0;
  bool integer_exponent = true;
  // When non-zero every vector carries a payload of this many bytes.
  std::size_t payload_bytes = 0;

  friend bool operator==(const OperandDomain&, const OperandDomain&) = default;
};

// Deterministic operand stream driven by SplitMix64(seed). Per vector the
// generator draws, in order: base, exponent, then payload bytes. Throws
// KernelInputError on count == 0 or an invalid domain.
std::vector<TestVector> gen_operand_stream(std::uint64_t seed,
                                           std::size_t count,
                                           const OperandDomain& domain);

}  // namespace sdc
