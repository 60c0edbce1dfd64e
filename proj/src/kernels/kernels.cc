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

#include "sdc/kernels/kernels.h"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sdc/kernels/hashing.h"

namespace sdc {
namespace {

// Integer kernels map a primitive result to int64. A result that is not an
// integral value in int64 range maps to this sentinel rather than being
// rounded, so corrupted non-integral results never alias a valid integer.
constexpr std::int64_t kNotAnInteger = std::numeric_limits<std::int64_t>::min();

std::int64_t to_integer_value(double r) {
  if (!std::isfinite(r) || std::trunc(r) != r) return kNotAnInteger;
  if (r < -0x1.0p63 || r >= 0x1.0p63) return kNotAnInteger;
  return static_cast<std::int64_t>(r);
}

class StepRunner {
 public:
  StepRunner(ArithmeticBackend& backend, const CoreId& core,
             KernelOutput& out, bool record)
      : backend_(backend), core_(core), out_(out), record_(record) {}

  double run(PrimKind kind, std::span<const double> operands) {
    TraceEntry entry = backend_.execute(kind, operands, core_);
    const double result = entry.result;
    if (record_) out_.trace.push_back(std::move(entry));
    return result;
  }

  double run1(PrimKind kind, double a) {
    const std::array<double, 1> ops{a};
    return run(kind, ops);
  }

  double run2(PrimKind kind, double a, double b) {
    const std::array<double, 2> ops{a, b};
    return run(kind, ops);
  }

 private:
  ArithmeticBackend& backend_;
  const CoreId& core_;
  KernelOutput& out_;
  bool record_;
};

KernelOutput domain_error(KernelKind kind) {
  KernelOutput out;
  out.kind = kind;
  out.status = KernelStatus::kDomainError;
  out.value = std::numeric_limits<double>::quiet_NaN();
  if (kind != KernelKind::kPowChain) out.value = kNotAnInteger;
  return out;
}

bool power_domain_ok(double x, double y) {
  return x > 0.0 && std::isfinite(y);
}

// LOG2 -> MUL -> EXP2 -> TRUNC_TO_INT, shared by INT_POW and DECOMPRESS_SIZE.
KernelOutput truncated_power(KernelKind kind, double x, double y,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options) {
  if (!power_domain_ok(x, y)) return domain_error(kind);
  KernelOutput out;
  out.kind = kind;
  if (options.record_trace) out.trace.reserve(4);
  StepRunner steps(backend, core, out, options.record_trace);
  const double log = steps.run1(PrimKind::kLog2, x);
  const double scaled = steps.run2(PrimKind::kMul, y, log);
  const double power = steps.run1(PrimKind::kExp2, scaled);
  out.value = to_integer_value(steps.run1(PrimKind::kTruncToInt, power));
  return out;
}

}  // namespace

KernelOutput pow_via_log2(double x, double y, ArithmeticBackend& backend,
                          const CoreId& core, EvalOptions options) {
  if (!power_domain_ok(x, y)) return domain_error(KernelKind::kPowChain);
  KernelOutput out;
  out.kind = KernelKind::kPowChain;
  if (options.record_trace) out.trace.reserve(3);
  StepRunner steps(backend, core, out, options.record_trace);
  const double log = steps.run1(PrimKind::kLog2, x);
  const double scaled = steps.run2(PrimKind::kMul, y, log);
  out.value = steps.run1(PrimKind::kExp2, scaled);
  return out;
}

KernelOutput int_pow_trunc(double x, double y, ArithmeticBackend& backend,
                           const CoreId& core, EvalOptions options) {
  return truncated_power(KernelKind::kIntPow, x, y, backend, core, options);
}

KernelOutput square_lut(std::int64_t x, ArithmeticBackend& backend,
                        const CoreId& core, EvalOptions options) {
  if (x < 0 || x > 255) {
    throw KernelInputError("square_lut operand out of [0, 255]: " +
                           std::to_string(x));
  }
  KernelOutput out;
  out.kind = KernelKind::kSquareLut;
  StepRunner steps(backend, core, out, options.record_trace);
  out.value = to_integer_value(
      steps.run1(PrimKind::kLutSquare, static_cast<double>(x)));
  return out;
}

KernelOutput decompress_size(const DecompressHeader& header,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options) {
  return truncated_power(KernelKind::kDecompressSize, header.base,
                         header.level, backend, core, options);
}

KernelOutput roundtrip_check(std::span<const std::uint8_t> payload,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options) {
  if (payload.empty()) throw KernelInputError("roundtrip payload is empty");
  const std::vector<std::uint8_t> restored =
      rle_decompress(rle_compress(payload));

  KernelOutput out;
  out.kind = KernelKind::kRoundtrip;
  StepRunner steps(backend, core, out, options.record_trace);
  std::vector<double> operands(restored.begin(), restored.end());
  const double out_sum = steps.run(PrimKind::kChecksum, operands);
  operands.assign(payload.begin(), payload.end());
  const double in_sum = steps.run(PrimKind::kChecksum, operands);
  out.value = std::int64_t{double_bits(out_sum) == double_bits(in_sum)};
  return out;
}

std::int64_t square_lut_operand(const TestVector& vector) {
  return static_cast<std::int64_t>(vector.id() & 0xFF);
}

std::vector<std::uint8_t> roundtrip_payload(const TestVector& vector) {
  constexpr std::size_t kBytes = 64;
  SplitMix64 rng(vector.id());
  std::vector<std::uint8_t> payload;
  payload.reserve(kBytes);
  while (payload.size() < kBytes) {
    const auto run = 1 + rng.next_below(8);
    const auto byte = static_cast<std::uint8_t>(rng.next());
    for (std::uint64_t i = 0; i < run && payload.size() < kBytes; ++i) {
      payload.push_back(byte);
    }
  }
  return payload;
}

KernelOutput evaluate_kernel(KernelKind kind, const TestVector& vector,
                             ArithmeticBackend& backend, const CoreId& core,
                             EvalOptions options) {
  switch (kind) {
    case KernelKind::kIntPow:
      return int_pow_trunc(vector.base(), vector.exponent(), backend, core,
                           options);
    case KernelKind::kPowChain:
      return pow_via_log2(vector.base(), vector.exponent(), backend, core,
                          options);
    case KernelKind::kSquareLut:
      return square_lut(square_lut_operand(vector), backend, core, options);
    case KernelKind::kDecompressSize:
      return decompress_size({vector.base(), vector.exponent()}, backend,
                             core, options);
    case KernelKind::kRoundtrip:
      if (!vector.payload().empty()) {
        return roundtrip_check(vector.payload(), backend, core, options);
      }
      return roundtrip_check(roundtrip_payload(vector), backend, core,
                             options);
  }
  throw KernelInputError("unknown kernel kind");
}

KernelValue value_from_trace(KernelKind kind,
                             std::span<const TraceEntry> trace) {
  if (trace.empty()) {
    if (kind == KernelKind::kPowChain) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return kNotAnInteger;
  }
  switch (kind) {
    case KernelKind::kPowChain:
      return trace.back().result;
    case KernelKind::kIntPow:
    case KernelKind::kDecompressSize:
    case KernelKind::kSquareLut:
      return to_integer_value(trace.back().result);
    case KernelKind::kRoundtrip:
      if (trace.size() != 2) return kNotAnInteger;
      return std::int64_t{double_bits(trace[0].result) ==
                          double_bits(trace[1].result)};
  }
  return kNotAnInteger;
}

bool replay_trace(const KernelOutput& output,
                  const ArithmeticBackend& backend) {
  for (const TraceEntry& entry : output.trace) {
    if (double_bits(backend.evaluate(entry.op)) != double_bits(entry.result)) {
      return false;
    }
  }
  const KernelValue replayed = value_from_trace(output.kind, output.trace);
  if (replayed.index() != output.value.index()) return false;
  if (const auto* d = std::get_if<double>(&replayed)) {
    return double_bits(*d) == double_bits(std::get<double>(output.value));
  }
  return replayed == output.value;
}

std::vector<std::uint8_t> rle_compress(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < data.size()) {
    const std::uint8_t byte = data[i];
    std::size_t run = 1;
    while (i + run < data.size() && data[i + run] == byte && run < 255) ++run;
    out.push_back(static_cast<std::uint8_t>(run));
    out.push_back(byte);
    i += run;
  }
  return out;
}

std::vector<std::uint8_t> rle_decompress(std::span<const std::uint8_t> data) {
  if (data.size() % 2 != 0) {
    throw KernelInputError("rle stream has odd length");
  }
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < data.size(); i += 2) {
    if (data[i] == 0) throw KernelInputError("rle stream has a zero run");
    out.insert(out.end(), data[i], data[i + 1]);
  }
  return out;
}

std::vector<TestVector> gen_operand_stream(std::uint64_t seed,
                                           std::size_t count,
                                           const OperandDomain& domain) {
  if (count == 0) throw KernelInputError("operand stream count must be >= 1");
  const bool finite = std::isfinite(domain.base_min) &&
                      std::isfinite(domain.base_max) &&
                      std::isfinite(domain.exponent_min) &&
                      std::isfinite(domain.exponent_max);
  if (!finite || !(domain.base_min > 0.0) ||
      domain.base_min > domain.base_max ||
      domain.exponent_min > domain.exponent_max) {
    throw KernelInputError("invalid operand domain");
  }
  const double exp_lo = std::ceil(domain.exponent_min);
  const double exp_hi = std::floor(domain.exponent_max);
  if (domain.integer_exponent && exp_lo > exp_hi) {
    throw KernelInputError("operand domain has no integer exponent");
  }

  SplitMix64 rng(seed);
  std::vector<TestVector> stream;
  stream.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double base =
        domain.base_min + (domain.base_max - domain.base_min) * rng.next_unit();
    double exponent;
    if (domain.integer_exponent) {
      const auto span = static_cast<std::uint64_t>(exp_hi - exp_lo) + 1;
      exponent = exp_lo + static_cast<double>(rng.next_below(span));
    } else {
      exponent = domain.exponent_min +
                 (domain.exponent_max - domain.exponent_min) * rng.next_unit();
    }
    std::vector<std::uint8_t> payload(domain.payload_bytes);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next());
    stream.emplace_back(base, exponent, std::move(payload));
  }
  return stream;
}

}  // namespace sdc
