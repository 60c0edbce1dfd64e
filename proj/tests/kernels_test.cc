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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "sdc/kernels/backend.h"
#include "sdc/kernels/hashing.h"
#include "sdc/kernels/kernels.h"

namespace sdc {
namespace {

const CoreId kCore{"host", 0};

std::int64_t int_pow(double x, double y) {
  ReferenceBackend backend;
  return int_pow_trunc(x, y, backend, kCore).integer();
}

// Independent oracle: the three-step chain spelled out with libm calls.
std::int64_t chain_by_hand(double x, double y) {
  volatile double l = std::log2(x);
  volatile double m = y * l;
  volatile double e = std::exp2(m);
  return static_cast<std::int64_t>(std::trunc(e));
}

TEST(IntPowTrunc, KnownPowerValues) {
  EXPECT_EQ(int_pow(1.1, 52), 142);
  EXPECT_EQ(int_pow(1.1, 78), 1692);
  EXPECT_EQ(int_pow(1.1, 3), 1);
  EXPECT_EQ(int_pow(1.1, -3), 0);
  EXPECT_EQ(int_pow(1.1, 107), 26854);
}

TEST(IntPowTrunc, DerivedValuesMatchHandChain) {
  EXPECT_EQ(int_pow(1.1, 53), chain_by_hand(1.1, 53));
  EXPECT_EQ(int_pow(1.1, 68), chain_by_hand(1.1, 68));
  EXPECT_EQ(int_pow(1.1, 53), 156);
  EXPECT_EQ(int_pow(1.1, 68), 652);
}

TEST(IntPowTrunc, AgreesWithExtendedPrecisionPow) {
  const long double x = 1.1;  // the binary64 operand, widened
  EXPECT_EQ(static_cast<std::int64_t>(std::pow(x, 107.0L)), 26854);
  EXPECT_EQ(int_pow(1.1, 107), 26854);
}

TEST(PowViaLog2, ZeroExponentIsOne) {
  ReferenceBackend backend;
  for (double x : {1e-300, 0.5, 1.1, 2.0, 1e300}) {
    const KernelOutput out = pow_via_log2(x, 0.0, backend, kCore);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(double_bits(out.real()), double_bits(1.0)) << x;
  }
}

TEST(PowViaLog2, UnitBaseIsOne) {
  ReferenceBackend backend;
  for (double y : {-128.0, -3.5, 0.0, 7.0, 1e10}) {
    EXPECT_EQ(pow_via_log2(1.0, y, backend, kCore).real(), 1.0);
  }
}

TEST(PowViaLog2, NegativePowersTruncateToZero) {
  for (int n = 1; n <= 128; ++n) {
    EXPECT_EQ(int_pow(1.1, -n), 0) << n;
  }
}

TEST(PowViaLog2, TraceFollowsDocumentedOrder) {
  ReferenceBackend backend;
  const KernelOutput out = pow_via_log2(1.1, 78, backend, kCore);
  ASSERT_EQ(out.trace.size(), 3u);
  EXPECT_EQ(out.trace[0].op.kind, PrimKind::kLog2);
  EXPECT_EQ(out.trace[1].op.kind, PrimKind::kMul);
  EXPECT_EQ(out.trace[2].op.kind, PrimKind::kExp2);
  EXPECT_EQ(out.trace[1].op.operands[0], 78.0);
  EXPECT_EQ(double_bits(out.trace[1].op.operands[1]),
            double_bits(out.trace[0].result));
  EXPECT_LT(out.trace[0].op.seq, out.trace[1].op.seq);
  EXPECT_LT(out.trace[1].op.seq, out.trace[2].op.seq);
  EXPECT_TRUE(std::trunc(out.real()) == 1692.0);
}

TEST(PowViaLog2, DomainErrors) {
  ReferenceBackend backend;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(pow_via_log2(0.0, 1.0, backend, kCore).status,
            KernelStatus::kDomainError);
  EXPECT_EQ(pow_via_log2(-1.0, 1.0, backend, kCore).status,
            KernelStatus::kDomainError);
  EXPECT_EQ(pow_via_log2(nan, 1.0, backend, kCore).status,
            KernelStatus::kDomainError);
  EXPECT_EQ(int_pow_trunc(1.1, nan, backend, kCore).status,
            KernelStatus::kDomainError);
}

TEST(SquareLut, Values) {
  ReferenceBackend backend;
  EXPECT_EQ(square_lut(0, backend, kCore).integer(), 0);
  EXPECT_EQ(square_lut(12, backend, kCore).integer(), 144);
  EXPECT_EQ(square_lut(255, backend, kCore).integer(), 65025);
  for (int i = 0; i < 256; ++i) {
    EXPECT_EQ(square_lut(i, backend, kCore).integer(), i * i);
  }
}

TEST(SquareLut, RejectsOutOfRange) {
  ReferenceBackend backend;
  EXPECT_THROW(square_lut(-1, backend, kCore), KernelInputError);
  EXPECT_THROW(square_lut(256, backend, kCore), KernelInputError);
}

TEST(DecompressSize, Values) {
  ReferenceBackend backend;
  EXPECT_EQ(decompress_size({1.1, 52}, backend, kCore).integer(), 142);
  EXPECT_EQ(decompress_size({2.0, 0}, backend, kCore).integer(), 1);
  EXPECT_EQ(decompress_size({1.1, 53}, backend, kCore).integer(), 156);
}

TEST(Roundtrip, IdenticalBytesPass) {
  ReferenceBackend backend;
  const std::vector<std::uint8_t> payload(64, 0xAB);
  EXPECT_EQ(roundtrip_check(payload, backend, kCore).integer(), 1);
}

TEST(Roundtrip, RandomPayloadsPass) {
  ReferenceBackend backend;
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::uint8_t> payload(1 + rng.next_below(300));
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng.next_below(4));
    EXPECT_EQ(roundtrip_check(payload, backend, kCore).integer(), 1) << i;
  }
}

class ChecksumCorruptor final : public ArithmeticBackend {
 public:
  std::unique_ptr<ArithmeticBackend> fresh_session() const override {
    return std::make_unique<ChecksumCorruptor>();
  }

 protected:
  double compute(const PrimOp& op) const override {
    const double v = reference_primitive(op);
    // Only the second checksum of each round trip is corrupted.
    if (op.kind != PrimKind::kChecksum || op.seq % 2 == 0) return v;
    return double_from_bits(double_bits(v) ^ 1u);
  }
};

TEST(Roundtrip, CorruptedChecksumFails) {
  ChecksumCorruptor backend;
  const std::vector<std::uint8_t> payload{1, 2, 3, 3, 3};
  EXPECT_EQ(roundtrip_check(payload, backend, kCore).integer(), 0);
}

TEST(Roundtrip, EmptyPayloadRejected) {
  ReferenceBackend backend;
  EXPECT_THROW(roundtrip_check({}, backend, kCore), KernelInputError);
}

TEST(Rle, RoundTripsAndRejectsBadInput) {
  std::vector<std::uint8_t> data(600, 7);
  data.push_back(1);
  EXPECT_EQ(rle_decompress(rle_compress(data)), data);
  EXPECT_TRUE(rle_compress({}).empty());
  const std::vector<std::uint8_t> odd{1, 2, 3};
  EXPECT_THROW(rle_decompress(odd), KernelInputError);
  const std::vector<std::uint8_t> zero_run{0, 9};
  EXPECT_THROW(rle_decompress(zero_run), KernelInputError);
}

TEST(Kernels, DeterministicAcrossSessions) {
  ReferenceBackend a;
  ReferenceBackend b;
  OperandDomain d;
  d.payload_bytes = 16;
  for (const TestVector& v : gen_operand_stream(3, 200, d)) {
    for (KernelKind k : {KernelKind::kIntPow, KernelKind::kPowChain,
                         KernelKind::kSquareLut, KernelKind::kDecompressSize,
                         KernelKind::kRoundtrip}) {
      const KernelOutput x = evaluate_kernel(k, v, a, kCore);
      const KernelOutput y = evaluate_kernel(k, v, b, kCore);
      EXPECT_EQ(format_value(x.value), format_value(y.value));
      ASSERT_EQ(x.trace.size(), y.trace.size());
      for (std::size_t i = 0; i < x.trace.size(); ++i) {
        EXPECT_EQ(double_bits(x.trace[i].result),
                  double_bits(y.trace[i].result));
      }
    }
  }
}

TEST(Kernels, TraceReplayReproducesValue) {
  ReferenceBackend backend;
  OperandDomain d;
  d.payload_bytes = 8;
  for (const TestVector& v : gen_operand_stream(5, 100, d)) {
    for (KernelKind k : {KernelKind::kIntPow, KernelKind::kPowChain,
                         KernelKind::kSquareLut, KernelKind::kDecompressSize,
                         KernelKind::kRoundtrip}) {
      const KernelOutput out = evaluate_kernel(k, v, backend, kCore);
      EXPECT_EQ(out.trace.size(), static_cast<std::size_t>(kernel_op_count(k)));
      EXPECT_TRUE(replay_trace(out, backend));
      EXPECT_EQ(format_value(value_from_trace(k, out.trace)),
                format_value(out.value));
    }
  }
}

TEST(Backend, SeqStrictlyIncreases) {
  ReferenceBackend backend;
  std::uint64_t last = 0;
  for (int i = 0; i < 10; ++i) {
    const KernelOutput out = int_pow_trunc(1.1, i, backend, kCore);
    for (const TraceEntry& e : out.trace) {
      if (i > 0 || &e != &out.trace.front()) {
        EXPECT_GT(e.op.seq, last);
      }
      last = e.op.seq;
    }
  }
  EXPECT_EQ(backend.ops_executed(), 40u);
}

TEST(Backend, SaturatingTruncation) {
  EXPECT_EQ(saturating_trunc_to_int(1692.89), 1692.0);
  EXPECT_EQ(saturating_trunc_to_int(-0.75), 0.0);
  EXPECT_EQ(saturating_trunc_to_int(-2.5), -2.0);
  EXPECT_EQ(saturating_trunc_to_int(1e300), 2147483647.0);
  EXPECT_EQ(saturating_trunc_to_int(-1e300), -2147483648.0);
  EXPECT_EQ(saturating_trunc_to_int(std::nan("")), 0.0);
}

TEST(TestVectorId, PureFunctionOfFields) {
  EXPECT_EQ(TestVector(1.1, 53).id(), TestVector(1.1, 53).id());
  EXPECT_NE(TestVector(1.1, 53).id(), TestVector(1.1, 68).id());
  EXPECT_NE(TestVector(1.1, 53, {1}).id(), TestVector(1.1, 53).id());
  EXPECT_NE(TestVector(0.0, 1).id(), TestVector(-0.0, 1).id());
}

TEST(OperandStream, Deterministic) {
  const OperandDomain d;
  EXPECT_EQ(gen_operand_stream(7, 5, d), gen_operand_stream(7, 5, d));
  EXPECT_NE(gen_operand_stream(7, 5, d), gen_operand_stream(8, 5, d));
  EXPECT_EQ(gen_operand_stream(7, 1, d).size(), 1u);
}

TEST(OperandStream, RespectsDomain) {
  OperandDomain d;
  d.payload_bytes = 4;
  for (const TestVector& v : gen_operand_stream(11, 5000, d)) {
    EXPECT_GE(v.base(), 1.0);
    EXPECT_LE(v.base(), 2.0);
    EXPECT_GE(v.exponent(), -128.0);
    EXPECT_LE(v.exponent(), 128.0);
    EXPECT_EQ(v.exponent(), std::trunc(v.exponent()));
    EXPECT_EQ(v.payload().size(), 4u);
  }
}

TEST(OperandStream, RejectsInvalidInput) {
  OperandDomain d;
  EXPECT_THROW(gen_operand_stream(1, 0, d), KernelInputError);
  d.base_min = 3.0;
  EXPECT_THROW(gen_operand_stream(1, 5, d), KernelInputError);
  d = OperandDomain{};
  d.base_min = 0.0;
  EXPECT_THROW(gen_operand_stream(1, 5, d), KernelInputError);
  d = OperandDomain{};
  d.exponent_min = 0.5;
  d.exponent_max = 0.7;
  EXPECT_THROW(gen_operand_stream(1, 5, d), KernelInputError);
}

TEST(Hashing, SplitMixKnownSequence) {
  // Reference outputs of splitmix64 seeded with 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(Hashing, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a64(std::span<const std::uint8_t>{}), 0xcbf29ce484222325ULL);
  const std::uint8_t a[] = {'a'};
  EXPECT_EQ(fnv1a64(a), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace sdc
