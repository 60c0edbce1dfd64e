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

#include "sdc/faultsim/fault_spec.h"
#include "sdc/faultsim/faulty_backend.h"
#include "sdc/faultsim/spec_parser.h"
#include "sdc/kernels/hashing.h"
#include "sdc/kernels/kernels.h"

namespace sdc {
namespace {

std::filesystem::path bundled(const std::string& name) {
  return std::filesystem::path(SDC_TEST_DATA_DIR) / "specs" / name;
}

std::vector<FaultSpec> core59_specs() {
  return load_fault_specs_file(bundled("core59.spec"));
}

PrimOp exp2_op(double operand, std::uint32_t core) {
  PrimOp op;
  op.kind = PrimKind::kExp2;
  op.operands = {operand};
  op.core = CoreId{"host", core};
  return op;
}

FaultSpec simple_spec(DefectClass c) {
  FaultSpec spec;
  spec.id = "s";
  spec.defect_class = c;
  spec.trigger.kind = PrimKind::kExp2;
  spec.trigger.broad = true;
  spec.transform = CorruptionTransform::set_constant(0.0);
  return spec;
}

TEST(BundledSpecs, Core59MatchesPlatformChain) {
  const auto specs = core59_specs();
  ASSERT_EQ(specs.size(), 1u);
  const FaultSpec& s = specs[0];
  EXPECT_EQ(s.defect_class, DefectClass::kDeviceError);
  EXPECT_EQ(s.scope.core, std::optional<std::uint32_t>(59));
  EXPECT_EQ(s.trigger.kind, PrimKind::kExp2);
  EXPECT_EQ(s.transform, CorruptionTransform::set_constant(0.0));
  ASSERT_EQ(s.trigger.alternatives.size(), 2u);
  const double l = std::log2(1.1);
  EXPECT_EQ(s.trigger.alternatives[0][0], OperandMatcher::exact(53.0 * l));
  EXPECT_EQ(s.trigger.alternatives[1][0], OperandMatcher::exact(68.0 * l));
}

TEST(BundledSpecs, ErrorsTableReproducesCatalogue) {
  ReferenceBackend ref;
  auto faulty = inject(ref, load_fault_specs_file(bundled("errors_table.spec")));
  const CoreId core{"host", 59};
  EXPECT_EQ(int_pow_trunc(1.1, 3, *faulty, core).integer(), 0);
  EXPECT_EQ(int_pow_trunc(1.1, 107, *faulty, core).integer(), 32809);
  EXPECT_EQ(int_pow_trunc(1.1, -3, *faulty, core).integer(), 1);
  EXPECT_EQ(int_pow_trunc(1.1, 52, *faulty, core).integer(), 142);
}

TEST(Inject, EmptyIsReference) {
  ReferenceBackend ref;
  auto faulty = inject(ref, {});
  for (const TestVector& v : gen_operand_stream(1, 500, {})) {
    const CoreId core{"h", 59};
    EXPECT_EQ(int_pow_trunc(v.base(), v.exponent(), *faulty, core).integer(),
              int_pow_trunc(v.base(), v.exponent(), ref, core).integer());
  }
}

TEST(Inject, ScopeMissAndHit) {
  ReferenceBackend ref;
  auto faulty = inject(ref, core59_specs());
  EXPECT_EQ(int_pow_trunc(1.1, 53, *faulty, {"h", 12}).integer(), 156);
  EXPECT_EQ(int_pow_trunc(1.1, 53, *faulty, {"h", 59}).integer(), 0);
  EXPECT_EQ(int_pow_trunc(1.1, 68, *faulty, {"h", 59}).integer(), 0);
  EXPECT_EQ(int_pow_trunc(1.1, 78, *faulty, {"h", 59}).integer(), 1692);
}

TEST(Inject, RejectsDuplicateIds) {
  ReferenceBackend ref;
  auto specs = core59_specs();
  specs.push_back(specs[0]);
  EXPECT_THROW(inject(ref, specs), FaultSpecError);
}

TEST(Inject, SpecsComposeInOrder) {
  ReferenceBackend ref;
  FaultSpec a = simple_spec(DefectClass::kDeviceError);
  a.id = "a";
  a.transform = CorruptionTransform::set_constant(4.0);
  FaultSpec b = a;
  b.id = "b";
  b.transform = CorruptionTransform::bitflip(63);
  auto faulty = inject(ref, {a, b});
  EXPECT_EQ(pow_via_log2(1.1, 2, *faulty, {"h", 0}).real(), -4.0);
  auto reversed = inject(ref, {b, a});
  EXPECT_EQ(pow_via_log2(1.1, 2, *reversed, {"h", 0}).real(), 4.0);
}

TEST(Inject, ScopeContainmentExhaustive) {
  ReferenceBackend ref;
  auto faulty = inject(ref, core59_specs());
  OperandDomain d;
  d.payload_bytes = 8;
  const auto stream = gen_operand_stream(99, 10000, d);
  for (std::uint32_t c = 0; c < 16; ++c) {
    const CoreId core{"h", c};
    for (const TestVector& v : stream) {
      const KernelOutput x = evaluate_kernel(KernelKind::kPowChain, v, *faulty,
                                             core, {.record_trace = false});
      const KernelOutput y = evaluate_kernel(KernelKind::kPowChain, v, ref,
                                             core, {.record_trace = false});
      ASSERT_EQ(double_bits(x.real()), double_bits(y.real()));
    }
  }
}

TEST(Inject, SilentOnCorruption) {
  ReferenceBackend ref;
  auto faulty = inject(ref, core59_specs());
  const KernelOutput out = int_pow_trunc(1.1, 53, *faulty, {"h", 59});
  EXPECT_EQ(out.status, KernelStatus::kOk);
  EXPECT_EQ(out.integer(), 0);
}

TEST(TriggerEval, Examples) {
  const FaultSpec core59 = core59_specs()[0];
  const double operand = 53.0 * std::log2(1.1);
  EXPECT_TRUE(trigger_eval(core59, exp2_op(operand, 59), 0.0));
  EXPECT_FALSE(trigger_eval(core59, exp2_op(operand, 58), 0.0));
  EXPECT_FALSE(trigger_eval(core59, exp2_op(std::nextafter(operand, 99.0), 59),
                            0.0));

  FaultSpec early = simple_spec(DefectClass::kEarlyLife);
  early.onset.activation_hours = 336;
  EXPECT_FALSE(trigger_eval(early, exp2_op(1.0, 0), 100));
  EXPECT_TRUE(trigger_eval(early, exp2_op(1.0, 0), 400));
}

TEST(Corrupt, Examples) {
  EXPECT_EQ(corrupt(1.0, CorruptionTransform::bitflip(63)), -1.0);
  for (double x : {0.0, 1.5, -3e200, 156.25}) {
    EXPECT_EQ(corrupt(x, CorruptionTransform::set_constant(0.0)), 0.0);
  }
  EXPECT_EQ(corrupt(1.331, CorruptionTransform::exponent_flip(0)), 0.6655);
  EXPECT_THROW(corrupt(1.0, CorruptionTransform::bitflip(64)), FaultSpecError);
  EXPECT_THROW(corrupt(1.0, CorruptionTransform::exponent_flip(11)),
               FaultSpecError);
}

TEST(Corrupt, BitflipInvolution) {
  SplitMix64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t bits = rng.next();
    const auto t = CorruptionTransform::bitflip(
        static_cast<unsigned>(rng.next_below(64)));
    const double x = double_from_bits(bits);
    EXPECT_EQ(double_bits(corrupt(corrupt(x, t), t)), bits);
  }
}

TEST(Corrupt, SetConstantIdempotent) {
  const auto t = CorruptionTransform::set_constant(32809.0);
  EXPECT_EQ(corrupt(corrupt(7.0, t), t), corrupt(7.0, t));
}

TEST(Corrupt, LutOverrideOnlyOnLutOps) {
  const auto t = CorruptionTransform::lut_entry_override(12, 145.0);
  PrimOp lut;
  lut.kind = PrimKind::kLutSquare;
  lut.operands = {12.0};
  EXPECT_EQ(corrupt(144.0, t, &lut), 145.0);
  lut.operands = {13.0};
  EXPECT_EQ(corrupt(169.0, t, &lut), 169.0);
  PrimOp other = exp2_op(12.0, 0);
  EXPECT_EQ(corrupt(4096.0, t, &other), 4096.0);
}

TEST(Onset, Classes) {
  EXPECT_TRUE(onset_active(simple_spec(DefectClass::kDeviceError), 0));

  FaultSpec wear = simple_spec(DefectClass::kWearout);
  wear.onset.rated_life_hours = 43800;
  EXPECT_FALSE(onset_active(wear, 43799));
  EXPECT_TRUE(onset_active(wear, 43801));

  FaultSpec degr = simple_spec(DefectClass::kDegradation);
  degr.onset.ramp_hours = 1000;
  EXPECT_TRUE(onset_active(degr, 2000));
  EXPECT_FALSE(onset_active(degr, 0));
}

TEST(Onset, MonotoneForEarlyLifeAndWearout) {
  FaultSpec early = simple_spec(DefectClass::kEarlyLife);
  early.onset.activation_hours = 500;
  FaultSpec wear = simple_spec(DefectClass::kWearout);
  wear.onset.rated_life_hours = 800;
  for (const FaultSpec& s : {early, wear}) {
    bool was_active = false;
    for (double t = 0; t < 2000; t += 7.5) {
      const bool active = onset_active(s, t);
      EXPECT_FALSE(was_active && !active) << t;
      was_active = active;
    }
    EXPECT_TRUE(was_active);
  }
}

TEST(Onset, DegradationDeterministicAndRamped) {
  FaultSpec degr = simple_spec(DefectClass::kDegradation);
  degr.onset.ramp_hours = 1000;
  int active = 0;
  for (std::uint64_t epoch = 0; epoch < 1000; ++epoch) {
    const bool a = onset_active(degr, 500, epoch);
    EXPECT_EQ(a, onset_active(degr, 500, epoch));
    active += a;
  }
  EXPECT_GT(active, 400);
  EXPECT_LT(active, 600);
}

TEST(Parser, EmptyDocument) {
  EXPECT_TRUE(load_fault_specs("").empty());
  EXPECT_TRUE(load_fault_specs("# only a comment\n\n").empty());
}

TEST(Parser, FormatRoundTrip) {
  FaultSpec a = simple_spec(DefectClass::kDegradation);
  a.id = "ramp";
  a.scope.host_pattern = "host-0*";
  a.onset.ramp_hours = 250;
  a.trigger.broad = false;
  a.trigger.kind = PrimKind::kMul;
  a.trigger.alternatives = {
      {OperandMatcher::interval(1.0, 2.0), OperandMatcher::any()},
      {OperandMatcher::exact(0.1)}};
  a.transform = CorruptionTransform::bitflip(7);
  FaultSpec b = simple_spec(DefectClass::kWearout);
  b.id = "lut";
  b.onset.rated_life_hours = 43800;
  b.scope.core = 3;
  b.trigger.kind = PrimKind::kLutSquare;
  b.transform = CorruptionTransform::lut_entry_override(12, 145);
  const std::vector<FaultSpec> specs{a, b};
  EXPECT_EQ(load_fault_specs(format_fault_specs(specs)), specs);
  const auto bundled_specs =
      load_fault_specs_file(bundled("errors_table.spec"));
  EXPECT_EQ(load_fault_specs(format_fault_specs(bundled_specs)), bundled_specs);
}

void expect_parse_error(const std::string& text, int line,
                        const std::string& field) {
  try {
    load_fault_specs(text);
    FAIL() << "expected a parse error";
  } catch (const FaultSpecParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

TEST(Parser, ErrorsNameLineAndField) {
  const std::string head =
      "[spec x]\n"
      "class = device_error\n"
      "core = *\n"
      "op_kind = EXP2\n";
  expect_parse_error(head + "operands = 0x12\ntransform = set_constant\n"
                            "transform_params = 0\n",
                     5, "operands");
  expect_parse_error(head + "operands = *\ntransform = bitflip\n"
                            "transform_params = 64\n",
                     7, "transform_params");
  expect_parse_error(head + "colour = red\n", 5, "colour");
  expect_parse_error("[spec x]\nclass = sometimes\n", 2, "class");
  expect_parse_error("class = device_error\n", 1, "class");
}

TEST(Parser, BroadRequiredForEmptyOperands) {
  const std::string text =
      "[spec x]\nclass = device_error\ncore = *\nop_kind = EXP2\n"
      "transform = set_constant\ntransform_params = 0\n";
  EXPECT_THROW(load_fault_specs(text), FaultSpecError);
  EXPECT_EQ(load_fault_specs(text + "broad = true\n").size(), 1u);
}

TEST(Parser, AllOrNothing) {
  const std::string good =
      "[spec a]\nclass = device_error\ncore = *\nop_kind = EXP2\nbroad = true\n"
      "transform = set_constant\ntransform_params = 0\n";
  EXPECT_THROW(load_fault_specs(good + "[spec b]\nclass = nope\n"),
               FaultSpecError);
  EXPECT_THROW(load_fault_specs(good + good), FaultSpecError);
}

}  // namespace
}  // namespace sdc
