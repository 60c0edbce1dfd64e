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

#include "sdc/oracle/highprec.h"

#include <mpfr.h>

#include <cmath>

namespace sdc::highprec {
namespace {

class MpFloat {
 public:
  MpFloat() { mpfr_init2(value_, kWorkingPrecisionBits); }
  ~MpFloat() { mpfr_clear(value_); }
  MpFloat(const MpFloat&) = delete;
  MpFloat& operator=(const MpFloat&) = delete;

  mpfr_ptr get() { return value_; }

  // Rounds the working value to nearest binary64.
  double to_double() { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

}  // namespace

double chain_value(double x, double y) {
  if (!(x > 0.0) || !std::isfinite(y)) {
    throw DomainError("power chain requires x > 0 and finite y");
  }
  MpFloat work;

  mpfr_set_d(work.get(), x, MPFR_RNDN);
  mpfr_log2(work.get(), work.get(), MPFR_RNDN);
  const double log = work.to_double();

  MpFloat factor;
  mpfr_set_d(work.get(), log, MPFR_RNDN);
  mpfr_set_d(factor.get(), y, MPFR_RNDN);
  mpfr_mul(work.get(), work.get(), factor.get(), MPFR_RNDN);
  const double scaled = work.to_double();

  mpfr_set_d(work.get(), scaled, MPFR_RNDN);
  mpfr_exp2(work.get(), work.get(), MPFR_RNDN);
  return work.to_double();
}

std::int64_t chain_eval(double x, double y) {
  const double value = chain_value(x, y);
  if (std::isnan(value)) return 0;
  if (value >= 2147483647.0) return 2147483647;
  if (value <= -2147483648.0) return -2147483648LL;
  return static_cast<std::int64_t>(value);
}

}  // namespace sdc::highprec
