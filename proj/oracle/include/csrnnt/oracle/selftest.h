// oracle/include/csrnnt/oracle/selftest.h

// Copyright 2026  csrnnt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSRNNT_ORACLE_SELFTEST_H_
#define CSRNNT_ORACLE_SELFTEST_H_

// Oracle suites that finish in seconds. Shared by `csrnnt selftest` and the
// acceptance run.

#include <string>
#include <vector>

namespace csrnnt::oracle {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// 200 random lattices (T <= 4, U <= 3, |V| <= 5): loss versus enumeration.
CheckResult CheckLossOracle();
// Node and full-model gradients versus central differences.
CheckResult CheckGradients();
// Saturating beam versus exhaustive search, 50 seeds.
CheckResult CheckDecoderOracle();
// Hand-scored MER fixtures.
CheckResult CheckMerFixtures();
// Relative frequencies with discount 0; normalization with discount 0.75.
CheckResult CheckNgramSanity();

// All of the above, in that order, timed.
std::vector<CheckResult> RunSelfTests();

}  // namespace csrnnt::oracle

#endif  // CSRNNT_ORACLE_SELFTEST_H_
