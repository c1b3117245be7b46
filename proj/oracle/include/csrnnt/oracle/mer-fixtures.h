// oracle/include/csrnnt/oracle/mer-fixtures.h

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

#ifndef CSRNNT_ORACLE_MER_FIXTURES_H_
#define CSRNNT_ORACLE_MER_FIXTURES_H_

// Hand-scored reference/hypothesis pairs. Counts are per utterance; the
// language columns are the errors charged to each language (substitutions
// and deletions by reference unit, insertions by hypothesis unit).

#include <cstdint>
#include <vector>

namespace csrnnt::fixtures {

struct MerFixture {
  const char *name;
  const char *ref;
  const char *hyp;
  int64_t s, i, d;
  int64_t ref_units;
  int64_t man_units, man_errors;
  int64_t eng_units, eng_errors;
};

inline const std::vector<MerFixture> &MerFixtures() {
  static const std::vector<MerFixture> kFixtures{
      {"identical mixed", "我 去 school", "我 去 school", 0, 0, 0, 3, 2, 0, 1, 0},
      {"dropped mandarin char", "我 去 school", "我 school", 0, 0, 1, 3, 2, 1, 1, 0},
      {"empty reference", "", "go home", 0, 2, 0, 0, 0, 0, 0, 2},
      {"empty hypothesis", "我们 go home", "", 0, 0, 4, 4, 2, 2, 2, 2},
      {"language ids stripped", "我 喜欢 singing", "<chn> 我 喜欢 <eng> singing", 0, 0, 0, 4,
       3, 0, 1, 0},
      {"english word substituted", "我 喜欢 singing", "我 喜欢 dancing", 1, 0, 0, 4, 3, 0, 1,
       1},
      {"multi-character token split", "学校", "学生", 1, 0, 0, 2, 2, 1, 0, 0},
      {"repeated english insertion", "go home", "go go home", 0, 1, 0, 2, 0, 0, 2, 1},
      {"cross-language substitution", "我 go", "我 去", 1, 0, 0, 2, 1, 0, 1, 1},
      {"neutral token substituted", "123 我", "456 我", 1, 0, 0, 2, 1, 0, 0, 0},
      {"all english deletion", "a b c", "a c", 0, 0, 1, 3, 0, 0, 3, 1},
      {"substitution insertion deletion", "我们 去 school today", "你们 school today now", 1,
       1, 1, 5, 3, 2, 2, 1},
      {"more errors than reference units", "a", "b c d", 1, 2, 0, 1, 0, 0, 1, 3},
      {"only language ids", "我", "<chn>", 0, 0, 1, 1, 1, 1, 0, 0},
  };
  return kFixtures;
}

}  // namespace csrnnt::fixtures

#endif  // CSRNNT_ORACLE_MER_FIXTURES_H_
