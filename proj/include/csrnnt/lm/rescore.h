// include/csrnnt/lm/rescore.h

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

#ifndef CSRNNT_LM_RESCORE_H_
#define CSRNNT_LM_RESCORE_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "csrnnt/lm/language-model.h"

namespace csrnnt {

struct RescoreConfig {
  double lm_weight = 0.3;
  double length_penalty = 0.0;
  int nbest = 35;
};

struct NbestEntry {
  std::string utt_id;
  int rank = 0;             // 1-based rank from the decoder
  double log_prob = 0;      // transducer score
  std::vector<std::string> tokens;
  double score = 0;         // combined score after rescoring
};

// score = log_prob + lm_weight * lm(tokens) + length_penalty * |tokens|.
// Only the first config.nbest entries are considered. The result is sorted
// by score, descending; ties keep the original order.
std::vector<NbestEntry> RescoreNbest(std::vector<NbestEntry> nbest,
                                     const LanguageModel &lm,
                                     const RescoreConfig &config);

// utt_id<TAB>rank<TAB>log_prob<TAB>tokens, one hypothesis per line.
void WriteNbest(const std::vector<NbestEntry> &entries, std::ostream &os);
std::vector<NbestEntry> ReadNbest(std::istream &is);

}  // namespace csrnnt

#endif  // CSRNNT_LM_RESCORE_H_
