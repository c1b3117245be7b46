// include/csrnnt/lm/language-model.h

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

#ifndef CSRNNT_LM_LANGUAGE_MODEL_H_
#define CSRNNT_LM_LANGUAGE_MODEL_H_

#include <string>
#include <vector>

namespace csrnnt {

// Sentence scorer used for N-best rescoring.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  // Natural-log probability of the sentence including its end marker.
  virtual double LogProb(const std::vector<std::string> &tokens) const = 0;
};

}  // namespace csrnnt

#endif  // CSRNNT_LM_LANGUAGE_MODEL_H_
