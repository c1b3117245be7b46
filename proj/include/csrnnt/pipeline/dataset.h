// include/csrnnt/pipeline/dataset.h

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

#ifndef CSRNNT_PIPELINE_DATASET_H_
#define CSRNNT_PIPELINE_DATASET_H_

#include <string>
#include <vector>

#include "csrnnt/nn/tensor.h"
#include "csrnnt/synth/synth.h"
#include "csrnnt/text/bpe.h"
#include "csrnnt/text/corpus.h"
#include "csrnnt/text/vocabulary.h"

namespace csrnnt {

struct Example {
  std::string id;
  Tensor2<float> features;
  std::vector<int> target;
};

struct TextModels {
  BpeModel bpe;
  Vocabulary vocab;
};

// BPE over the English words of `train`, then the vocabulary over its
// transcripts (tagged first when `tagged`).
TextModels BuildTextModels(const Corpus &train, int bpe_merges, bool tagged);

// Transcript of every utterance, optionally with language tags inserted.
Corpus TranscriptsOf(const std::vector<SynthUtterance> &utts, bool tagged);

std::vector<Example> MakeExamples(const std::vector<SynthUtterance> &utts,
                                  const TextModels &text, bool tagged);

// The last round(fraction * n) examples become the validation set.
void SplitValidation(std::vector<Example> all, double fraction,
                     std::vector<Example> *train, std::vector<Example> *valid);

// One copy of the set per rate, rate-major; copies at rate != 1 get the
// suffix "-sp<rate>". An empty rate list returns the input.
std::vector<Example> SpeedPerturb(const std::vector<Example> &examples,
                                  const std::vector<double> &rates);

}  // namespace csrnnt

#endif  // CSRNNT_PIPELINE_DATASET_H_
