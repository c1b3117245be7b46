// include/csrnnt/pipeline/recognize.h

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

#ifndef CSRNNT_PIPELINE_RECOGNIZE_H_
#define CSRNNT_PIPELINE_RECOGNIZE_H_

#include <functional>
#include <string>
#include <vector>

#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/lm/language-model.h"
#include "csrnnt/lm/rescore.h"
#include "csrnnt/pipeline/dataset.h"
#include "csrnnt/pipeline/run-config.h"
#include "csrnnt/pipeline/trainer.h"
#include "csrnnt/text/corpus.h"

namespace csrnnt {

// Decodes every utterance and returns up to `nbest` word-level hypotheses
// per utterance (language tags kept), grouped by utterance in input order.
std::vector<NbestEntry> DecodeUtterances(const TransducerModel<double> &model,
                                         const Vocabulary &vocab,
                                         const std::vector<SynthUtterance> &utts,
                                         const DecodeConfig &config, int nbest,
                                         bool parallel = true);

// First listed hypothesis of each utterance, in order of first appearance.
// Tags are removed when strip_tags is set.
Corpus OneBest(const std::vector<NbestEntry> &nbest, bool strip_tags);

// Reranks each utterance's list with `lm` and returns the new first entry
// per utterance (tags kept).
Corpus RescoreCorpus(const std::vector<NbestEntry> &nbest, const LanguageModel &lm,
                     const RescoreConfig &config);

// Picks the (lm_weight, length_penalty) grid point with the lowest MER of
// the rescored, tag-stripped 1-best against `refs`. Other fields come from
// `base`. Also reports the winning MER when `best_mer` is non-null.
RescoreConfig TuneRescore(const std::vector<NbestEntry> &nbest, const Corpus &refs,
                          const LanguageModel &lm, const RescoreConfig &base,
                          const RescoreTuning &grid, double *best_mer = nullptr);

// The utterances SplitValidation holds out of training, in order.
std::vector<SynthUtterance> ValidationUtterances(const std::vector<SynthUtterance> &train,
                                                 double fraction);

struct SynthData {
  std::vector<SynthUtterance> train;
  std::vector<SynthUtterance> test;
};

// Training set "uttNNNNN" and an independent test set "testNNNNN".
SynthData GenerateData(const RunConfig &config);

struct TrainedSystem {
  TextModels text;
  TransducerModel<float> model;
  std::vector<EpochLog> log;
};

// Builds the text models, trains for config.train.epochs and returns the
// best-validation parameters. Untagged training disables the language
// vectors (lid_dim = 0) since there are no tags for them to mark.
TrainedSystem TrainSystem(const RunConfig &config,
                          const std::vector<SynthUtterance> &train,
                          const std::function<void(const EpochLog &)> &on_epoch = {});

// Model dimensions actually used for a run.
TransducerConfig EffectiveModelConfig(const RunConfig &config);

}  // namespace csrnnt

#endif  // CSRNNT_PIPELINE_RECOGNIZE_H_
