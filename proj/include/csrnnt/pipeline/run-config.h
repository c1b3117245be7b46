// include/csrnnt/pipeline/run-config.h

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

#ifndef CSRNNT_PIPELINE_RUN_CONFIG_H_
#define CSRNNT_PIPELINE_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/lm/ngram.h"
#include "csrnnt/lm/rescore.h"
#include "csrnnt/lm/rnnlm.h"
#include "csrnnt/synth/synth.h"
#include "csrnnt/transducer/model.h"

namespace csrnnt {

struct TrainConfig {
  int epochs = 15;
  int batch_size = 8;
  double learning_rate = 0.001;
  uint64_t seed = 42;
  double clip_norm = 5.0;           // global gradient norm; 0 disables
  double validation_fraction = 0.05;
  double lr_decay = 0.5;            // factor applied when validation stalls
  int patience = 1;                 // epochs without improvement before decay
  int bpe_merges = 200;
  std::vector<double> speed_rates;  // empty: no augmentation
  bool tagged = true;               // train on language-ID-tagged targets
  bool parallel = true;             // OpenMP batch gradients
};

// Grid search over rescoring weights on the held-out validation split.
// Ties go to the earlier grid point (weights outer, penalties inner).
struct RescoreTuning {
  bool enabled = false;
  std::vector<double> lm_weights{0.05, 0.1, 0.2, 0.3, 0.5};
  std::vector<double> length_penalties{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
};

struct RunConfig {
  std::string preset = "desk";
  TransducerConfig model;
  DecodeConfig decode;
  int nbest = 8;  // hypotheses written per utterance
  SynthConfig synth;
  int num_test = 200;
  TrainConfig train;
  NgramConfig ngram;
  RnnLmConfig rnnlm;
  RescoreConfig rescore;
  RescoreTuning rescore_tuning;

  void Validate() const;
};

// "desk" (small model, beam 8) or "seame-paper" (4x512 encoder, beam 35,
// 80-dim features). DomainError on any other name.
RunConfig PresetConfig(const std::string &name);

nlohmann::json RunConfigToJson(const RunConfig &config);

// Reads every key of `j` over the preset named by j["preset"] (or "desk").
// Unknown keys are a DomainError so typos do not pass silently.
RunConfig RunConfigFromJson(const nlohmann::json &j);

// Applies "a.b.c=value" to a config tree. The value is parsed as JSON when
// possible and taken as a string otherwise.
void ApplyOverride(nlohmann::json *tree, const std::string &assignment);

// Preset, then the optional JSON file, then each override in order.
RunConfig ResolveRunConfig(const std::string &preset, const std::string &config_path,
                           const std::vector<std::string> &overrides);

}  // namespace csrnnt

#endif  // CSRNNT_PIPELINE_RUN_CONFIG_H_
