// include/csrnnt/pipeline/trainer.h

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

#ifndef CSRNNT_PIPELINE_TRAINER_H_
#define CSRNNT_PIPELINE_TRAINER_H_

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "csrnnt/nn/adam.h"
#include "csrnnt/pipeline/dataset.h"
#include "csrnnt/pipeline/run-config.h"
#include "csrnnt/transducer/model.h"

namespace csrnnt {

struct TrainState {
  TransducerModel<float> model;
  AdamState<float> adam;
  int epoch = 0;  // completed epochs
  double best_valid = std::numeric_limits<double>::infinity();
  int bad_epochs = 0;
  TransducerParams<float> best_params;
};

TrainState InitTrainState(const TransducerConfig &model, const Vocabulary &vocab,
                          const TrainConfig &train);

struct EpochLog {
  int epoch = 0;  // 1-based
  double train_loss = 0;  // mean per utterance
  double valid_loss = 0;
  double learning_rate = 0;  // used during this epoch
  bool improved = false;
  double seconds = 0;
};

// Sum of losses over examples[indices] and, when grad is non-null, the sum
// of their gradients. Each utterance gets its own dropout generator seeded
// from (seed, epoch, index). The parallel version computes per-utterance
// gradients concurrently and adds them in index order, so it matches the
// serial one bit for bit.
double BatchLossAndGradient(const TransducerModel<float> &model,
                            const std::vector<Example> &examples,
                            std::span<const size_t> indices, bool training,
                            uint64_t seed, int epoch, TransducerParams<float> *grad);
double BatchLossAndGradientSerial(const TransducerModel<float> &model,
                                  const std::vector<Example> &examples,
                                  std::span<const size_t> indices, bool training,
                                  uint64_t seed, int epoch,
                                  TransducerParams<float> *grad);

// Global L2 norm of all gradient tensors.
double GradientNorm(const TransducerParams<float> &grad);

// Mean loss without dropout.
double MeanLoss(const TransducerModel<float> &model, const std::vector<Example> &examples,
                bool parallel);

// Runs epochs state->epoch + 1 .. config.epochs of minibatch ADAM. After
// each epoch the validation loss (training loss when `valid` is empty)
// decides whether best_params is replaced; `patience` stalled epochs
// multiply the learning rate by lr_decay. Throws NumericalError naming the
// epoch, batch and utterance ids on a non-finite loss or gradient.
void Train(TrainState *state, const std::vector<Example> &train,
           const std::vector<Example> &valid, const TrainConfig &config,
           const std::function<void(const EpochLog &, const TrainState &)> &on_epoch);

// Writes the resumable state (current parameters, optimizer moments and
// epoch counters) to `last_path` and the best parameters to `best_path`.
// Both are ordinary transducer checkpoints; `extra` is stored in each.
void SaveTrainState(const std::string &last_path, const std::string &best_path,
                    const TrainState &state, uint64_t vocab_hash,
                    const nlohmann::json &extra);

// Inverse of SaveTrainState. Throws DomainError when either file was
// written for a different vocabulary than `vocab_hash` or lacks the
// optimizer state.
TrainState LoadTrainState(const std::string &last_path, const std::string &best_path,
                          uint64_t vocab_hash);

}  // namespace csrnnt

#endif  // CSRNNT_PIPELINE_TRAINER_H_
