// include/csrnnt/lm/rnnlm.h

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

#ifndef CSRNNT_LM_RNNLM_H_
#define CSRNNT_LM_RNNLM_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "csrnnt/lm/language-model.h"
#include "csrnnt/nn/lstm.h"

namespace csrnnt {

struct RnnLmConfig {
  int embedding_dim = 32;
  int hidden_dim = 64;
  int epochs = 5;
  double learning_rate = 0.01;
  uint64_t seed = 42;
};

// Single-layer LSTM language model over words. Symbol 0 is the sentence
// boundary (<s> as input, </s> as output), symbol 1 is <unk>, the rest are
// the training words in sorted order.
class RnnLm : public LanguageModel {
 public:
  struct Params {
    Tensor2<double> embedding;    // vocab x embedding_dim
    LstmParams<double> lstm;
    Tensor2<double> output;       // hidden_dim x vocab
    Tensor2<double> output_bias;  // 1 x vocab

    std::vector<Tensor2<double> *> Tensors();
    std::vector<const Tensor2<double> *> Tensors() const;
  };

  // All-zero parameters: a uniform distribution over the symbols.
  RnnLm(const std::vector<std::string> &words, int embedding_dim,
        int hidden_dim);

  int vocab_size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string> &symbols() const { return symbols_; }
  int IdOf(const std::string &word) const;  // <unk> for unknown words
  Params &params() { return params_; }
  const Params &params() const { return params_; }

  // Sum of log-softmax next-symbol probabilities, ending with </s>.
  double LogProb(const std::vector<std::string> &tokens) const override;

  // Negative log-likelihood of one sentence and its gradient.
  double LossAndGradient(const std::vector<std::string> &tokens,
                         Params *grad) const;

  void Save(const std::string &path) const;  // "CSLM" tensor container
  static RnnLm Load(const std::string &path);

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
  Params params_;
};

// Builds the symbol table from `sentences`, initializes uniformly at random
// and runs per-sentence ADAM for config.epochs passes.
RnnLm TrainRnnLm(const std::vector<std::vector<std::string>> &sentences,
                 const RnnLmConfig &config);

}  // namespace csrnnt

#endif  // CSRNNT_LM_RNNLM_H_
