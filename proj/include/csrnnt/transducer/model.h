// include/csrnnt/transducer/model.h

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

#ifndef CSRNNT_TRANSDUCER_MODEL_H_
#define CSRNNT_TRANSDUCER_MODEL_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "csrnnt/nn/lstm.h"
#include "csrnnt/nn/tensor.h"
#include "csrnnt/text/language.h"

namespace csrnnt {

struct TransducerConfig {
  int input_dim = 16;
  int encoder_layers = 2;
  int encoder_dim = 64;
  int prediction_layers = 1;
  int prediction_dim = 64;
  int joint_dim = 64;
  int embedding_dim = 64;
  // Width of the fixed language vector appended to each embedding; 0
  // disables the constraint.
  int lid_dim = 8;
  double dropout = 0.2;

  static TransducerConfig Desk() { return {}; }
  // 80-dim filterbanks, 4x512 encoder, 2x512 prediction net, 512 joint.
  static TransducerConfig SeamePaper() {
    return {80, 4, 512, 2, 512, 512, 512, 8, 0.2};
  }

  bool operator==(const TransducerConfig &) const = default;
};

// All trainable tensors. The language vectors are constants and live in the
// model, not here.
template <typename Real>
struct TransducerParams {
  std::vector<LstmParams<Real>> encoder;
  std::vector<LstmParams<Real>> prediction;
  Tensor2<Real> embedding;    // (vocab + 1) x embedding_dim; last row = start
  Tensor2<Real> joint_enc;    // encoder_dim x joint_dim
  Tensor2<Real> joint_pred;   // prediction_dim x joint_dim
  Tensor2<Real> joint_bias;   // 1 x joint_dim
  Tensor2<Real> output;       // joint_dim x vocab
  Tensor2<Real> output_bias;  // 1 x vocab

  std::vector<Tensor2<Real> *> Tensors();
  std::vector<const Tensor2<Real> *> Tensors() const;
  // Stable names in the same order as Tensors().
  std::vector<std::string> TensorNames() const;

  void SetZero();
  void Add(const TransducerParams &other);
  void Scale(Real factor);
};

template <typename Real>
TransducerParams<Real> ZeroParams(const TransducerConfig &config,
                                  int vocab_size);

// Prediction-network state: one LSTM state per layer.
template <typename Real>
using PredictionState = std::vector<LstmState<Real>>;

// RNN transducer with language-constrained embeddings. The prediction
// network reads [embedding(y) ; v_lang(y)] where v_lang is +1s for English
// symbols (and <eng>), -1s for Mandarin symbols (and <chn>) and zeros for
// blank and the start symbol.
template <typename Real>
class TransducerModel {
 public:
  TransducerModel(const TransducerConfig &config,
                  std::vector<LanguageAttr> symbol_languages, uint64_t seed);
  TransducerModel(const TransducerConfig &config,
                  std::vector<LanguageAttr> symbol_languages,
                  TransducerParams<Real> params);

  const TransducerConfig &config() const { return config_; }
  int vocab_size() const { return static_cast<int>(languages_.size()); }
  int start_id() const { return vocab_size(); }
  const std::vector<LanguageAttr> &languages() const { return languages_; }

  TransducerParams<Real> &params() { return params_; }
  const TransducerParams<Real> &params() const { return params_; }

  RowVec<Real> LanguageVector(LanguageAttr lang) const;

  // Embedding row concatenated with the language vector of the symbol.
  // `token_id == start_id()` selects the start row. IndexError otherwise if
  // out of range.
  RowVec<Real> Embed(int token_id) const;

  // Inference-mode encoder (no dropout): T x encoder_dim.
  Tensor2<Real> Encode(const Tensor2<Real> &features) const;

  PredictionState<Real> InitialPredictionState() const;
  // Feeds one symbol into the prediction network; returns its output and
  // updates `state`.
  RowVec<Real> PredictionStep(int token_id, PredictionState<Real> *state) const;

  // z = W2 * tanh(W1 * [h_t ; p_u] + b1) + b2
  RowVec<Real> JointLogits(const RowVec<Real> &enc_state,
                           const RowVec<Real> &pred_state) const;

  template <typename Other>
  TransducerModel<Other> Cast() const;

 private:
  TransducerConfig config_;
  std::vector<LanguageAttr> languages_;
  TransducerParams<Real> params_;
};

// Loss of one utterance and (optionally) the gradient of every parameter.
// `target` must be blank-free; `rng` drives dropout when `training` is set.
// Gradients are accumulated into *grad, which must be shaped like the
// model parameters (see ZeroParams).
template <typename Real>
double ComputeLossAndGradient(const TransducerModel<Real> &model,
                              const Tensor2<Real> &features,
                              std::span<const int> target, bool training,
                              std::mt19937_64 &rng,
                              TransducerParams<Real> *grad);

// Same as above but returns the gradient of (loss) without accumulating.
template <typename Real>
struct LossAndGradient {
  double loss = 0;
  TransducerParams<Real> grad;
};

template <typename Real>
LossAndGradient<Real> ModelForward(const TransducerModel<Real> &model,
                                   const Tensor2<Real> &features,
                                   std::span<const int> target, bool training,
                                   std::mt19937_64 &rng);

}  // namespace csrnnt

#endif  // CSRNNT_TRANSDUCER_MODEL_H_
