// src/transducer/model.cc

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

#include "csrnnt/transducer/model.h"

#include <cmath>

#include "csrnnt/base/errors.h"
#include "csrnnt/nn/ops.h"
#include "csrnnt/transducer/joint.h"
#include "csrnnt/transducer/rnnt-loss.h"

namespace csrnnt {

namespace {

constexpr int kBlankId = 0;

template <typename Real>
void FillUniform(Tensor2<Real> *m, double bound, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < m->size(); ++i) {
    m->data()[i] = static_cast<Real>(dist(rng));
  }
}

// Forward state of a stack of LSTM layers with inter-layer dropout.
template <typename Real>
struct StackForward {
  std::vector<LstmCache<Real>> caches;
  std::vector<Tensor2<Real>> masks;
  Tensor2<Real> output;
};

template <typename Real>
StackForward<Real> RunStack(const std::vector<LstmParams<Real>> &layers,
                            const Tensor2<Real> &input, double dropout,
                            bool training, std::mt19937_64 &rng) {
  StackForward<Real> s;
  Tensor2<Real> x = input;
  for (const auto &layer : layers) {
    auto r = LstmForward(layer, x, LstmState<Real>::Zeros(layer.hidden_dim));
    Tensor2<Real> mask;
    x = DropoutApply(r.outputs, dropout, rng, training, &mask);
    s.caches.push_back(std::move(r.cache));
    s.masks.push_back(std::move(mask));
  }
  s.output = std::move(x);
  return s;
}

// Backprop through the stack; accumulates parameter gradients and returns
// the gradient with respect to the stack input.
template <typename Real>
Tensor2<Real> BackwardStack(const std::vector<LstmParams<Real>> &layers,
                            const StackForward<Real> &s,
                            Tensor2<Real> grad_output,
                            std::vector<LstmParams<Real>> *grads) {
  for (size_t l = layers.size(); l-- > 0;) {
    grad_output.array() *= s.masks[l].array();
    const int hidden = layers[l].hidden_dim;
    auto g = LstmBackward(layers[l], s.caches[l], grad_output,
                          LstmState<Real>::Zeros(hidden));
    (*grads)[l].weight += g.params.weight;
    (*grads)[l].bias += g.params.bias;
    grad_output = std::move(g.inputs);
  }
  return grad_output;
}

}  // namespace

template <typename Real>
std::vector<Tensor2<Real> *> TransducerParams<Real>::Tensors() {
  std::vector<Tensor2<Real> *> out;
  for (auto &l : encoder) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  for (auto &l : prediction) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  for (auto *m : {&embedding, &joint_enc, &joint_pred, &joint_bias, &output,
                  &output_bias}) {
    out.push_back(m);
  }
  return out;
}

template <typename Real>
std::vector<const Tensor2<Real> *> TransducerParams<Real>::Tensors() const {
  auto mut = const_cast<TransducerParams *>(this)->Tensors();
  return {mut.begin(), mut.end()};
}

template <typename Real>
std::vector<std::string> TransducerParams<Real>::TensorNames() const {
  std::vector<std::string> names;
  for (size_t l = 0; l < encoder.size(); ++l) {
    names.push_back("encoder." + std::to_string(l) + ".weight");
    names.push_back("encoder." + std::to_string(l) + ".bias");
  }
  for (size_t l = 0; l < prediction.size(); ++l) {
    names.push_back("prediction." + std::to_string(l) + ".weight");
    names.push_back("prediction." + std::to_string(l) + ".bias");
  }
  for (const char *n : {"embedding", "joint.enc", "joint.pred", "joint.bias",
                        "output.weight", "output.bias"}) {
    names.emplace_back(n);
  }
  return names;
}

template <typename Real>
void TransducerParams<Real>::SetZero() {
  for (auto *m : Tensors()) m->setZero();
}

template <typename Real>
void TransducerParams<Real>::Add(const TransducerParams &other) {
  auto mine = Tensors();
  auto theirs = other.Tensors();
  if (mine.size() != theirs.size()) {
    throw ShapeError("TransducerParams::Add: tensor count mismatch");
  }
  for (size_t k = 0; k < mine.size(); ++k) {
    CheckShape("TransducerParams::Add", *theirs[k], mine[k]->rows(),
               mine[k]->cols());
    *mine[k] += *theirs[k];
  }
}

template <typename Real>
void TransducerParams<Real>::Scale(Real factor) {
  for (auto *m : Tensors()) *m *= factor;
}

template <typename Real>
TransducerParams<Real> ZeroParams(const TransducerConfig &c, int vocab_size) {
  TransducerParams<Real> p;
  int in = c.input_dim;
  for (int l = 0; l < c.encoder_layers; ++l) {
    p.encoder.push_back(LstmParams<Real>::Zeros(in, c.encoder_dim));
    in = c.encoder_dim;
  }
  in = c.embedding_dim + c.lid_dim;
  for (int l = 0; l < c.prediction_layers; ++l) {
    p.prediction.push_back(LstmParams<Real>::Zeros(in, c.prediction_dim));
    in = c.prediction_dim;
  }
  p.embedding = Tensor2<Real>::Zero(vocab_size + 1, c.embedding_dim);
  p.joint_enc = Tensor2<Real>::Zero(c.encoder_dim, c.joint_dim);
  p.joint_pred = Tensor2<Real>::Zero(c.prediction_dim, c.joint_dim);
  p.joint_bias = Tensor2<Real>::Zero(1, c.joint_dim);
  p.output = Tensor2<Real>::Zero(c.joint_dim, vocab_size);
  p.output_bias = Tensor2<Real>::Zero(1, vocab_size);
  return p;
}

template <typename Real>
TransducerModel<Real>::TransducerModel(const TransducerConfig &config,
                                       std::vector<LanguageAttr> languages,
                                       uint64_t seed)
    : config_(config), languages_(std::move(languages)) {
  if (config_.encoder_layers < 1 || config_.prediction_layers < 1) {
    throw DomainError("transducer needs at least one encoder and one "
                      "prediction layer");
  }
  std::mt19937_64 rng(seed);
  const int vocab = vocab_size();
  params_ = ZeroParams<Real>(config_, vocab);
  int in = config_.input_dim;
  for (auto &l : params_.encoder) {
    l = LstmParams<Real>::Random(in, config_.encoder_dim, rng);
    in = config_.encoder_dim;
  }
  in = config_.embedding_dim + config_.lid_dim;
  for (auto &l : params_.prediction) {
    l = LstmParams<Real>::Random(in, config_.prediction_dim, rng);
    in = config_.prediction_dim;
  }
  // A lookup is a one-hot product, fan_in 1.
  FillUniform(&params_.embedding, 1.0, rng);
  const double joint_bound =
      1.0 / std::sqrt(double(config_.encoder_dim + config_.prediction_dim));
  FillUniform(&params_.joint_enc, joint_bound, rng);
  FillUniform(&params_.joint_pred, joint_bound, rng);
  FillUniform(&params_.output, 1.0 / std::sqrt(double(config_.joint_dim)), rng);
}

template <typename Real>
TransducerModel<Real>::TransducerModel(const TransducerConfig &config,
                                       std::vector<LanguageAttr> languages,
                                       TransducerParams<Real> params)
    : config_(config),
      languages_(std::move(languages)),
      params_(std::move(params)) {
  const auto expected = ZeroParams<Real>(config_, vocab_size());
  const auto want = expected.Tensors();
  const auto have = params_.Tensors();
  const auto names = expected.TensorNames();
  if (want.size() != have.size()) {
    throw ShapeError("transducer params: expected " +
                     std::to_string(want.size()) + " tensors, got " +
                     std::to_string(have.size()));
  }
  for (size_t k = 0; k < want.size(); ++k) {
    CheckShape(names[k], *have[k], want[k]->rows(), want[k]->cols());
  }
  for (size_t l = 0; l < params_.encoder.size(); ++l) {
    params_.encoder[l].input_dim = expected.encoder[l].input_dim;
    params_.encoder[l].hidden_dim = expected.encoder[l].hidden_dim;
  }
  for (size_t l = 0; l < params_.prediction.size(); ++l) {
    params_.prediction[l].input_dim = expected.prediction[l].input_dim;
    params_.prediction[l].hidden_dim = expected.prediction[l].hidden_dim;
  }
}

template <typename Real>
RowVec<Real> TransducerModel<Real>::LanguageVector(LanguageAttr lang) const {
  switch (lang) {
    case LanguageAttr::kEnglish:
      return RowVec<Real>::Constant(config_.lid_dim, Real(1));
    case LanguageAttr::kMandarin:
      return RowVec<Real>::Constant(config_.lid_dim, Real(-1));
    case LanguageAttr::kNeutral:
      break;
  }
  return RowVec<Real>::Zero(config_.lid_dim);
}

template <typename Real>
RowVec<Real> TransducerModel<Real>::Embed(int token_id) const {
  if (token_id < 0 || token_id > start_id()) {
    throw IndexError("embed: token id " + std::to_string(token_id) +
                     " outside [0, " + std::to_string(start_id()) + "]");
  }
  const LanguageAttr lang =
      token_id == start_id() ? LanguageAttr::kNeutral : languages_[token_id];
  RowVec<Real> out(config_.embedding_dim + config_.lid_dim);
  out << params_.embedding.row(token_id), LanguageVector(lang);
  return out;
}

template <typename Real>
Tensor2<Real> TransducerModel<Real>::Encode(const Tensor2<Real> &features) const {
  CheckCols("features", features, config_.input_dim);
  Tensor2<Real> x = features;
  for (const auto &layer : params_.encoder) {
    x = LstmForward(layer, x, LstmState<Real>::Zeros(layer.hidden_dim)).outputs;
  }
  return x;
}

template <typename Real>
PredictionState<Real> TransducerModel<Real>::InitialPredictionState() const {
  PredictionState<Real> state;
  for (const auto &layer : params_.prediction) {
    state.push_back(LstmState<Real>::Zeros(layer.hidden_dim));
  }
  return state;
}

template <typename Real>
RowVec<Real> TransducerModel<Real>::PredictionStep(
    int token_id, PredictionState<Real> *state) const {
  RowVec<Real> x = Embed(token_id);
  for (size_t l = 0; l < params_.prediction.size(); ++l) {
    (*state)[l] = LstmStep(params_.prediction[l], x, (*state)[l]);
    x = (*state)[l].h;
  }
  return x;
}

template <typename Real>
RowVec<Real> TransducerModel<Real>::JointLogits(
    const RowVec<Real> &enc_state, const RowVec<Real> &pred_state) const {
  CheckCols("joint enc_state", enc_state, config_.encoder_dim);
  CheckCols("joint pred_state", pred_state, config_.prediction_dim);
  RowVec<Real> pre = params_.joint_bias.row(0);
  pre.noalias() += enc_state * params_.joint_enc;
  pre.noalias() += pred_state * params_.joint_pred;
  RowVec<Real> hidden = pre.array().tanh().matrix();
  RowVec<Real> z = params_.output_bias.row(0);
  z.noalias() += hidden * params_.output;
  return z;
}

template <typename Real>
template <typename Other>
TransducerModel<Other> TransducerModel<Real>::Cast() const {
  TransducerParams<Other> p = ZeroParams<Other>(config_, vocab_size());
  auto dst = p.Tensors();
  auto src = params_.Tensors();
  for (size_t k = 0; k < dst.size(); ++k) *dst[k] = src[k]->template cast<Other>();
  return TransducerModel<Other>(config_, languages_, std::move(p));
}

template <typename Real>
double ComputeLossAndGradient(const TransducerModel<Real> &model,
                              const Tensor2<Real> &features,
                              std::span<const int> target, bool training,
                              std::mt19937_64 &rng,
                              TransducerParams<Real> *grad) {
  const TransducerConfig &cfg = model.config();
  const TransducerParams<Real> &p = model.params();
  const int frames = static_cast<int>(features.rows());
  const int labels = static_cast<int>(target.size());
  CheckCols("features", features, cfg.input_dim);
  for (int y : target) {
    if (y == kBlankId) throw DomainError("target contains blank");
    if (y < 0 || y >= model.vocab_size()) {
      throw IndexError("target id " + std::to_string(y) + " out of range");
    }
  }
  const double dropout = cfg.dropout;

  auto enc = RunStack(p.encoder, features, dropout, training, rng);

  Tensor2<Real> pred_in(labels + 1, cfg.embedding_dim + cfg.lid_dim);
  pred_in.row(0) = model.Embed(model.start_id());
  for (int u = 0; u < labels; ++u) pred_in.row(u + 1) = model.Embed(target[u]);
  auto pred = RunStack(p.prediction, pred_in, dropout, training, rng);

  Tensor2<Real> enc_proj = enc.output * p.joint_enc;
  Tensor2<Real> pred_proj = pred.output * p.joint_pred;
  pred_proj.rowwise() += p.joint_bias.row(0);

  JointGrid<Real> grid;
  ComputeJointGrid(enc_proj, pred_proj, p.output, p.output_bias, &grid);

  NodeLogProbs nodes(frames, labels);
  for (int t = 0; t < frames; ++t) {
    for (int u = 0; u <= labels; ++u) {
      const auto row = grid.log_probs.row(nodes.Index(t, u));
      nodes.Blank(t, u) = static_cast<double>(row(kBlankId));
      if (u < labels) nodes.Label(t, u) = static_cast<double>(row(target[u]));
    }
  }
  RnntLossResult loss = RnntLoss(nodes);
  if (grad == nullptr) return loss.loss;

  JointGridGrad<Real> jg =
      JointGridBackward(grid, p.output, target, kBlankId, loss.grad.blank,
                        loss.grad.label, frames);
  grad->output += jg.output;
  grad->output_bias += jg.output_bias;
  grad->joint_bias += jg.pred_proj.colwise().sum();
  grad->joint_pred.noalias() += pred.output.transpose() * jg.pred_proj;
  grad->joint_enc.noalias() += enc.output.transpose() * jg.enc_proj;

  Tensor2<Real> d_pred_in = BackwardStack(
      p.prediction, pred, Tensor2<Real>(jg.pred_proj * p.joint_pred.transpose()),
      &grad->prediction);
  const int emb = cfg.embedding_dim;
  grad->embedding.row(model.start_id()) += d_pred_in.row(0).leftCols(emb);
  for (int u = 0; u < labels; ++u) {
    grad->embedding.row(target[u]) += d_pred_in.row(u + 1).leftCols(emb);
  }
  BackwardStack(p.encoder, enc,
                Tensor2<Real>(jg.enc_proj * p.joint_enc.transpose()),
                &grad->encoder);
  return loss.loss;
}

template <typename Real>
LossAndGradient<Real> ModelForward(const TransducerModel<Real> &model,
                                   const Tensor2<Real> &features,
                                   std::span<const int> target, bool training,
                                   std::mt19937_64 &rng) {
  LossAndGradient<Real> out;
  out.grad = ZeroParams<Real>(model.config(), model.vocab_size());
  out.loss = ComputeLossAndGradient(model, features, target, training, rng,
                                    &out.grad);
  return out;
}

template struct TransducerParams<float>;
template struct TransducerParams<double>;
template TransducerParams<float> ZeroParams(const TransducerConfig &, int);
template TransducerParams<double> ZeroParams(const TransducerConfig &, int);
template class TransducerModel<float>;
template class TransducerModel<double>;
template TransducerModel<double> TransducerModel<float>::Cast<double>() const;
template TransducerModel<float> TransducerModel<double>::Cast<float>() const;
template TransducerModel<float> TransducerModel<float>::Cast<float>() const;
template TransducerModel<double> TransducerModel<double>::Cast<double>() const;
template double ComputeLossAndGradient(const TransducerModel<float> &,
                                       const Tensor2<float> &,
                                       std::span<const int>, bool,
                                       std::mt19937_64 &,
                                       TransducerParams<float> *);
template double ComputeLossAndGradient(const TransducerModel<double> &,
                                       const Tensor2<double> &,
                                       std::span<const int>, bool,
                                       std::mt19937_64 &,
                                       TransducerParams<double> *);
template LossAndGradient<float> ModelForward(const TransducerModel<float> &,
                                             const Tensor2<float> &,
                                             std::span<const int>, bool,
                                             std::mt19937_64 &);
template LossAndGradient<double> ModelForward(const TransducerModel<double> &,
                                              const Tensor2<double> &,
                                              std::span<const int>, bool,
                                              std::mt19937_64 &);

}  // namespace csrnnt
