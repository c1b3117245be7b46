// src/lm/rnnlm.cc

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

#include "csrnnt/lm/rnnlm.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "csrnnt/base/errors.h"
#include "csrnnt/nn/adam.h"
#include "csrnnt/nn/ops.h"
#include "csrnnt/nn/tensor-io.h"

namespace csrnnt {

namespace {

constexpr int kBoundary = 0;
constexpr int kUnk = 1;
constexpr std::string_view kLmMagic = "CSLM";

}  // namespace

std::vector<Tensor2<double> *> RnnLm::Params::Tensors() {
  return {&embedding, &lstm.weight, &lstm.bias, &output, &output_bias};
}

std::vector<const Tensor2<double> *> RnnLm::Params::Tensors() const {
  return {&embedding, &lstm.weight, &lstm.bias, &output, &output_bias};
}

RnnLm::RnnLm(const std::vector<std::string> &words, int embedding_dim,
             int hidden_dim) {
  symbols_ = {"<s>", "<unk>"};
  std::set<std::string> sorted(words.begin(), words.end());
  sorted.erase("<s>");
  sorted.erase("</s>");
  sorted.erase("<unk>");
  symbols_.insert(symbols_.end(), sorted.begin(), sorted.end());
  for (size_t i = 0; i < symbols_.size(); ++i) index_[symbols_[i]] = static_cast<int>(i);
  const int vocab = vocab_size();
  params_.embedding = Tensor2<double>::Zero(vocab, embedding_dim);
  params_.lstm = LstmParams<double>::Zeros(embedding_dim, hidden_dim);
  params_.output = Tensor2<double>::Zero(hidden_dim, vocab);
  params_.output_bias = Tensor2<double>::Zero(1, vocab);
}

int RnnLm::IdOf(const std::string &word) const {
  auto it = index_.find(word);
  return it == index_.end() || it->second == kBoundary ? kUnk : it->second;
}

double RnnLm::LogProb(const std::vector<std::string> &tokens) const {
  const int hidden = params_.lstm.hidden_dim;
  LstmState<double> state = LstmState<double>::Zeros(hidden);
  double total = 0;
  int prev = kBoundary;
  for (size_t i = 0; i <= tokens.size(); ++i) {
    state = LstmStep(params_.lstm, RowVec<double>(params_.embedding.row(prev)), state);
    RowVec<double> z = params_.output_bias.row(0);
    z.noalias() += state.h * params_.output;
    const auto lp = LogSoftmax<double>(std::span<const double>(z.data(), z.size()));
    const int next = i < tokens.size() ? IdOf(tokens[i]) : kBoundary;
    total += lp[next];
    prev = next;
  }
  return total;
}

double RnnLm::LossAndGradient(const std::vector<std::string> &tokens,
                              Params *grad) const {
  const int steps = static_cast<int>(tokens.size()) + 1;
  std::vector<int> inputs{kBoundary};
  std::vector<int> targets;
  for (const auto &t : tokens) {
    inputs.push_back(IdOf(t));
    targets.push_back(IdOf(t));
  }
  targets.push_back(kBoundary);

  Tensor2<double> x(steps, params_.embedding.cols());
  for (int i = 0; i < steps; ++i) x.row(i) = params_.embedding.row(inputs[i]);
  auto fwd = LstmForward(params_.lstm, x,
                         LstmState<double>::Zeros(params_.lstm.hidden_dim));
  Tensor2<double> logits = fwd.outputs * params_.output;
  logits.rowwise() += params_.output_bias.row(0);
  LogSoftmaxRowsInPlace(&logits);

  double loss = 0;
  Tensor2<double> d_logits = logits.array().exp().matrix();
  for (int i = 0; i < steps; ++i) {
    loss -= logits(i, targets[i]);
    d_logits(i, targets[i]) -= 1.0;
  }
  if (grad == nullptr) return loss;
  grad->output.noalias() += fwd.outputs.transpose() * d_logits;
  grad->output_bias += d_logits.colwise().sum();
  Tensor2<double> d_h = d_logits * params_.output.transpose();
  auto g = LstmBackward(params_.lstm, fwd.cache, d_h,
                        LstmState<double>::Zeros(params_.lstm.hidden_dim));
  grad->lstm.weight += g.params.weight;
  grad->lstm.bias += g.params.bias;
  for (int i = 0; i < steps; ++i) grad->embedding.row(inputs[i]) += g.inputs.row(i);
  return loss;
}

void RnnLm::Save(const std::string &path) const {
  nlohmann::json header;
  header["symbols"] = symbols_;
  header["embedding_dim"] = params_.embedding.cols();
  header["hidden_dim"] = params_.lstm.hidden_dim;
  std::vector<Tensor2<float>> as_float;
  for (const auto *t : params_.Tensors()) as_float.push_back(t->cast<float>());
  const char *names[] = {"embedding", "lstm.weight", "lstm.bias", "output.weight",
                         "output.bias"};
  std::vector<std::pair<std::string, const Tensor2<float> *>> tensors;
  for (size_t k = 0; k < as_float.size(); ++k) tensors.emplace_back(names[k], &as_float[k]);
  WriteTensorFile(path, kLmMagic, header, tensors);
}

RnnLm RnnLm::Load(const std::string &path) {
  TensorFile file = ReadTensorFile(path, kLmMagic);
  auto symbols = file.header.at("symbols").get<std::vector<std::string>>();
  if (symbols.size() < 2 || symbols[0] != "<s>" || symbols[1] != "<unk>") {
    throw IoError(path + ": malformed symbol table");
  }
  RnnLm lm(std::vector<std::string>(symbols.begin() + 2, symbols.end()),
           file.header.at("embedding_dim").get<int>(),
           file.header.at("hidden_dim").get<int>());
  if (lm.symbols_ != symbols) throw IoError(path + ": symbol table not sorted");
  const char *names[] = {"embedding", "lstm.weight", "lstm.bias", "output.weight",
                         "output.bias"};
  auto tensors = lm.params_.Tensors();
  for (size_t k = 0; k < tensors.size(); ++k) {
    const auto &t = file.Get(names[k]);
    CheckShape(path + ": " + names[k], t, tensors[k]->rows(), tensors[k]->cols());
    *tensors[k] = t.cast<double>();
  }
  return lm;
}

RnnLm TrainRnnLm(const std::vector<std::vector<std::string>> &sentences,
                 const RnnLmConfig &config) {
  if (sentences.empty()) throw DomainError("TrainRnnLm: empty corpus");
  std::vector<std::string> words;
  for (const auto &s : sentences) words.insert(words.end(), s.begin(), s.end());
  RnnLm lm(words, config.embedding_dim, config.hidden_dim);

  std::mt19937_64 rng(config.seed);
  auto &p = lm.params();
  auto fill = [&](Tensor2<double> *m, double bound) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = dist(rng);
  };
  fill(&p.embedding, 1.0);
  p.lstm = LstmParams<double>::Random(config.embedding_dim, config.hidden_dim, rng);
  fill(&p.output, 1.0 / std::sqrt(double(config.hidden_dim)));

  AdamState<double> adam;
  adam.config.learning_rate = config.learning_rate;
  auto params = p.Tensors();
  RnnLm::Params grad = p;
  auto grads_mut = grad.Tensors();
  std::vector<const Tensor2<double> *> grads(grads_mut.begin(), grads_mut.end());

  std::vector<size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t idx : order) {
      for (auto *g : grads_mut) g->setZero();
      lm.LossAndGradient(sentences[idx], &grad);
      AdamStep(&adam, std::span<Tensor2<double> *const>(params),
               std::span<const Tensor2<double> *const>(grads));
    }
  }
  return lm;
}

}  // namespace csrnnt
