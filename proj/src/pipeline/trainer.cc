// src/pipeline/trainer.cc

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

#include "csrnnt/pipeline/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>

#include "csrnnt/base/denormals.h"
#include "csrnnt/base/errors.h"
#include "csrnnt/base/seed.h"
#include "csrnnt/transducer/checkpoint.h"

namespace csrnnt {

namespace {

constexpr uint64_t kStreamDropout = 101;
constexpr uint64_t kStreamShuffle = 102;
constexpr uint64_t kStreamInit = 103;

double OneUtterance(const TransducerModel<float> &model, const Example &ex,
                    bool training, uint64_t seed, int epoch, size_t index,
                    TransducerParams<float> *grad) {
  ScopedFlushDenormals ftz;
  std::mt19937_64 rng(DeriveSeed(seed, kStreamDropout,
                                 (static_cast<uint64_t>(epoch) << 32) ^ index));
  return ComputeLossAndGradient(model, ex.features, std::span<const int>(ex.target),
                                training, rng, grad);
}

std::vector<Tensor2<float> *> Mutable(TransducerParams<float> *p) { return p->Tensors(); }

}  // namespace

TrainState InitTrainState(const TransducerConfig &model, const Vocabulary &vocab,
                          const TrainConfig &train) {
  TrainState s{TransducerModel<float>(model, vocab.Languages(),
                                      DeriveSeed(train.seed, kStreamInit, 0)),
               {}, 0, std::numeric_limits<double>::infinity(), 0, {}};
  s.adam.config.learning_rate = train.learning_rate;
  s.adam.Init(std::span<Tensor2<float> *const>(Mutable(&s.model.params())));
  s.best_params = s.model.params();
  return s;
}

double BatchLossAndGradient(const TransducerModel<float> &model,
                            const std::vector<Example> &examples,
                            std::span<const size_t> indices, bool training,
                            uint64_t seed, int epoch, TransducerParams<float> *grad) {
  const int n = static_cast<int>(indices.size());
  std::vector<double> losses(n, 0.0);
  std::vector<TransducerParams<float>> grads;
  if (grad != nullptr) {
    grads.assign(n, ZeroParams<float>(model.config(), model.vocab_size()));
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n; ++k) {
    try {
      losses[k] = OneUtterance(model, examples[indices[k]], training, seed, epoch,
                               indices[k], grad ? &grads[k] : nullptr);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  double total = 0;
  for (int k = 0; k < n; ++k) {
    total += losses[k];
    if (grad != nullptr) grad->Add(grads[k]);
  }
  return total;
}

double BatchLossAndGradientSerial(const TransducerModel<float> &model,
                                  const std::vector<Example> &examples,
                                  std::span<const size_t> indices, bool training,
                                  uint64_t seed, int epoch,
                                  TransducerParams<float> *grad) {
  double total = 0;
  for (size_t index : indices) {
    if (grad == nullptr) {
      total += OneUtterance(model, examples[index], training, seed, epoch, index, nullptr);
      continue;
    }
    auto g = ZeroParams<float>(model.config(), model.vocab_size());
    total += OneUtterance(model, examples[index], training, seed, epoch, index, &g);
    grad->Add(g);
  }
  return total;
}

double GradientNorm(const TransducerParams<float> &grad) {
  double sq = 0;
  for (const auto *t : grad.Tensors()) sq += t->cast<double>().squaredNorm();
  return std::sqrt(sq);
}

double MeanLoss(const TransducerModel<float> &model, const std::vector<Example> &examples,
                bool parallel) {
  if (examples.empty()) return 0.0;
  std::vector<size_t> all(examples.size());
  std::iota(all.begin(), all.end(), 0);
  const double total =
      parallel ? BatchLossAndGradient(model, examples, all, false, 0, 0, nullptr)
               : BatchLossAndGradientSerial(model, examples, all, false, 0, 0, nullptr);
  return total / double(examples.size());
}

void Train(TrainState *state, const std::vector<Example> &train,
           const std::vector<Example> &valid, const TrainConfig &config,
           const std::function<void(const EpochLog &, const TrainState &)> &on_epoch) {
  if (train.empty()) throw DomainError("Train: no training utterances");
  auto params = Mutable(&state->model.params());
  auto grad = ZeroParams<float>(state->model.config(), state->model.vocab_size());
  auto grad_tensors_mut = grad.Tensors();
  std::vector<const Tensor2<float> *> grad_tensors(grad_tensors_mut.begin(),
                                                   grad_tensors_mut.end());

  while (state->epoch < config.epochs) {
    const int epoch = state->epoch + 1;
    const auto start = std::chrono::steady_clock::now();
    std::vector<size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 shuffle_rng(DeriveSeed(config.seed, kStreamShuffle, epoch));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    EpochLog log;
    log.epoch = epoch;
    log.learning_rate = state->adam.config.learning_rate;
    double loss_sum = 0;
    const size_t batch = static_cast<size_t>(config.batch_size);
    for (size_t b = 0; b * batch < order.size(); ++b) {
      const size_t lo = b * batch, hi = std::min(order.size(), lo + batch);
      std::span<const size_t> idx(order.data() + lo, hi - lo);
      grad.SetZero();
      auto fail = [&](const std::string &what) {
        std::ostringstream msg;
        msg << what << " in epoch " << epoch << " batch " << b << " (utterances";
        for (size_t i : idx) msg << ' ' << train[i].id;
        msg << ")";
        throw NumericalError(msg.str());
      };
      double loss = 0;
      try {
        loss = config.parallel
                   ? BatchLossAndGradient(state->model, train, idx, true, config.seed, epoch,
                                          &grad)
                   : BatchLossAndGradientSerial(state->model, train, idx, true, config.seed,
                                                epoch, &grad);
      } catch (const NonFiniteInputError &e) {
        fail(std::string("non-finite model output (") + e.what() + ")");
      }
      grad.Scale(1.0f / static_cast<float>(idx.size()));
      const double norm = GradientNorm(grad);
      if (!std::isfinite(loss) || !std::isfinite(norm)) {
        fail(std::isfinite(loss) ? "non-finite gradient" : "non-finite loss");
      }
      if (config.clip_norm > 0 && norm > config.clip_norm) {
        grad.Scale(static_cast<float>(config.clip_norm / norm));
      }
      AdamStep(&state->adam, std::span<Tensor2<float> *const>(params),
               std::span<const Tensor2<float> *const>(grad_tensors));
      loss_sum += loss;
    }
    log.train_loss = loss_sum / double(train.size());
    log.valid_loss = valid.empty() ? log.train_loss
                                   : MeanLoss(state->model, valid, config.parallel);
    if (!std::isfinite(log.valid_loss)) {
      throw NumericalError("non-finite validation loss after epoch " +
                           std::to_string(epoch));
    }
    if (log.valid_loss < state->best_valid) {
      state->best_valid = log.valid_loss;
      state->best_params = state->model.params();
      state->bad_epochs = 0;
      log.improved = true;
    } else if (++state->bad_epochs >= config.patience) {
      state->adam.config.learning_rate *= config.lr_decay;
      state->bad_epochs = 0;
    }
    state->epoch = epoch;
    log.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_epoch) on_epoch(log, *state);
  }
}

void SaveTrainState(const std::string &last_path, const std::string &best_path,
                    const TrainState &state, uint64_t vocab_hash,
                    const nlohmann::json &extra) {
  nlohmann::json meta = extra;
  meta["epoch"] = state.epoch;
  // JSON has no infinity; null stands for "no validation result yet".
  meta["best_valid"] = std::isfinite(state.best_valid) ? nlohmann::json(state.best_valid)
                                                       : nlohmann::json();
  meta["bad_epochs"] = state.bad_epochs;
  SaveTransducerCheckpoint(last_path, state.model, vocab_hash, meta, &state.adam);
  const TransducerModel<float> best(state.model.config(), state.model.languages(),
                                    state.best_params);
  SaveTransducerCheckpoint(best_path, best, vocab_hash, meta);
}

TrainState LoadTrainState(const std::string &last_path, const std::string &best_path,
                          uint64_t vocab_hash) {
  TransducerCheckpoint last = LoadTransducerCheckpoint(last_path);
  TransducerCheckpoint best = LoadTransducerCheckpoint(best_path);
  for (const auto *c : {&last, &best}) {
    if (c->vocab_hash != vocab_hash) {
      throw DomainError("resume: checkpoint was trained with a different vocabulary");
    }
  }
  if (!last.optimizer) throw DomainError("resume: " + last_path + " has no optimizer state");
  if (!(best.model.config() == last.model.config())) {
    throw DomainError("resume: best and last checkpoints disagree on the model");
  }
  const auto &meta = last.extra;
  TrainState s{std::move(last.model), std::move(*last.optimizer), 0,
               std::numeric_limits<double>::infinity(), 0, std::move(best.model.params())};
  s.epoch = meta.at("epoch").get<int>();
  if (!meta.at("best_valid").is_null()) s.best_valid = meta.at("best_valid").get<double>();
  s.bad_epochs = meta.at("bad_epochs").get<int>();
  return s;
}

}  // namespace csrnnt
