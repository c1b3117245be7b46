// src/decoder/beam-search.cc

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

#include "csrnnt/decoder/beam-search.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>

#include "csrnnt/base/errors.h"
#include "csrnnt/transducer/rnnt-loss.h"

namespace csrnnt {

namespace {

constexpr int kBlankId = Vocabulary::kBlank;

bool BetterHyp(const Hypothesis &a, const Hypothesis &b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.tokens < b.tokens;
}

// Candidate label expansion, materialized only if it survives pruning.
struct Expansion {
  const Hypothesis *parent;
  int token;
  double log_prob;
  double raw_posterior;
};

void MergeInto(std::map<std::vector<int>, Hypothesis> *set, Hypothesis hyp) {
  auto it = set->find(hyp.tokens);
  if (it == set->end()) {
    set->emplace(hyp.tokens, std::move(hyp));
    return;
  }
  Hypothesis &kept = it->second;
  const double merged = LogAdd(kept.log_prob, hyp.log_prob);
  // The ID posterior follows the stronger path.
  if (hyp.log_prob > kept.log_prob) {
    kept.language_id_posterior = hyp.language_id_posterior;
  }
  kept.log_prob = merged;
}

std::vector<Hypothesis> TopK(std::map<std::vector<int>, Hypothesis> &&set,
                             int k) {
  std::vector<Hypothesis> out;
  out.reserve(set.size());
  for (auto &entry : set) out.push_back(std::move(entry.second));
  std::sort(out.begin(), out.end(), BetterHyp);
  if (static_cast<int>(out.size()) > k) out.resize(k);
  return out;
}

std::vector<double> JointLogProbs(const TransducerModel<double> &model,
                                  const RowVec<double> &enc_proj,
                                  const RowVec<double> &pred_proj) {
  const auto &p = model.params();
  RowVec<double> hidden = (enc_proj + pred_proj).array().tanh().matrix();
  RowVec<double> z = p.output_bias.row(0);
  z.noalias() += hidden * p.output;
  const double max = z.maxCoeff();
  const double log_norm = max + std::log((z.array() - max).exp().sum());
  std::vector<double> out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = z(i) - log_norm;
  return out;
}

RowVec<double> ProjectPrediction(const TransducerModel<double> &model,
                                 const RowVec<double> &pred_out) {
  RowVec<double> proj = model.params().joint_bias.row(0);
  proj.noalias() += pred_out * model.params().joint_pred;
  return proj;
}

}  // namespace

std::string_view LambdaModeName(LambdaMode mode) {
  switch (mode) {
    case LambdaMode::kFixed:
      return "fixed";
    case LambdaMode::kProb:
      return "prob";
    case LambdaMode::kOff:
      break;
  }
  return "off";
}

LambdaMode ParseLambdaMode(std::string_view name) {
  if (name == "off") return LambdaMode::kOff;
  if (name == "fixed") return LambdaMode::kFixed;
  if (name == "prob") return LambdaMode::kProb;
  throw DomainError("unknown lambda mode '" + std::string(name) +
                    "' (expected off, fixed or prob)");
}

void DecodeConfig::Validate() const {
  if (beam_size < 1) throw DomainError("beam_size must be >= 1");
  if (max_symbols_per_frame < 0) {
    throw DomainError("max_symbols_per_frame must be >= 0");
  }
  if (!std::isfinite(lambda) || lambda < 0) {
    throw DomainError("lambda must be finite and >= 0");
  }
}

DecoderSymbols DecoderSymbols::FromVocabulary(const Vocabulary &vocab) {
  return {vocab.Languages(), vocab.Kinds()};
}

std::vector<double> ReweightPosteriors(std::span<const double> log_probs,
                                       const DecoderSymbols &symbols,
                                       LanguageAttr current,
                                       double lambda_eff) {
  if (static_cast<int>(log_probs.size()) != symbols.size()) {
    throw ShapeError("ReweightPosteriors: " + std::to_string(log_probs.size()) +
                     " log-probs for " + std::to_string(symbols.size()) +
                     " symbols");
  }
  double mass = 0;
  for (double lp : log_probs) {
    if (std::isnan(lp) || lp > 0) {
      throw DomainError("ReweightPosteriors: invalid log-probability");
    }
    mass += std::exp(lp);
  }
  if (std::abs(mass - 1.0) > 1e-6) {
    throw DomainError("ReweightPosteriors: distribution sums to " +
                      std::to_string(mass));
  }
  if (!(lambda_eff >= 0) || !std::isfinite(lambda_eff)) {
    throw DomainError("ReweightPosteriors: lambda must be finite and >= 0");
  }
  std::vector<double> out(log_probs.begin(), log_probs.end());
  if (lambda_eff == 0.0 || current == LanguageAttr::kNeutral) return out;

  const double boost = std::log1p(lambda_eff);
  double log_norm = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < symbols.size(); ++i) {
    if (symbols.Boostable(i) && symbols.lang[i] == current) out[i] += boost;
    log_norm = LogAdd(log_norm, out[i]);
  }
  for (double &v : out) v -= log_norm;
  return out;
}

double EffectiveLambda(const DecodeConfig &config, const Hypothesis &hyp) {
  switch (config.lambda_mode) {
    case LambdaMode::kFixed:
      return config.lambda;
    case LambdaMode::kProb:
      return hyp.language_id_posterior;
    case LambdaMode::kOff:
      break;
  }
  return 0.0;
}

std::vector<Hypothesis> BeamSearchDecode(const TransducerModel<double> &model,
                                         const DecoderSymbols &symbols,
                                         const Tensor2<double> &features,
                                         const DecodeConfig &config) {
  config.Validate();
  if (symbols.size() != model.vocab_size()) {
    throw ShapeError("decoder symbol table has " +
                     std::to_string(symbols.size()) + " entries, model has " +
                     std::to_string(model.vocab_size()));
  }
  Hypothesis start;
  start.state = model.InitialPredictionState();
  start.pred_proj =
      ProjectPrediction(model, model.PredictionStep(model.start_id(), &start.state));
  if (features.rows() == 0) return {start};

  const Tensor2<double> enc_proj =
      model.Encode(features) * model.params().joint_enc;
  const int vocab = model.vocab_size();

  std::vector<Hypothesis> active{std::move(start)};
  for (Eigen::Index t = 0; t < enc_proj.rows(); ++t) {
    const RowVec<double> frame = enc_proj.row(t);
    std::map<std::vector<int>, Hypothesis> closed;
    std::vector<Hypothesis> current = std::move(active);
    for (int round = 0; round <= config.max_symbols_per_frame; ++round) {
      std::vector<Expansion> expansions;
      for (const Hypothesis &hyp : current) {
        const std::vector<double> raw = JointLogProbs(model, frame, hyp.pred_proj);
        const std::vector<double> lp = ReweightPosteriors(
            raw, symbols, hyp.current_language, EffectiveLambda(config, hyp));
        Hypothesis blank_ext = hyp;
        blank_ext.log_prob += lp[kBlankId];
        MergeInto(&closed, std::move(blank_ext));
        if (round == config.max_symbols_per_frame) continue;
        for (int k = 0; k < vocab; ++k) {
          if (k == kBlankId) continue;
          expansions.push_back({&hyp, k, hyp.log_prob + lp[k], std::exp(raw[k])});
        }
      }
      if (expansions.empty()) break;
      const size_t keep =
          std::min<size_t>(expansions.size(), static_cast<size_t>(config.beam_size));
      std::partial_sort(expansions.begin(), expansions.begin() + keep,
                        expansions.end(), [](const Expansion &a, const Expansion &b) {
                          if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
                          if (a.parent->tokens != b.parent->tokens) {
                            return a.parent->tokens < b.parent->tokens;
                          }
                          return a.token < b.token;
                        });
      std::vector<Hypothesis> next;
      next.reserve(keep);
      for (size_t i = 0; i < keep; ++i) {
        const Expansion &e = expansions[i];
        Hypothesis h;
        h.tokens = e.parent->tokens;
        h.tokens.push_back(e.token);
        h.log_prob = e.log_prob;
        h.state = e.parent->state;
        h.pred_proj = ProjectPrediction(model, model.PredictionStep(e.token, &h.state));
        h.current_language = e.parent->current_language;
        h.language_id_posterior = e.parent->language_id_posterior;
        if (symbols.kind[e.token] == SymbolKind::kLanguageId) {
          h.current_language = symbols.lang[e.token];
          h.language_id_posterior = e.raw_posterior;
        }
        next.push_back(std::move(h));
      }
      current = std::move(next);
    }
    active = TopK(std::move(closed), config.beam_size);
  }
  return active;
}

std::vector<std::vector<Hypothesis>> DecodeBatch(
    const TransducerModel<double> &model, const DecoderSymbols &symbols,
    const std::vector<Tensor2<double>> &features, const DecodeConfig &config) {
  std::vector<std::vector<Hypothesis>> out(features.size());
  std::vector<std::exception_ptr> errors(features.size());
  const long n = static_cast<long>(features.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = BeamSearchDecode(model, symbols, features[i], config);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::vector<Hypothesis>> DecodeBatchSerial(
    const TransducerModel<double> &model, const DecoderSymbols &symbols,
    const std::vector<Tensor2<double>> &features, const DecodeConfig &config) {
  std::vector<std::vector<Hypothesis>> out;
  out.reserve(features.size());
  for (const auto &f : features) {
    out.push_back(BeamSearchDecode(model, symbols, f, config));
  }
  return out;
}

}  // namespace csrnnt
