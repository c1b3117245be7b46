// include/csrnnt/decoder/beam-search.h

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

#ifndef CSRNNT_DECODER_BEAM_SEARCH_H_
#define CSRNNT_DECODER_BEAM_SEARCH_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csrnnt/nn/tensor.h"
#include "csrnnt/text/vocabulary.h"
#include "csrnnt/transducer/model.h"

namespace csrnnt {

enum class LambdaMode { kOff, kFixed, kProb };

std::string_view LambdaModeName(LambdaMode mode);
LambdaMode ParseLambdaMode(std::string_view name);

struct DecodeConfig {
  int beam_size = 8;
  LambdaMode lambda_mode = LambdaMode::kOff;
  double lambda = 0.2;
  int max_symbols_per_frame = 5;

  static DecodeConfig Desk() { return {}; }
  static DecodeConfig SeamePaper() { return {35, LambdaMode::kOff, 0.2, 5}; }

  void Validate() const;  // DomainError on beam_size < 1 or non-finite lambda
};

// What the decoder needs to know about each output symbol.
struct DecoderSymbols {
  std::vector<LanguageAttr> lang;
  std::vector<SymbolKind> kind;

  static DecoderSymbols FromVocabulary(const Vocabulary &vocab);
  int size() const { return static_cast<int>(lang.size()); }
  // Only characters and wordpieces are ever boosted.
  bool Boostable(int id) const {
    return kind[id] == SymbolKind::kMandarinChar ||
           kind[id] == SymbolKind::kEnglishWordpiece;
  }
};

// Adds log(1 + lambda_eff) to every boostable symbol of `current` language
// and renormalizes. Returns the input unchanged (bit-identical) when
// lambda_eff is 0 or `current` is neutral. Throws DomainError if the input
// is not a normalized distribution (tolerance 1e-6) or lambda_eff < 0.
std::vector<double> ReweightPosteriors(std::span<const double> log_probs,
                                       const DecoderSymbols &symbols,
                                       LanguageAttr current, double lambda_eff);

struct Hypothesis {
  std::vector<int> tokens;  // blank-free
  double log_prob = 0;
  PredictionState<double> state;
  RowVec<double> pred_proj;  // prediction output projected into joint space
  LanguageAttr current_language = LanguageAttr::kNeutral;
  double language_id_posterior = 0;  // model posterior of the last ID token
};

// lambda_eff for a hypothesis under `config`.
double EffectiveLambda(const DecodeConfig &config, const Hypothesis &hyp);

// Time-synchronous beam search. Each frame: up to max_symbols_per_frame
// label expansions, each hypothesis then closes the frame with a blank;
// hypotheses with identical label sequences are merged by log-sum-exp.
// Returns at most beam_size hypotheses, best first. Zero frames yield one
// empty hypothesis with log-prob 0.
std::vector<Hypothesis> BeamSearchDecode(const TransducerModel<double> &model,
                                         const DecoderSymbols &symbols,
                                         const Tensor2<double> &features,
                                         const DecodeConfig &config);

// Decodes utterances in parallel (OpenMP); output order follows input.
std::vector<std::vector<Hypothesis>> DecodeBatch(
    const TransducerModel<double> &model, const DecoderSymbols &symbols,
    const std::vector<Tensor2<double>> &features, const DecodeConfig &config);

// Single-threaded reference for DecodeBatch.
std::vector<std::vector<Hypothesis>> DecodeBatchSerial(
    const TransducerModel<double> &model, const DecoderSymbols &symbols,
    const std::vector<Tensor2<double>> &features, const DecodeConfig &config);

}  // namespace csrnnt

#endif  // CSRNNT_DECODER_BEAM_SEARCH_H_
