// src/pipeline/recognize.cc

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

#include "csrnnt/pipeline/recognize.h"

#include <cmath>
#include <limits>
#include <map>

#include "csrnnt/base/errors.h"
#include "csrnnt/metrics/mer.h"

namespace csrnnt {

std::vector<NbestEntry> DecodeUtterances(const TransducerModel<double> &model,
                                         const Vocabulary &vocab,
                                         const std::vector<SynthUtterance> &utts,
                                         const DecodeConfig &config, int nbest,
                                         bool parallel) {
  if (nbest < 1) throw DomainError("decode: nbest must be >= 1");
  if (vocab.size() != model.vocab_size()) {
    throw DomainError("decode: vocabulary does not match the model");
  }
  const DecoderSymbols symbols = DecoderSymbols::FromVocabulary(vocab);
  std::vector<Tensor2<double>> features;
  features.reserve(utts.size());
  for (const auto &u : utts) features.push_back(u.features.cast<double>());
  const auto results = parallel ? DecodeBatch(model, symbols, features, config)
                                : DecodeBatchSerial(model, symbols, features, config);
  std::vector<NbestEntry> out;
  for (size_t i = 0; i < utts.size(); ++i) {
    const auto &hyps = results[i];
    for (size_t r = 0; r < hyps.size() && static_cast<int>(r) < nbest; ++r) {
      NbestEntry e;
      e.utt_id = utts[i].id;
      e.rank = static_cast<int>(r) + 1;
      e.log_prob = hyps[r].log_prob;
      e.score = e.log_prob;
      e.tokens = DecodeToWords(vocab, hyps[r].tokens);
      out.push_back(std::move(e));
    }
  }
  return out;
}

namespace {

std::vector<std::vector<NbestEntry>> GroupByUtterance(const std::vector<NbestEntry> &nbest) {
  std::vector<std::vector<NbestEntry>> groups;
  std::map<std::string, size_t> where;
  for (const auto &e : nbest) {
    auto [it, inserted] = where.emplace(e.utt_id, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(e);
  }
  return groups;
}

}  // namespace

Corpus OneBest(const std::vector<NbestEntry> &nbest, bool strip_tags) {
  Corpus out;
  for (const auto &group : GroupByUtterance(nbest)) {
    const auto &best = group.front();
    out.push_back({best.utt_id, strip_tags ? StripLanguageIds(best.tokens) : best.tokens});
  }
  return out;
}

Corpus RescoreCorpus(const std::vector<NbestEntry> &nbest, const LanguageModel &lm,
                     const RescoreConfig &config) {
  Corpus out;
  for (auto &group : GroupByUtterance(nbest)) {
    const auto ranked = RescoreNbest(std::move(group), lm, config);
    out.push_back({ranked.front().utt_id, ranked.front().tokens});
  }
  return out;
}

RescoreConfig TuneRescore(const std::vector<NbestEntry> &nbest, const Corpus &refs,
                          const LanguageModel &lm, const RescoreConfig &base,
                          const RescoreTuning &grid, double *best_mer) {
  if (grid.lm_weights.empty() || grid.length_penalties.empty()) {
    throw DomainError("rescore tuning: empty grid");
  }
  RescoreConfig best = base;
  double best_value = std::numeric_limits<double>::infinity();
  for (double w : grid.lm_weights) {
    for (double pen : grid.length_penalties) {
      RescoreConfig c = base;
      c.lm_weight = w;
      c.length_penalty = pen;
      const double mer = MerScore(refs, RescoreCorpus(nbest, lm, c)).Mer();
      if (mer < best_value) {
        best_value = mer;
        best = c;
      }
    }
  }
  if (best_mer) *best_mer = best_value;
  return best;
}

std::vector<SynthUtterance> ValidationUtterances(const std::vector<SynthUtterance> &train,
                                                 double fraction) {
  const auto n_valid = static_cast<size_t>(std::llround(fraction * double(train.size())));
  const size_t start = train.size() - std::min(n_valid, train.size());
  return {train.begin() + static_cast<std::ptrdiff_t>(start), train.end()};
}

SynthData GenerateData(const RunConfig &config) {
  SynthData d;
  d.train = GenCorpus(config.synth, config.synth.num_utterances, "utt", 0);
  if (config.num_test > 0) d.test = GenCorpus(config.synth, config.num_test, "test", 1);
  return d;
}

TransducerConfig EffectiveModelConfig(const RunConfig &config) {
  TransducerConfig m = config.model;
  if (!config.train.tagged) m.lid_dim = 0;
  return m;
}

TrainedSystem TrainSystem(const RunConfig &config,
                          const std::vector<SynthUtterance> &train,
                          const std::function<void(const EpochLog &)> &on_epoch) {
  const bool tagged = config.train.tagged;
  TextModels text =
      BuildTextModels(TranscriptsOf(train, false), config.train.bpe_merges, tagged);
  std::vector<Example> fit, valid;
  SplitValidation(MakeExamples(train, text, tagged), config.train.validation_fraction,
                  &fit, &valid);
  fit = SpeedPerturb(fit, config.train.speed_rates);

  TrainState state = InitTrainState(EffectiveModelConfig(config), text.vocab, config.train);
  std::vector<EpochLog> log;
  Train(&state, fit, valid, config.train, [&](const EpochLog &e, const TrainState &) {
    log.push_back(e);
    if (on_epoch) on_epoch(e);
  });
  TransducerModel<float> best(state.model.config(), state.model.languages(),
                              state.best_params);
  return {std::move(text), std::move(best), std::move(log)};
}

}  // namespace csrnnt
