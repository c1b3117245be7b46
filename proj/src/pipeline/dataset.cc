// src/pipeline/dataset.cc

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

#include "csrnnt/pipeline/dataset.h"

#include <cmath>
#include <cstdio>

namespace csrnnt {

TextModels BuildTextModels(const Corpus &train, int bpe_merges, bool tagged) {
  TextModels out;
  out.bpe = BpeLearn(EnglishWordCounts(train), bpe_merges);
  const Corpus text = tagged ? TagCorpus(train) : UntagCorpus(train);
  std::vector<std::vector<Token>> tokens;
  tokens.reserve(text.size());
  for (const auto &u : text) tokens.push_back(ClassifyTokens(u.tokens));
  out.vocab = BuildVocab(tokens, out.bpe);
  return out;
}

Corpus TranscriptsOf(const std::vector<SynthUtterance> &utts, bool tagged) {
  Corpus c;
  c.reserve(utts.size());
  for (const auto &u : utts) c.push_back({u.id, u.tokens});
  return tagged ? TagCorpus(c) : c;
}

std::vector<Example> MakeExamples(const std::vector<SynthUtterance> &utts,
                                  const TextModels &text, bool tagged) {
  const Corpus transcripts = TranscriptsOf(utts, tagged);
  std::vector<Example> out;
  out.reserve(utts.size());
  for (size_t i = 0; i < utts.size(); ++i) {
    out.push_back({utts[i].id, utts[i].features,
                   EncodeTranscript(text.vocab, text.bpe, transcripts[i].tokens)});
  }
  return out;
}

void SplitValidation(std::vector<Example> all, double fraction,
                     std::vector<Example> *train, std::vector<Example> *valid) {
  const auto n_valid = static_cast<size_t>(std::llround(fraction * double(all.size())));
  const size_t n_train = all.size() - std::min(n_valid, all.size());
  train->assign(std::make_move_iterator(all.begin()),
                std::make_move_iterator(all.begin() + n_train));
  valid->assign(std::make_move_iterator(all.begin() + n_train),
                std::make_move_iterator(all.end()));
}

std::vector<Example> SpeedPerturb(const std::vector<Example> &examples,
                                  const std::vector<double> &rates) {
  if (rates.empty()) return examples;
  std::vector<Example> out;
  out.reserve(examples.size() * rates.size());
  for (double rate : rates) {
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "-sp%g", rate);
    for (const auto &e : examples) {
      if (rate == 1.0) {
        out.push_back(e);
      } else {
        out.push_back({e.id + suffix, PerturbFeatures(e.features, rate), e.target});
      }
    }
  }
  return out;
}

}  // namespace csrnnt
