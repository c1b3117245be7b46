// include/csrnnt/lm/ngram.h

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

#ifndef CSRNNT_LM_NGRAM_H_
#define CSRNNT_LM_NGRAM_H_

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "csrnnt/lm/language-model.h"

namespace csrnnt {

struct NgramConfig {
  int order = 4;
  double discount = 0.75;
};

// Backoff n-gram model in ARPA form. Probabilities of seen n-grams are the
// fully interpolated estimates; backoff weights are the interpolation mass
// of each context, so an unseen n-gram gets bow(context) * p(w | shorter
// context) and the result equals the interpolated estimate.
class NgramModel : public LanguageModel {
 public:
  struct Entry {
    double prob = 0;     // linear probability
    double backoff = 1;  // linear backoff weight
  };

  NgramModel() = default;
  NgramModel(int order, double discount, std::vector<std::string> vocab,
             std::vector<std::unordered_map<std::string, Entry>> tables);

  int order() const { return order_; }
  double discount() const { return discount_; }
  // Predictable symbols: every training token, </s> and <unk>.
  const std::vector<std::string> &vocab() const { return vocab_; }

  // p(word | context). Only the last order-1 context tokens are used; a
  // context shorter than that is taken as-is (so it may start with <s>).
  // Unknown words are scored as <unk>.
  double Prob(std::span<const std::string> context,
              const std::string &word) const;

  // Natural-log probability of a sentence: each token given <s> + history,
  // then </s> when `include_end` is set. A zero probability contributes
  // the ARPA floor (log10 = -99) instead of -inf.
  double LogProb(const std::vector<std::string> &tokens,
                 bool include_end) const;
  double LogProb(const std::vector<std::string> &tokens) const override {
    return LogProb(tokens, true);
  }

  // Every context of length `length` that was observed before some word.
  std::vector<std::vector<std::string>> Contexts(int length) const;

  void WriteArpa(std::ostream &os) const;
  static NgramModel ReadArpa(std::istream &is);

 private:
  const Entry *Find(std::span<const std::string> ngram) const;

  int order_ = 0;
  double discount_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, bool> known_;
  // tables_[k] holds (k+1)-grams keyed by space-joined tokens.
  std::vector<std::unordered_map<std::string, Entry>> tables_;
};

inline constexpr const char *kSentenceStart = "<s>";
inline constexpr const char *kSentenceEnd = "</s>";
inline constexpr const char *kUnknownWord = "<unk>";
inline constexpr double kArpaLog10Floor = -99.0;

// Counts over sentences padded with <s> ... </s> and interpolated absolute
// discounting with the same discount at every order. Throws DomainError on
// an empty corpus, order < 1 or a discount outside [0, 1].
NgramModel NgramTrain(const std::vector<std::vector<std::string>> &sentences,
                      const NgramConfig &config);

}  // namespace csrnnt

#endif  // CSRNNT_LM_NGRAM_H_
