// include/csrnnt/text/vocabulary.h

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

#ifndef CSRNNT_TEXT_VOCABULARY_H_
#define CSRNNT_TEXT_VOCABULARY_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "csrnnt/text/bpe.h"
#include "csrnnt/text/language.h"

namespace csrnnt {

enum class SymbolKind { kBlank, kLanguageId, kMandarinChar, kEnglishWordpiece };

std::string_view SymbolKindName(SymbolKind kind);
SymbolKind ParseSymbolKind(std::string_view name);

struct Symbol {
  std::string surface;
  LanguageAttr lang = LanguageAttr::kNeutral;
  SymbolKind kind = SymbolKind::kBlank;
};

// Output symbol table of the transducer. Indices 0, 1, 2 are always blank,
// <chn> and <eng>. Language-ID symbols carry the language they announce.
class Vocabulary {
 public:
  static constexpr int kBlank = 0;
  static constexpr int kMandarinId = 1;
  static constexpr int kEnglishId = 2;
  static constexpr std::string_view kBlankSurface = "<blank>";

  // Holds only the three reserved symbols.
  Vocabulary();

  // Appends a symbol; throws DomainError on a duplicate surface or on a
  // kind/language combination that violates the table invariants.
  int Add(const Symbol &symbol);

  int size() const { return static_cast<int>(symbols_.size()); }
  const Symbol &at(int id) const;
  std::optional<int> Find(std::string_view surface) const;
  int IdOf(std::string_view surface) const;  // throws DomainError

  std::vector<LanguageAttr> Languages() const;
  std::vector<SymbolKind> Kinds() const;

  // FNV-1a over the serialized table; checkpoints record it so decoding
  // can refuse a mismatched vocabulary.
  uint64_t Hash() const;

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, int> index_;
};

// {blank, <chn>, <eng>} + sorted Mandarin characters seen in the corpus +
// sorted English wordpieces producible by `bpe` over the corpus alphabet.
// Tokens that are neither Mandarin nor English are collected and reported
// in a single DomainError; so is an empty corpus.
Vocabulary BuildVocab(const std::vector<std::vector<Token>> &corpus,
                      const BpeModel &bpe);

// Maps transcript tokens (tags allowed) to symbol ids: tags to their ids,
// Mandarin tokens to one id per character, English tokens to wordpieces.
std::vector<int> EncodeTranscript(const Vocabulary &vocab,
                                  const BpeModel &bpe,
                                  const std::vector<std::string> &tokens);

// Inverse of EncodeTranscript at the word level: wordpieces are joined into
// words, Mandarin characters and tags become one token each. Blank ids are
// skipped.
std::vector<std::string> DecodeToWords(const Vocabulary &vocab,
                                       const std::vector<int> &ids);

// One line per symbol: index<TAB>surface<TAB>lang<TAB>kind.
void WriteVocabulary(const Vocabulary &vocab, std::ostream &os);
Vocabulary ReadVocabulary(std::istream &is);

}  // namespace csrnnt

#endif  // CSRNNT_TEXT_VOCABULARY_H_
