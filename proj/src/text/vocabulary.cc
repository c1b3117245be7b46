// src/text/vocabulary.cc

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

#include "csrnnt/text/vocabulary.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/base/utf8.h"

namespace csrnnt {

std::string_view SymbolKindName(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::kBlank:
      return "blank";
    case SymbolKind::kLanguageId:
      return "language_id";
    case SymbolKind::kMandarinChar:
      return "mandarin_char";
    case SymbolKind::kEnglishWordpiece:
      return "english_wordpiece";
  }
  return "blank";
}

SymbolKind ParseSymbolKind(std::string_view name) {
  for (auto kind : {SymbolKind::kBlank, SymbolKind::kLanguageId,
                    SymbolKind::kMandarinChar, SymbolKind::kEnglishWordpiece}) {
    if (SymbolKindName(kind) == name) return kind;
  }
  throw DomainError("unknown symbol kind '" + std::string(name) + "'");
}

Vocabulary::Vocabulary() {
  Add({std::string(kBlankSurface), LanguageAttr::kNeutral, SymbolKind::kBlank});
  Add({std::string(kMandarinTag), LanguageAttr::kMandarin,
       SymbolKind::kLanguageId});
  Add({std::string(kEnglishTag), LanguageAttr::kEnglish,
       SymbolKind::kLanguageId});
}

int Vocabulary::Add(const Symbol &symbol) {
  if (index_.count(symbol.surface)) {
    throw DomainError("vocabulary: duplicate symbol '" + symbol.surface + "'");
  }
  const bool ok =
      (symbol.kind == SymbolKind::kBlank && symbols_.empty()) ||
      (symbol.kind == SymbolKind::kLanguageId && IsLanguageTag(symbol.surface)) ||
      (symbol.kind == SymbolKind::kMandarinChar &&
       symbol.lang == LanguageAttr::kMandarin) ||
      (symbol.kind == SymbolKind::kEnglishWordpiece &&
       symbol.lang == LanguageAttr::kEnglish);
  if (!ok) {
    throw DomainError("vocabulary: symbol '" + symbol.surface +
                      "' has inconsistent kind/language");
  }
  const int id = size();
  symbols_.push_back(symbol);
  index_.emplace(symbol.surface, id);
  return id;
}

const Symbol &Vocabulary::at(int id) const {
  if (id < 0 || id >= size()) {
    throw IndexError("vocabulary: id " + std::to_string(id) +
                     " out of range [0, " + std::to_string(size()) + ")");
  }
  return symbols_[id];
}

std::optional<int> Vocabulary::Find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::IdOf(std::string_view surface) const {
  auto id = Find(surface);
  if (!id) {
    throw DomainError("vocabulary: unknown symbol '" + std::string(surface) +
                      "'");
  }
  return *id;
}

std::vector<LanguageAttr> Vocabulary::Languages() const {
  std::vector<LanguageAttr> out;
  for (const auto &s : symbols_) out.push_back(s.lang);
  return out;
}

std::vector<SymbolKind> Vocabulary::Kinds() const {
  std::vector<SymbolKind> out;
  for (const auto &s : symbols_) out.push_back(s.kind);
  return out;
}

uint64_t Vocabulary::Hash() const {
  std::ostringstream os;
  WriteVocabulary(*this, os);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Vocabulary BuildVocab(const std::vector<std::vector<Token>> &corpus,
                      const BpeModel &bpe) {
  std::set<std::string> mandarin;
  std::set<std::string> english_alphabet;
  std::set<std::string> wordpieces;
  std::set<std::string> untaggable;
  bool any = false;
  for (const auto &utt : corpus) {
    for (const auto &tok : utt) {
      any = true;
      if (IsLanguageTag(tok.text)) continue;
      if (tok.lang == LanguageAttr::kMandarin) {
        for (const auto &c : SplitUtf8Chars(tok.text)) mandarin.insert(c);
      } else if (tok.lang == LanguageAttr::kEnglish) {
        for (const auto &c : SplitUtf8Chars(tok.text)) english_alphabet.insert(c);
        for (auto &p : BpeEncode(bpe, tok.text)) wordpieces.insert(std::move(p));
      } else {
        untaggable.insert(tok.text);
      }
    }
  }
  if (!any) throw DomainError("BuildVocab: empty corpus");
  if (!untaggable.empty()) {
    std::string msg = "BuildVocab: tokens of no output language:";
    for (const auto &t : untaggable) msg += " '" + t + "'";
    throw DomainError(msg);
  }
  for (const auto &c : english_alphabet) {
    wordpieces.insert(c);
    wordpieces.insert(c + BpeModel::kEndOfWord);
  }
  for (const auto &[left, right] : bpe.merges) wordpieces.insert(left + right);

  Vocabulary vocab;
  for (const auto &c : mandarin) {
    vocab.Add({c, LanguageAttr::kMandarin, SymbolKind::kMandarinChar});
  }
  for (const auto &p : wordpieces) {
    vocab.Add({p, LanguageAttr::kEnglish, SymbolKind::kEnglishWordpiece});
  }
  return vocab;
}

std::vector<int> EncodeTranscript(const Vocabulary &vocab, const BpeModel &bpe,
                                  const std::vector<std::string> &tokens) {
  std::vector<int> ids;
  for (const auto &tok : tokens) {
    if (IsLanguageTag(tok)) {
      ids.push_back(vocab.IdOf(tok));
      continue;
    }
    switch (ClassifyTokenLanguage(tok)) {
      case LanguageAttr::kMandarin:
        for (const auto &c : SplitUtf8Chars(tok)) ids.push_back(vocab.IdOf(c));
        break;
      case LanguageAttr::kEnglish:
        for (const auto &p : BpeEncode(bpe, tok)) ids.push_back(vocab.IdOf(p));
        break;
      case LanguageAttr::kNeutral:
        throw DomainError("EncodeTranscript: token '" + tok +
                          "' has no output language");
    }
  }
  return ids;
}

std::vector<std::string> DecodeToWords(const Vocabulary &vocab,
                                       const std::vector<int> &ids) {
  std::vector<std::string> words;
  std::vector<std::string> pending;
  auto flush = [&] {
    for (auto &w : JoinWordpieces(pending)) words.push_back(std::move(w));
    pending.clear();
  };
  for (int id : ids) {
    const Symbol &s = vocab.at(id);
    if (s.kind == SymbolKind::kBlank) continue;
    if (s.kind == SymbolKind::kEnglishWordpiece) {
      pending.push_back(s.surface);
      if (EndsWord(s.surface)) flush();
      continue;
    }
    flush();
    words.push_back(s.surface);
  }
  flush();
  return words;
}

void WriteVocabulary(const Vocabulary &vocab, std::ostream &os) {
  for (int i = 0; i < vocab.size(); ++i) {
    const Symbol &s = vocab.at(i);
    os << i << '\t' << s.surface << '\t' << LanguageName(s.lang) << '\t'
       << SymbolKindName(s.kind) << '\n';
  }
}

Vocabulary ReadVocabulary(std::istream &is) {
  Vocabulary vocab;
  std::string line;
  int expected = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (fields.size() != 4) {
      throw IoError("vocabulary: bad line '" + line + "'");
    }
    if (std::stoi(fields[0]) != expected) {
      throw IoError("vocabulary: expected index " + std::to_string(expected) +
                    ", got " + fields[0]);
    }
    const Symbol s{fields[1], ParseLanguageName(fields[2]),
                   ParseSymbolKind(fields[3])};
    if (expected < 3) {
      const Symbol &reserved = vocab.at(expected);
      if (reserved.surface != s.surface || reserved.kind != s.kind) {
        throw IoError("vocabulary: reserved index " + fields[0] +
                      " must be '" + reserved.surface + "'");
      }
    } else {
      vocab.Add(s);
    }
    ++expected;
  }
  if (expected < 3) throw IoError("vocabulary: missing reserved symbols");
  return vocab;
}

}  // namespace csrnnt
