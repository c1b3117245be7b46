// src/text/language.cc

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

#include "csrnnt/text/language.h"

#include "csrnnt/base/errors.h"
#include "csrnnt/base/utf8.h"

namespace csrnnt {

std::string_view LanguageName(LanguageAttr lang) {
  switch (lang) {
    case LanguageAttr::kMandarin:
      return "mandarin";
    case LanguageAttr::kEnglish:
      return "english";
    case LanguageAttr::kNeutral:
      break;
  }
  return "neutral";
}

LanguageAttr ParseLanguageName(std::string_view name) {
  if (name == "mandarin") return LanguageAttr::kMandarin;
  if (name == "english") return LanguageAttr::kEnglish;
  if (name == "neutral") return LanguageAttr::kNeutral;
  throw DomainError("unknown language name '" + std::string(name) + "'");
}

bool IsCjkIdeograph(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||    // basic block
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0x20000 && cp <= 0x2A6DF) ||  // extension B
         (cp >= 0x2A700 && cp <= 0x2EBEF) ||  // extensions C-F
         (cp >= 0x30000 && cp <= 0x3134F);    // extension G
}

LanguageAttr ClassifyTokenLanguage(std::string_view token) {
  if (token.empty()) throw DomainError("ClassifyTokenLanguage: empty token");
  const std::u32string cps = DecodeUtf8(token);
  bool all_english = true;
  for (char32_t cp : cps) {
    if (IsCjkIdeograph(cp)) return LanguageAttr::kMandarin;
    const bool letter = (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (!letter && cp != '\'' && cp != '-') all_english = false;
  }
  return all_english ? LanguageAttr::kEnglish : LanguageAttr::kNeutral;
}

bool IsLanguageTag(std::string_view token) {
  return token == kMandarinTag || token == kEnglishTag;
}

std::string_view TagFor(LanguageAttr lang) {
  if (lang == LanguageAttr::kMandarin) return kMandarinTag;
  if (lang == LanguageAttr::kEnglish) return kEnglishTag;
  throw DomainError("TagFor: neutral has no language tag");
}

std::vector<Token> ClassifyTokens(const std::vector<std::string> &words) {
  std::vector<Token> out;
  out.reserve(words.size());
  for (const auto &w : words) {
    if (w == kMandarinTag) {
      out.push_back({w, LanguageAttr::kMandarin});
    } else if (w == kEnglishTag) {
      out.push_back({w, LanguageAttr::kEnglish});
    } else {
      out.push_back({w, ClassifyTokenLanguage(w)});
    }
  }
  return out;
}

std::vector<Token> InsertLanguageTags(const std::vector<Token> &tokens) {
  std::vector<Token> out;
  out.reserve(tokens.size() + 2);
  LanguageAttr current = LanguageAttr::kNeutral;
  for (const auto &tok : tokens) {
    if (IsLanguageTag(tok.text)) continue;
    if (tok.lang != LanguageAttr::kNeutral && tok.lang != current) {
      out.push_back({std::string(TagFor(tok.lang)), tok.lang});
      current = tok.lang;
    }
    out.push_back(tok);
  }
  return out;
}

std::vector<std::string> StripLanguageIds(
    const std::vector<std::string> &tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) {
    if (!IsLanguageTag(t)) out.push_back(t);
  }
  return out;
}

}  // namespace csrnnt
