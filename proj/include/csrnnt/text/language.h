// include/csrnnt/text/language.h

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

#ifndef CSRNNT_TEXT_LANGUAGE_H_
#define CSRNNT_TEXT_LANGUAGE_H_

#include <string>
#include <string_view>
#include <vector>

namespace csrnnt {

enum class LanguageAttr { kNeutral = 0, kMandarin = 1, kEnglish = 2 };

inline constexpr std::string_view kMandarinTag = "<chn>";
inline constexpr std::string_view kEnglishTag = "<eng>";

std::string_view LanguageName(LanguageAttr lang);  // "mandarin", ...
LanguageAttr ParseLanguageName(std::string_view name);

bool IsCjkIdeograph(char32_t cp);

// Mandarin if any code point is a CJK unified ideograph, English if every
// code point is an ASCII letter, apostrophe or hyphen, Neutral otherwise.
// Throws DomainError on an empty token.
LanguageAttr ClassifyTokenLanguage(std::string_view token);

bool IsLanguageTag(std::string_view token);
std::string_view TagFor(LanguageAttr lang);

struct Token {
  std::string text;
  LanguageAttr lang = LanguageAttr::kNeutral;

  bool operator==(const Token &) const = default;
};

std::vector<Token> ClassifyTokens(const std::vector<std::string> &words);

// Inserts <chn>/<eng> before the first non-neutral token and before every
// token whose language differs from the previous non-neutral token. Neutral
// tokens are transparent. Tags already present in the input are dropped
// first, so the function is idempotent. Tags carry the language they
// announce.
std::vector<Token> InsertLanguageTags(const std::vector<Token> &tokens);

std::vector<std::string> StripLanguageIds(const std::vector<std::string> &tokens);

}  // namespace csrnnt

#endif  // CSRNNT_TEXT_LANGUAGE_H_
