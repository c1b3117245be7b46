// src/text/corpus.cc

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

#include "csrnnt/text/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/text/language.h"

namespace csrnnt {

std::vector<std::string> SplitWhitespace(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

Corpus ReadCorpus(std::istream &is) {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw IoError("corpus line " + std::to_string(line_no) +
                    ": expected utt_id<TAB>tokens");
    }
    corpus.push_back({line.substr(0, tab), SplitWhitespace(line.substr(tab + 1))});
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus '" + path + "'");
  return ReadCorpus(in);
}

void WriteCorpus(const Corpus &corpus, std::ostream &os) {
  for (const auto &utt : corpus) {
    os << utt.id << '\t' << JoinTokens(utt.tokens) << '\n';
  }
}

void WriteCorpusFile(const Corpus &corpus, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus '" + path + "'");
  WriteCorpus(corpus, out);
}

std::map<std::string, int64_t> EnglishWordCounts(const Corpus &corpus) {
  std::map<std::string, int64_t> counts;
  for (const auto &utt : corpus) {
    for (const auto &tok : utt.tokens) {
      if (!IsLanguageTag(tok) &&
          ClassifyTokenLanguage(tok) == LanguageAttr::kEnglish) {
        ++counts[tok];
      }
    }
  }
  return counts;
}

Corpus TagCorpus(const Corpus &corpus) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto &utt : corpus) {
    Utterance tagged{utt.id, {}};
    for (auto &tok : InsertLanguageTags(ClassifyTokens(utt.tokens))) {
      tagged.tokens.push_back(std::move(tok.text));
    }
    out.push_back(std::move(tagged));
  }
  return out;
}

Corpus UntagCorpus(const Corpus &corpus) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto &utt : corpus) {
    out.push_back({utt.id, StripLanguageIds(utt.tokens)});
  }
  return out;
}

}  // namespace csrnnt
