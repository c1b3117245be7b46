// include/csrnnt/text/corpus.h

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

#ifndef CSRNNT_TEXT_CORPUS_H_
#define CSRNNT_TEXT_CORPUS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace csrnnt {

struct Utterance {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const Utterance &) const = default;
};

using Corpus = std::vector<Utterance>;

// utt_id<TAB>space-separated tokens, one utterance per line.
Corpus ReadCorpus(std::istream &is);
Corpus ReadCorpusFile(const std::string &path);
void WriteCorpus(const Corpus &corpus, std::ostream &os);
void WriteCorpusFile(const Corpus &corpus, const std::string &path);

std::vector<std::string> SplitWhitespace(const std::string &text);
std::string JoinTokens(const std::vector<std::string> &tokens);

// Counts of English-classified tokens, the input to BpeLearn.
std::map<std::string, int64_t> EnglishWordCounts(const Corpus &corpus);

// Tags every utterance with language IDs (existing tags are replaced).
Corpus TagCorpus(const Corpus &corpus);
Corpus UntagCorpus(const Corpus &corpus);

}  // namespace csrnnt

#endif  // CSRNNT_TEXT_CORPUS_H_
