// include/csrnnt/text/bpe.h

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

#ifndef CSRNNT_TEXT_BPE_H_
#define CSRNNT_TEXT_BPE_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace csrnnt {

// Byte-pair-encoding model for English words. A word is first split into
// characters with the end-of-word marker attached to the last one
// ("low" -> "l" "o" "w</w>"); merges are then applied in learned order.
struct BpeModel {
  static constexpr const char *kEndOfWord = "</w>";

  std::vector<std::pair<std::string, std::string>> merges;
  std::set<std::string> alphabet;  // base characters seen at learn time

  // Every unit the model can emit for words over its alphabet: each
  // character with and without the marker, plus every merge result.
  std::set<std::string> Units() const;
};

// Greedy most-frequent-pair merging. Ties go to the lexicographically
// smallest (left, right) pair. Stops after `num_merges` merges or when no
// pair occurs at least twice. Throws DomainError on an empty corpus.
BpeModel BpeLearn(const std::map<std::string, int64_t> &word_counts,
                  int num_merges);

// Splits `word` into wordpieces. Characters outside the alphabet stay as
// single-character units.
std::vector<std::string> BpeEncode(const BpeModel &model,
                                   const std::string &word);

// Concatenates wordpieces back into words, a word ending at each piece that
// carries the end-of-word marker. A trailing unterminated run becomes a
// final word.
std::vector<std::string> JoinWordpieces(const std::vector<std::string> &pieces);

bool EndsWord(const std::string &piece);

// "bpe-v1 <num_merges>" header then one "left right" merge per line.
void WriteBpeModel(const BpeModel &model, std::ostream &os);
BpeModel ReadBpeModel(std::istream &is);

}  // namespace csrnnt

#endif  // CSRNNT_TEXT_BPE_H_
