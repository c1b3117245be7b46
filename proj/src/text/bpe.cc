// src/text/bpe.cc

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

#include "csrnnt/text/bpe.h"

#include <istream>
#include <ostream>
#include <sstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/base/utf8.h"

namespace csrnnt {

namespace {

using Symbols = std::vector<std::string>;
using Pair = std::pair<std::string, std::string>;

Symbols InitialSymbols(const std::string &word) {
  Symbols syms = SplitUtf8Chars(word);
  if (!syms.empty()) syms.back() += BpeModel::kEndOfWord;
  return syms;
}

void ApplyMerge(const Pair &merge, Symbols *syms) {
  if (syms->size() < 2) return;
  Symbols out;
  out.reserve(syms->size());
  size_t i = 0;
  while (i < syms->size()) {
    if (i + 1 < syms->size() && (*syms)[i] == merge.first &&
        (*syms)[i + 1] == merge.second) {
      out.push_back(merge.first + merge.second);
      i += 2;
    } else {
      out.push_back((*syms)[i]);
      ++i;
    }
  }
  syms->swap(out);
}

}  // namespace

std::set<std::string> BpeModel::Units() const {
  std::set<std::string> units;
  for (const auto &c : alphabet) {
    units.insert(c);
    units.insert(c + kEndOfWord);
  }
  for (const auto &[left, right] : merges) units.insert(left + right);
  return units;
}

BpeModel BpeLearn(const std::map<std::string, int64_t> &word_counts,
                  int num_merges) {
  if (num_merges < 0) throw DomainError("BpeLearn: negative merge count");
  std::vector<std::pair<Symbols, int64_t>> words;
  BpeModel model;
  for (const auto &[word, count] : word_counts) {
    if (word.empty() || count <= 0) continue;
    for (const auto &c : SplitUtf8Chars(word)) model.alphabet.insert(c);
    words.emplace_back(InitialSymbols(word), count);
  }
  if (words.empty()) throw DomainError("BpeLearn: empty corpus");

  for (int m = 0; m < num_merges; ++m) {
    std::map<Pair, int64_t> pair_counts;
    for (const auto &[syms, count] : words) {
      for (size_t i = 0; i + 1 < syms.size(); ++i) {
        pair_counts[{syms[i], syms[i + 1]}] += count;
      }
    }
    // std::map iterates in lexicographic pair order, so the first maximum
    // found is the tie-break winner.
    const Pair *best = nullptr;
    int64_t best_count = 0;
    for (const auto &[pair, count] : pair_counts) {
      if (count > best_count) {
        best = &pair;
        best_count = count;
      }
    }
    if (best == nullptr || best_count < 2) break;
    const Pair merge = *best;
    model.merges.push_back(merge);
    for (auto &entry : words) ApplyMerge(merge, &entry.first);
  }
  return model;
}

std::vector<std::string> BpeEncode(const BpeModel &model,
                                   const std::string &word) {
  Symbols syms = InitialSymbols(word);
  for (const auto &merge : model.merges) ApplyMerge(merge, &syms);
  return syms;
}

bool EndsWord(const std::string &piece) {
  const std::string_view marker = BpeModel::kEndOfWord;
  return piece.size() >= marker.size() &&
         piece.compare(piece.size() - marker.size(), marker.size(), marker) ==
             0;
}

std::vector<std::string> JoinWordpieces(
    const std::vector<std::string> &pieces) {
  std::vector<std::string> words;
  std::string current;
  const size_t marker_len = std::string_view(BpeModel::kEndOfWord).size();
  for (const auto &p : pieces) {
    if (EndsWord(p)) {
      current.append(p, 0, p.size() - marker_len);
      words.push_back(std::move(current));
      current.clear();
    } else {
      current += p;
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

void WriteBpeModel(const BpeModel &model, std::ostream &os) {
  os << "bpe-v1 " << model.merges.size() << "\n";
  for (const auto &[left, right] : model.merges) {
    os << left << ' ' << right << "\n";
  }
}

BpeModel ReadBpeModel(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("bpe model: missing header");
  std::istringstream header(line);
  std::string magic;
  int64_t count = -1;
  header >> magic >> count;
  if (magic != "bpe-v1" || count < 0) {
    throw IoError("bpe model: bad header '" + line + "'");
  }
  BpeModel model;
  for (int64_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) {
      throw IoError("bpe model: expected " + std::to_string(count) +
                    " merges, got " + std::to_string(i));
    }
    const auto space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 >= line.size()) {
      throw IoError("bpe model: bad merge line '" + line + "'");
    }
    model.merges.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  // The file does not list the alphabet; recover it from the merge units.
  for (const auto &[left, right] : model.merges) {
    for (const auto *unit : {&left, &right}) {
      std::string u = *unit;
      if (EndsWord(u)) u.resize(u.size() - std::string_view(BpeModel::kEndOfWord).size());
      for (const auto &c : SplitUtf8Chars(u)) model.alphabet.insert(c);
    }
  }
  return model;
}

}  // namespace csrnnt
