// src/lm/ngram.cc

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

#include "csrnnt/lm/ngram.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "csrnnt/base/errors.h"

namespace csrnnt {

namespace {

std::string JoinKey(std::span<const std::string> tokens) {
  std::string key;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += ' ';
    key += tokens[i];
  }
  return key;
}

std::vector<std::string> SplitKey(const std::string &key) {
  std::vector<std::string> out;
  std::istringstream ss(key);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

double ToLog10(double p) {
  return p > 0 ? std::log10(p) : kArpaLog10Floor;
}

double FromLog10(double l) {
  return l <= kArpaLog10Floor ? 0.0 : std::pow(10.0, l);
}

}  // namespace

NgramModel::NgramModel(int order, double discount,
                       std::vector<std::string> vocab,
                       std::vector<std::unordered_map<std::string, Entry>> tables)
    : order_(order),
      discount_(discount),
      vocab_(std::move(vocab)),
      tables_(std::move(tables)) {
  for (const auto &w : vocab_) known_[w] = true;
}

const NgramModel::Entry *NgramModel::Find(
    std::span<const std::string> ngram) const {
  if (ngram.empty() || ngram.size() > tables_.size()) return nullptr;
  const auto &table = tables_[ngram.size() - 1];
  auto it = table.find(JoinKey(ngram));
  return it == table.end() ? nullptr : &it->second;
}

double NgramModel::Prob(std::span<const std::string> context,
                        const std::string &word) const {
  const std::string &w = known_.count(word) ? word : std::string(kUnknownWord);
  const size_t max_ctx = static_cast<size_t>(std::max(order_ - 1, 0));
  if (context.size() > max_ctx) context = context.last(max_ctx);
  std::vector<std::string> ngram(context.begin(), context.end());
  ngram.push_back(w);
  double backoff = 1.0;
  size_t start = 0;
  while (true) {
    std::span<const std::string> current(ngram.data() + start,
                                         ngram.size() - start);
    if (const Entry *e = Find(current)) return backoff * e->prob;
    if (current.size() == 1) return 0.0;
    if (const Entry *ctx = Find(current.first(current.size() - 1))) {
      backoff *= ctx->backoff;
    }
    ++start;
  }
}

double NgramModel::LogProb(const std::vector<std::string> &tokens,
                           bool include_end) const {
  std::vector<std::string> history{kSentenceStart};
  double total = 0;
  auto add = [&](const std::string &w) {
    const double p = Prob(history, w);
    total += p > 0 ? std::log(p) : kArpaLog10Floor * std::log(10.0);
    history.push_back(w);
  };
  for (const auto &t : tokens) add(t);
  if (include_end) add(kSentenceEnd);
  return total;
}

std::vector<std::vector<std::string>> NgramModel::Contexts(int length) const {
  std::set<std::string> keys;
  if (length >= 0 && length + 1 <= static_cast<int>(tables_.size())) {
    for (const auto &[key, entry] : tables_[length]) {
      auto toks = SplitKey(key);
      toks.pop_back();
      keys.insert(JoinKey(toks));
    }
  }
  std::vector<std::vector<std::string>> out;
  for (const auto &k : keys) out.push_back(SplitKey(k));
  return out;
}

NgramModel NgramTrain(const std::vector<std::vector<std::string>> &sentences,
                      const NgramConfig &config) {
  if (config.order < 1) throw DomainError("NgramTrain: order must be >= 1");
  if (!(config.discount >= 0.0 && config.discount <= 1.0)) {
    throw DomainError("NgramTrain: discount must be in [0, 1]");
  }
  if (sentences.empty()) throw DomainError("NgramTrain: empty corpus");
  const int order = config.order;
  const double d = config.discount;

  std::set<std::string> types{kSentenceEnd, kUnknownWord};
  // counts[k][key] for (k+1)-grams; context_total/context_types per context.
  std::vector<std::map<std::string, double>> counts(order);
  std::vector<std::map<std::string, std::pair<double, double>>> ctx_stats(order);
  for (const auto &s : sentences) {
    std::vector<std::string> padded{kSentenceStart};
    for (const auto &w : s) {
      if (w == kSentenceStart || w == kSentenceEnd) {
        throw DomainError("NgramTrain: sentence contains a boundary marker");
      }
      padded.push_back(w);
      types.insert(w);
    }
    padded.push_back(kSentenceEnd);
    for (size_t i = 1; i < padded.size(); ++i) {
      for (int k = 0; k < order && static_cast<int>(i) - k >= 0; ++k) {
        std::span<const std::string> gram(padded.data() + i - k, k + 1);
        counts[k][JoinKey(gram)] += 1;
      }
    }
  }
  for (int k = 0; k < order; ++k) {
    for (const auto &[key, c] : counts[k]) {
      auto toks = SplitKey(key);
      toks.pop_back();
      auto &stats = ctx_stats[k][JoinKey(toks)];
      stats.first += c;
      stats.second += 1;
    }
  }

  std::vector<std::string> vocab(types.begin(), types.end());
  std::vector<std::unordered_map<std::string, NgramModel::Entry>> tables(order);

  // Unigrams: interpolate with the uniform distribution over the vocab.
  {
    const auto &[total, distinct] = ctx_stats[0][""];
    const double uniform = 1.0 / static_cast<double>(vocab.size());
    const double gamma = d * distinct / total;
    for (const auto &w : vocab) {
      auto it = counts[0].find(w);
      const double c = it == counts[0].end() ? 0.0 : it->second;
      tables[0][w].prob = std::max(c - d, 0.0) / total + gamma * uniform;
    }
    tables[0][kSentenceStart].prob = 0.0;
  }

  NgramModel partial;
  for (int k = 1; k < order; ++k) {
    // Backoff weights of the order-k contexts live on the k-gram entries.
    for (const auto &[ctx, stats] : ctx_stats[k]) {
      tables[k - 1][ctx].backoff = d * stats.second / stats.first;
    }
    partial = NgramModel(k, d, vocab, tables);
    for (const auto &[key, c] : counts[k]) {
      auto toks = SplitKey(key);
      const std::string w = toks.back();
      toks.pop_back();
      const std::string ctx = JoinKey(toks);
      const auto &stats = ctx_stats[k].at(ctx);
      const double gamma = d * stats.second / stats.first;
      std::span<const std::string> lower(toks.data() + 1, toks.size() - 1);
      tables[k][key].prob =
          std::max(c - d, 0.0) / stats.first + gamma * partial.Prob(lower, w);
    }
  }
  return NgramModel(order, d, std::move(vocab), std::move(tables));
}

void NgramModel::WriteArpa(std::ostream &os) const {
  os << "# csrnnt n-gram model: interpolated absolute discounting\n";
  os << "# order=" << order_ << " discount=" << std::setprecision(17)
     << discount_ << "\n\n";
  os << "\\data\\\n";
  for (size_t k = 0; k < tables_.size(); ++k) {
    os << "ngram " << k + 1 << "=" << tables_[k].size() << "\n";
  }
  std::vector<std::set<std::string>> contexts(tables_.size());
  for (size_t k = 1; k < tables_.size(); ++k) {
    for (const auto &[key, e] : tables_[k]) {
      auto toks = SplitKey(key);
      toks.pop_back();
      contexts[k - 1].insert(JoinKey(toks));
    }
  }
  os << std::setprecision(17);
  for (size_t k = 0; k < tables_.size(); ++k) {
    os << "\n\\" << k + 1 << "-grams:\n";
    std::map<std::string, Entry> sorted(tables_[k].begin(), tables_[k].end());
    for (const auto &[key, e] : sorted) {
      os << ToLog10(e.prob) << '\t' << key;
      if (contexts[k].count(key)) os << '\t' << ToLog10(e.backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

NgramModel NgramModel::ReadArpa(std::istream &is) {
  std::string line;
  double discount = 0;
  std::vector<size_t> declared;
  std::vector<std::unordered_map<std::string, Entry>> tables;
  int section = -1;
  bool in_data = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("discount=");
      if (pos != std::string::npos) discount = std::stod(line.substr(pos + 9));
      continue;
    }
    if (line == "\\data\\") {
      in_data = true;
      continue;
    }
    if (line == "\\end\\") break;
    if (line.rfind("ngram ", 0) == 0 && in_data && section < 0) {
      const auto eq = line.find('=');
      declared.push_back(std::stoul(line.substr(eq + 1)));
      continue;
    }
    if (line[0] == '\\') {
      section = std::stoi(line.substr(1)) - 1;
      if (section < 0 || section >= static_cast<int>(declared.size())) {
        throw IoError("arpa: unexpected section '" + line + "'");
      }
      if (tables.size() < declared.size()) tables.resize(declared.size());
      continue;
    }
    if (section < 0) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (fields.size() < 2 || fields.size() > 3) {
      throw IoError("arpa: bad entry '" + line + "'");
    }
    Entry e;
    e.prob = FromLog10(std::stod(fields[0]));
    if (fields.size() == 3) e.backoff = FromLog10(std::stod(fields[2]));
    tables[section][fields[1]] = e;
  }
  if (tables.empty()) throw IoError("arpa: no n-gram sections");
  for (size_t k = 0; k < tables.size(); ++k) {
    if (tables[k].size() != declared[k]) {
      throw IoError("arpa: " + std::to_string(k + 1) + "-gram count mismatch");
    }
  }
  std::vector<std::string> vocab;
  for (const auto &[w, e] : tables[0]) {
    if (w != kSentenceStart) vocab.push_back(w);
  }
  std::sort(vocab.begin(), vocab.end());
  const int order = static_cast<int>(tables.size());
  return NgramModel(order, discount, std::move(vocab), std::move(tables));
}

}  // namespace csrnnt
