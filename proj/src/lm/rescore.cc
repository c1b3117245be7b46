// src/lm/rescore.cc

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

#include "csrnnt/lm/rescore.h"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "csrnnt/base/errors.h"

namespace csrnnt {

std::vector<NbestEntry> RescoreNbest(std::vector<NbestEntry> nbest,
                                     const LanguageModel &lm,
                                     const RescoreConfig &config) {
  if (config.nbest < 1) throw DomainError("rescore: nbest must be >= 1");
  if (static_cast<int>(nbest.size()) > config.nbest) nbest.resize(config.nbest);
  for (auto &e : nbest) {
    e.score = e.log_prob;
    if (config.lm_weight != 0.0) e.score += config.lm_weight * lm.LogProb(e.tokens);
    e.score += config.length_penalty * static_cast<double>(e.tokens.size());
  }
  std::stable_sort(nbest.begin(), nbest.end(),
                   [](const NbestEntry &a, const NbestEntry &b) {
                     return a.score > b.score;
                   });
  return nbest;
}

void WriteNbest(const std::vector<NbestEntry> &entries, std::ostream &os) {
  const auto old = os.precision(17);
  for (const auto &e : entries) {
    os << e.utt_id << '\t' << e.rank << '\t' << e.log_prob << '\t';
    for (size_t i = 0; i < e.tokens.size(); ++i) {
      if (i) os << ' ';
      os << e.tokens[i];
    }
    os << '\n';
  }
  os.precision(old);
}

std::vector<NbestEntry> ReadNbest(std::istream &is) {
  std::vector<NbestEntry> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (fields.size() == 3) fields.emplace_back();
    if (fields.size() != 4) throw IoError("nbest: bad line '" + line + "'");
    NbestEntry e;
    e.utt_id = fields[0];
    e.rank = std::stoi(fields[1]);
    e.log_prob = std::stod(fields[2]);
    std::istringstream ts(fields[3]);
    std::string tok;
    while (ts >> tok) e.tokens.push_back(tok);
    e.score = e.log_prob;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace csrnnt
