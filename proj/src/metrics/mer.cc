// src/metrics/mer.cc

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

#include "csrnnt/metrics/mer.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "csrnnt/base/errors.h"
#include "csrnnt/base/utf8.h"

namespace csrnnt {

std::vector<ScoringUnit> TokenizeMixed(const std::vector<std::string> &tokens) {
  std::vector<ScoringUnit> units;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const LanguageAttr lang = ClassifyTokenLanguage(tokens[i]);
    if (lang == LanguageAttr::kMandarin) {
      for (auto &ch : SplitUtf8Chars(tokens[i])) {
        units.push_back({std::move(ch), lang, static_cast<int>(i)});
      }
    } else {
      units.push_back({tokens[i], lang, static_cast<int>(i)});
    }
  }
  return units;
}

EditCounts &EditCounts::operator+=(const EditCounts &o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  return *this;
}

EditAlignment EditDistance(const std::vector<ScoringUnit> &ref,
                           const std::vector<ScoringUnit> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<int> cost((n + 1) * (m + 1));
  auto at = [&](size_t i, size_t j) -> int & { return cost[i * (m + 1) + j]; };
  for (size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) at(0, j) = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const int sub = at(i - 1, j - 1) + (ref[i - 1].text == hyp[j - 1].text ? 0 : 1);
      at(i, j) = std::min({sub, at(i, j - 1) + 1, at(i - 1, j) + 1});
    }
  }

  EditAlignment out;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1].text == hyp[j - 1].text;
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        out.pairs.push_back({same ? EditOp::kMatch : EditOp::kSubstitution,
                             int(i - 1), int(j - 1)});
        if (!same) ++out.counts.substitutions;
        --i, --j;
        continue;
      }
    }
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      out.pairs.push_back({EditOp::kInsertion, -1, int(j - 1)});
      ++out.counts.insertions;
      --j;
    } else {
      out.pairs.push_back({EditOp::kDeletion, int(i - 1), -1});
      ++out.counts.deletions;
      --i;
    }
  }
  std::reverse(out.pairs.begin(), out.pairs.end());
  return out;
}

double LanguageBreakdown::Rate() const {
  return ref_units ? 100.0 * double(errors.Total()) / double(ref_units) : 0.0;
}

double MerReport::Mer() const {
  return ref_units ? 100.0 * double(errors.Total()) / double(ref_units) : 0.0;
}

namespace {

LanguageBreakdown &BucketFor(MerReport *r, LanguageAttr lang) {
  switch (lang) {
    case LanguageAttr::kMandarin: return r->mandarin;
    case LanguageAttr::kEnglish: return r->english;
    default: return r->neutral;
  }
}

std::unordered_map<std::string, const Utterance *> IndexById(const Corpus &c,
                                                             const char *what) {
  std::unordered_map<std::string, const Utterance *> index;
  for (const auto &u : c) {
    if (!index.emplace(u.id, &u).second) {
      throw DomainError(std::string("duplicate utterance id in ") + what + ": " + u.id);
    }
  }
  return index;
}

}  // namespace

MerReport MerScore(const Corpus &refs, const Corpus &hyps) {
  auto ref_index = IndexById(refs, "references");
  auto hyp_index = IndexById(hyps, "hypotheses");
  std::vector<std::string> missing, extra;
  for (const auto &u : refs) if (!hyp_index.count(u.id)) missing.push_back(u.id);
  for (const auto &u : hyps) if (!ref_index.count(u.id)) extra.push_back(u.id);
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "utterance ids differ;";
    if (!missing.empty()) msg += " missing: " + JoinTokens(missing) + ";";
    if (!extra.empty()) msg += " extra: " + JoinTokens(extra) + ";";
    throw DomainError(msg);
  }

  MerReport report;
  for (const auto &r : refs) {
    const auto ref_units = TokenizeMixed(StripLanguageIds(r.tokens));
    const auto hyp_units = TokenizeMixed(StripLanguageIds(hyp_index.at(r.id)->tokens));
    const auto al = EditDistance(ref_units, hyp_units);
    report.errors += al.counts;
    report.ref_units += static_cast<int64_t>(ref_units.size());
    for (const auto &u : ref_units) ++BucketFor(&report, u.lang).ref_units;
    for (const auto &p : al.pairs) {
      switch (p.op) {
        case EditOp::kMatch: break;
        case EditOp::kSubstitution:
          ++BucketFor(&report, ref_units[p.ref].lang).errors.substitutions;
          break;
        case EditOp::kDeletion:
          ++BucketFor(&report, ref_units[p.ref].lang).errors.deletions;
          break;
        case EditOp::kInsertion:
          ++BucketFor(&report, hyp_units[p.hyp].lang).errors.insertions;
          break;
      }
    }
  }
  return report;
}

void WriteMerReport(const MerReport &report, std::ostream &os) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "MER %.2f\n", report.Mer());
  os << buf;
  std::snprintf(buf, sizeof(buf), "MAN_ERR %.2f\n", report.mandarin.Rate());
  os << buf;
  std::snprintf(buf, sizeof(buf), "ENG_ERR %.2f\n", report.english.Rate());
  os << buf;
  os << "S " << report.errors.substitutions << " I " << report.errors.insertions
     << " D " << report.errors.deletions << "\n";
  os << "REF_UNITS " << report.ref_units << "\n";
}

LidAccuracy LanguageIdAccuracy(const Corpus &refs, const Corpus &tagged_hyps) {
  auto hyp_index = IndexById(tagged_hyps, "hypotheses");
  LidAccuracy acc;
  for (const auto &r : refs) {
    auto it = hyp_index.find(r.id);
    if (it == hyp_index.end()) throw DomainError("missing hypothesis for " + r.id);
    const auto &tagged = it->second->tokens;
    const auto ref_units = TokenizeMixed(StripLanguageIds(r.tokens));
    const auto hyp_units = TokenizeMixed(StripLanguageIds(tagged));
    const auto al = EditDistance(ref_units, hyp_units);
    std::vector<int> ref_of_hyp(hyp_units.size(), -1);
    for (const auto &p : al.pairs) {
      if (p.hyp >= 0) ref_of_hyp[p.hyp] = p.ref;
    }
    // Map each tag to the first hypothesis unit that follows it.
    size_t unit = 0;
    int stripped_index = 0;
    for (const auto &tok : tagged) {
      if (IsLanguageTag(tok)) {
        ++acc.total;
        while (unit < hyp_units.size() && hyp_units[unit].source_token < stripped_index) {
          ++unit;
        }
        if (unit < hyp_units.size() && ref_of_hyp[unit] >= 0 &&
            ref_units[ref_of_hyp[unit]].lang ==
                (tok == kMandarinTag ? LanguageAttr::kMandarin : LanguageAttr::kEnglish)) {
          ++acc.correct;
        }
      } else {
        ++stripped_index;
      }
    }
  }
  return acc;
}

}  // namespace csrnnt
