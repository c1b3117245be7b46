// include/csrnnt/metrics/mer.h

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

#ifndef CSRNNT_METRICS_MER_H_
#define CSRNNT_METRICS_MER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "csrnnt/text/corpus.h"
#include "csrnnt/text/language.h"

namespace csrnnt {

struct ScoringUnit {
  std::string text;
  LanguageAttr lang = LanguageAttr::kNeutral;
  int source_token = 0;  // index of the transcript token it came from

  bool operator==(const ScoringUnit &) const = default;
};

// Mandarin-classified tokens become one unit per character; English and
// Neutral tokens stay whole. Language-ID tokens must already be stripped.
std::vector<ScoringUnit> TokenizeMixed(const std::vector<std::string> &tokens);

enum class EditOp { kMatch, kSubstitution, kInsertion, kDeletion };

struct AlignedPair {
  EditOp op;
  int ref = -1;  // -1 for insertions
  int hyp = -1;  // -1 for deletions
};

struct EditCounts {
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;

  int64_t Total() const { return substitutions + insertions + deletions; }
  EditCounts &operator+=(const EditCounts &o);
  bool operator==(const EditCounts &) const = default;
};

struct EditAlignment {
  EditCounts counts;
  std::vector<AlignedPair> pairs;  // in sequence order
};

// Unit-cost Levenshtein over unit texts. Among minimal alignments the
// backtrace prefers substitution (or match), then insertion, then deletion.
EditAlignment EditDistance(const std::vector<ScoringUnit> &ref,
                           const std::vector<ScoringUnit> &hyp);

struct LanguageBreakdown {
  EditCounts errors;
  int64_t ref_units = 0;
  double Rate() const;  // percent; 0 when there are no reference units
};

struct MerReport {
  EditCounts errors;
  int64_t ref_units = 0;
  LanguageBreakdown mandarin;
  LanguageBreakdown english;
  LanguageBreakdown neutral;

  double Mer() const;
};

// Corpus MER. Hypotheses have language IDs stripped first. Throws
// DomainError naming missing and extra utterance ids when the id sets
// differ. Substitutions and deletions are charged to the language of the
// reference unit, insertions to the language of the inserted unit.
MerReport MerScore(const Corpus &refs, const Corpus &hyps);

// MER / MAN_ERR / ENG_ERR / "S n I n D n" lines.
void WriteMerReport(const MerReport &report, std::ostream &os);

// Fraction of emitted language-ID tokens whose language equals the
// reference language of the next scoring unit. The next unit is the first
// hypothesis unit after the tag; its aligned reference unit gives the
// reference language. Tags followed by nothing or by an inserted unit count
// as wrong.
struct LidAccuracy {
  int64_t correct = 0;
  int64_t total = 0;
  double Rate() const { return total ? double(correct) / double(total) : 0.0; }
};
LidAccuracy LanguageIdAccuracy(const Corpus &refs, const Corpus &tagged_hyps);

}  // namespace csrnnt

#endif  // CSRNNT_METRICS_MER_H_
