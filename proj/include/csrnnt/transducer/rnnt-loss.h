// include/csrnnt/transducer/rnnt-loss.h

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

#ifndef CSRNNT_TRANSDUCER_RNNT_LOSS_H_
#define CSRNNT_TRANSDUCER_RNNT_LOSS_H_

#include <span>
#include <vector>

namespace csrnnt {

// Emission log-probabilities on the T x (U+1) alignment lattice. Node (t, u)
// has consumed t frames' worth of blanks and u labels. A blank moves to
// (t+1, u), the next label y_{u+1} moves to (u+1). Storage is row-major,
// index t * (U + 1) + u; label(t, U) is unused and kept at 0.
struct NodeLogProbs {
  int frames = 0;  // T
  int labels = 0;  // U
  std::vector<double> blank;
  std::vector<double> label;

  NodeLogProbs() = default;
  NodeLogProbs(int frames, int labels);

  int Index(int t, int u) const { return t * (labels + 1) + u; }
  double &Blank(int t, int u) { return blank[Index(t, u)]; }
  double Blank(int t, int u) const { return blank[Index(t, u)]; }
  double &Label(int t, int u) { return label[Index(t, u)]; }
  double Label(int t, int u) const { return label[Index(t, u)]; }
};

// Selects blank and next-label log-probs from full per-node distributions
// laid out as [t][u][v] over a vocabulary of `vocab_size` symbols.
// Throws DomainError if a target equals `blank_id`, IndexError if a target
// is out of range.
NodeLogProbs GatherNodeLogProbs(std::span<const double> full, int frames,
                                std::span<const int> target, int vocab_size,
                                int blank_id);

// Forward and backward log-probability grids, both T x (U+1).
// log_alpha(t, u): all prefixes reaching node (t, u).
// log_beta(t, u): all suffixes from (t, u) to termination, including the
// final blank emitted at (T-1, U).
struct AlignmentLattice {
  int frames = 0;
  int labels = 0;
  std::vector<double> log_alpha;
  std::vector<double> log_beta;

  double Alpha(int t, int u) const { return log_alpha[t * (labels + 1) + u]; }
  double Beta(int t, int u) const { return log_beta[t * (labels + 1) + u]; }
};

struct RnntLossResult {
  double loss = 0;       // -log P(Y | X)
  double loss_beta = 0;  // same quantity from the backward grid
  NodeLogProbs grad;     // dLoss / d(node log-probs)
  AlignmentLattice lattice;
};

// Exact negative log-likelihood summed over every alignment, with analytic
// gradients from alpha/beta products. Requires T >= 1 and finite inputs
// (DomainError otherwise).
RnntLossResult RnntLoss(const NodeLogProbs &nodes);

// Every alignment of `target` over `frames` frames: sequences of length
// T + U with T blanks and the U labels in order, last symbol blank.
std::vector<std::vector<int>> EnumerateAlignments(int frames,
                                                  std::span<const int> target,
                                                  int blank_id);

// Reference loss: sums the path probability of each enumerated alignment
// explicitly. Throws SizeError if T > 6 or U > 4.
double EnumerateAlignmentsOracle(const NodeLogProbs &nodes);

// Removes blanks; repeated labels are kept.
std::vector<int> CollapseAlignment(std::span<const int> alignment,
                                   int blank_id);

double LogAdd(double a, double b);

}  // namespace csrnnt

#endif  // CSRNNT_TRANSDUCER_RNNT_LOSS_H_
