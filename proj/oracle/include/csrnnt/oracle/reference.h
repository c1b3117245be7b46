// oracle/include/csrnnt/oracle/reference.h

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

#ifndef CSRNNT_ORACLE_REFERENCE_H_
#define CSRNNT_ORACLE_REFERENCE_H_

// Slow, independent re-implementations used only to check the real code.

#include <functional>
#include <vector>

#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/nn/lstm.h"
#include "csrnnt/transducer/model.h"

namespace csrnnt::oracle {

using Vec = std::vector<double>;

struct ScalarLstmResult {
  std::vector<Vec> outputs;
  Vec h, c;
};

// Textbook LSTM recurrence with explicit loops over every weight.
ScalarLstmResult ScalarLstm(const LstmParams<double> &params,
                            const std::vector<Vec> &inputs, const Vec &h0,
                            const Vec &c0);

// z = W2 tanh(W1 [h ; p] + b1) + b2 evaluated entry by entry.
Vec ScalarJointLogits(const TransducerModel<double> &model, const Vec &enc,
                      const Vec &pred);

struct ExhaustiveResult {
  std::vector<int> tokens;
  double log_prob = 0;
  double runner_up_gap = 0;  // log-prob margin to the second best sequence
  int num_sequences = 0;
};

// Enumerates every emission path (per frame: 0..max_symbols_per_frame
// labels, then blank), sums path probabilities per label sequence and
// returns the most probable sequence (ties: lexicographically smallest).
// Re-weighting follows config for off and fixed modes.
ExhaustiveResult ExhaustiveDecode(const TransducerModel<double> &model,
                                  const DecoderSymbols &symbols,
                                  const Tensor2<double> &features,
                                  const DecodeConfig &config);

// Central difference of f at every entry of *x (restored afterwards).
std::vector<double> CentralDifferences(double *x, size_t n,
                                       const std::function<double()> &f,
                                       double eps);

// |a - b| / max(|a|, |b|); pairs where both magnitudes are below `floor`
// are compared absolutely against floor instead.
double RelativeError(double a, double b, double floor);

}  // namespace csrnnt::oracle

#endif  // CSRNNT_ORACLE_REFERENCE_H_
