// include/csrnnt/transducer/joint.h

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

#ifndef CSRNNT_TRANSDUCER_JOINT_H_
#define CSRNNT_TRANSDUCER_JOINT_H_

#include <span>

#include "csrnnt/nn/tensor.h"

namespace csrnnt {

// Joint network evaluated on the whole T x (U+1) grid. Row t * (U+1) + u of
// each matrix belongs to node (t, u).
//
//   hidden(t, u)    = tanh(enc_proj(t) + pred_proj(u))
//   log_probs(t, u) = log_softmax(hidden(t, u) * output + output_bias)
//
// enc_proj = encoder outputs * W_enc, pred_proj = prediction outputs *
// W_pred + b; together they form W1 * [h_t ; p_u] + b1.
template <typename Real>
struct JointGrid {
  Tensor2<Real> hidden;     // T(U+1) x joint_dim
  Tensor2<Real> log_probs;  // T(U+1) x vocab
};

// Gradients flowing out of the grid.
template <typename Real>
struct JointGridGrad {
  Tensor2<Real> enc_proj;     // T x joint_dim
  Tensor2<Real> pred_proj;    // (U+1) x joint_dim
  Tensor2<Real> output;       // joint_dim x vocab
  Tensor2<Real> output_bias;  // 1 x vocab
};

// Parallel over frames with OpenMP. Each frame is an independent block, so
// the result is bit-identical to the serial version for any thread count.
template <typename Real>
void ComputeJointGrid(const Tensor2<Real> &enc_proj,
                      const Tensor2<Real> &pred_proj,
                      const Tensor2<Real> &output,
                      const Tensor2<Real> &output_bias, JointGrid<Real> *grid);

// Single-threaded reference, kept for tests and the benchmark.
template <typename Real>
void ComputeJointGridSerial(const Tensor2<Real> &enc_proj,
                            const Tensor2<Real> &pred_proj,
                            const Tensor2<Real> &output,
                            const Tensor2<Real> &output_bias,
                            JointGrid<Real> *grid);

// Backward through the grid given dLoss/d(blank log-prob) and
// dLoss/d(next-label log-prob) per node (row-major T x (U+1), as in
// NodeLogProbs). Per-frame work runs in parallel; reductions over frames
// run in a fixed order.
template <typename Real>
JointGridGrad<Real> JointGridBackward(const JointGrid<Real> &grid,
                                      const Tensor2<Real> &output,
                                      std::span<const int> target, int blank_id,
                                      std::span<const double> grad_blank,
                                      std::span<const double> grad_label,
                                      int frames);

}  // namespace csrnnt

#endif  // CSRNNT_TRANSDUCER_JOINT_H_
