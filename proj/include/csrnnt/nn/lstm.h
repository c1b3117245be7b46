// include/csrnnt/nn/lstm.h

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

#ifndef CSRNNT_NN_LSTM_H_
#define CSRNNT_NN_LSTM_H_

#include <random>
#include <vector>

#include "csrnnt/nn/tensor.h"

namespace csrnnt {

// Standard LSTM cell without peepholes, row-vector convention:
//
//   [i f g o] = [x_t, h_{t-1}] * weight + bias
//   c_t = sigmoid(f) * c_{t-1} + sigmoid(i) * tanh(g)
//   h_t = sigmoid(o) * tanh(c_t)
//
// `weight` is (input_dim + hidden_dim) x (4 * hidden_dim). Rows
// [0, input_dim) act on the input, the rest on the recurrent state. Gate k
// occupies columns [k * hidden_dim, (k + 1) * hidden_dim) in the order
// input, forget, cell, output; each block is one per-gate matrix.
template <typename Real>
struct LstmParams {
  int input_dim = 0;
  int hidden_dim = 0;
  Tensor2<Real> weight;
  Tensor2<Real> bias;  // 1 x (4 * hidden_dim)

  static LstmParams Zeros(int input_dim, int hidden_dim);
  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases except the
  // forget gate which starts at 1.
  static LstmParams Random(int input_dim, int hidden_dim,
                           std::mt19937_64 &rng);

  template <typename Other>
  LstmParams<Other> Cast() const {
    return {input_dim, hidden_dim, weight.template cast<Other>(),
            bias.template cast<Other>()};
  }
};

template <typename Real>
struct LstmState {
  RowVec<Real> h;
  RowVec<Real> c;

  static LstmState Zeros(int hidden_dim) {
    return {RowVec<Real>::Zero(hidden_dim), RowVec<Real>::Zero(hidden_dim)};
  }
};

// Everything the backward pass needs. Row t of each matrix belongs to step t.
template <typename Real>
struct LstmCache {
  Tensor2<Real> inputs;  // T x input_dim
  Tensor2<Real> h_prev;  // T x H
  Tensor2<Real> c_prev;  // T x H
  Tensor2<Real> gates;   // T x 4H, post-activation
  Tensor2<Real> tanh_c;  // T x H
};

template <typename Real>
struct LstmForwardResult {
  Tensor2<Real> outputs;  // T x H
  LstmState<Real> final_state;
  LstmCache<Real> cache;
};

template <typename Real>
struct LstmGradients {
  LstmParams<Real> params;
  Tensor2<Real> inputs;
  LstmState<Real> init_state;
};

template <typename Real>
LstmForwardResult<Real> LstmForward(const LstmParams<Real> &params,
                                    const Tensor2<Real> &inputs,
                                    const LstmState<Real> &init_state);

// Backprop through time. `grad_outputs` is dLoss/dh_t for every step,
// `grad_final` the gradient arriving at the final (h, c).
template <typename Real>
LstmGradients<Real> LstmBackward(const LstmParams<Real> &params,
                                 const LstmCache<Real> &cache,
                                 const Tensor2<Real> &grad_outputs,
                                 const LstmState<Real> &grad_final);

// One step of the recurrence for incremental use (decoding). Returns the
// new state; the output is new_state.h.
template <typename Real>
LstmState<Real> LstmStep(const LstmParams<Real> &params,
                         const RowVec<Real> &input,
                         const LstmState<Real> &state);

}  // namespace csrnnt

#endif  // CSRNNT_NN_LSTM_H_
