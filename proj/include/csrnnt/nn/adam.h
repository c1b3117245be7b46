// include/csrnnt/nn/adam.h

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

#ifndef CSRNNT_NN_ADAM_H_
#define CSRNNT_NN_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "csrnnt/nn/tensor.h"

namespace csrnnt {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moment accumulators for a fixed list of parameter tensors. The shapes are
// taken from the parameters on the first step (or from Init) and must never
// change afterwards.
template <typename Real>
struct AdamState {
  AdamConfig config;
  int64_t step = 0;
  std::vector<Tensor2<Real>> first_moment;
  std::vector<Tensor2<Real>> second_moment;

  void Init(std::span<Tensor2<Real> *const> params);
};

// Bias-corrected ADAM update of every tensor in `params` using the matching
// tensor in `grads`. Increments state->step.
template <typename Real>
void AdamStep(AdamState<Real> *state, std::span<Tensor2<Real> *const> params,
              std::span<const Tensor2<Real> *const> grads);

}  // namespace csrnnt

#endif  // CSRNNT_NN_ADAM_H_
