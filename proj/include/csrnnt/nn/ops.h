// include/csrnnt/nn/ops.h

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

#ifndef CSRNNT_NN_OPS_H_
#define CSRNNT_NN_OPS_H_

#include <random>
#include <span>
#include <vector>

#include "csrnnt/nn/tensor.h"

namespace csrnnt {

// Numerically stable log-softmax (max subtraction). Throws DomainError on
// an empty input.
template <typename Real>
std::vector<Real> LogSoftmax(std::span<const Real> logits);

// Row-wise log-softmax of a matrix, in place.
template <typename Real>
void LogSoftmaxRowsInPlace(Tensor2<Real> *m);

// Inverted dropout. In training mode each element is zeroed with
// probability `rate` and survivors are scaled by 1/(1-rate); otherwise the
// input is returned unchanged. If `mask` is non-null it receives the
// multiplicative mask (all ones in inference mode) for the backward pass.
template <typename Real>
Tensor2<Real> DropoutApply(const Tensor2<Real> &input, double rate,
                           std::mt19937_64 &rng, bool training,
                           Tensor2<Real> *mask = nullptr);

}  // namespace csrnnt

#endif  // CSRNNT_NN_OPS_H_
