// src/nn/ops.cc

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

#include "csrnnt/nn/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csrnnt {

template <typename Real>
std::vector<Real> LogSoftmax(std::span<const Real> logits) {
  if (logits.empty()) throw DomainError("LogSoftmax: empty logits");
  const Real max = *std::max_element(logits.begin(), logits.end());
  Real sum = 0;
  for (Real x : logits) sum += std::exp(x - max);
  const Real log_sum = std::log(sum);
  std::vector<Real> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = (logits[i] - max) - log_sum;
  return out;
}

template <typename Real>
void LogSoftmaxRowsInPlace(Tensor2<Real> *m) {
  if (m->cols() == 0) throw DomainError("LogSoftmaxRowsInPlace: zero width");
  for (Eigen::Index r = 0; r < m->rows(); ++r) {
    auto row = m->row(r);
    const Real max = row.maxCoeff();
    row.array() -= max;
    row.array() -= std::log(row.array().exp().sum());
  }
}

template <typename Real>
Tensor2<Real> DropoutApply(const Tensor2<Real> &input, double rate,
                           std::mt19937_64 &rng, bool training,
                           Tensor2<Real> *mask) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw DomainError("DropoutApply: rate must be in [0, 1), got " +
                      std::to_string(rate));
  }
  if (!training || rate == 0.0) {
    if (mask) mask->setOnes(input.rows(), input.cols());
    return input;
  }
  Tensor2<Real> m(input.rows(), input.cols());
  const Real keep_scale = static_cast<Real>(1.0 / (1.0 - rate));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = uniform(rng) < rate ? Real(0) : keep_scale;
  }
  Tensor2<Real> out = input.cwiseProduct(m);
  if (mask) *mask = std::move(m);
  return out;
}

template std::vector<float> LogSoftmax(std::span<const float>);
template std::vector<double> LogSoftmax(std::span<const double>);
template void LogSoftmaxRowsInPlace(Tensor2<float> *);
template void LogSoftmaxRowsInPlace(Tensor2<double> *);
template Tensor2<float> DropoutApply(const Tensor2<float> &, double,
                                     std::mt19937_64 &, bool, Tensor2<float> *);
template Tensor2<double> DropoutApply(const Tensor2<double> &, double,
                                      std::mt19937_64 &, bool,
                                      Tensor2<double> *);

}  // namespace csrnnt
