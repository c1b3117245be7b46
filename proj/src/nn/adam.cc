// src/nn/adam.cc

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

#include "csrnnt/nn/adam.h"

#include <cmath>
#include <string>

namespace csrnnt {

template <typename Real>
void AdamState<Real>::Init(std::span<Tensor2<Real> *const> params) {
  first_moment.clear();
  second_moment.clear();
  for (const auto *p : params) {
    first_moment.push_back(Tensor2<Real>::Zero(p->rows(), p->cols()));
    second_moment.push_back(Tensor2<Real>::Zero(p->rows(), p->cols()));
  }
}

template <typename Real>
void AdamStep(AdamState<Real> *state, std::span<Tensor2<Real> *const> params,
              std::span<const Tensor2<Real> *const> grads) {
  if (params.size() != grads.size()) {
    throw ShapeError("AdamStep: " + std::to_string(params.size()) +
                     " params but " + std::to_string(grads.size()) +
                     " gradients");
  }
  if (state->step < 0) throw DomainError("AdamStep: negative step count");
  if (state->first_moment.empty() && !params.empty()) state->Init(params);
  if (state->first_moment.size() != params.size()) {
    throw ShapeError("AdamStep: optimizer state holds " +
                     std::to_string(state->first_moment.size()) +
                     " tensors, got " + std::to_string(params.size()));
  }
  for (size_t k = 0; k < params.size(); ++k) {
    const std::string name = "adam tensor " + std::to_string(k);
    CheckShape(name + " grad", *grads[k], params[k]->rows(),
               params[k]->cols());
    CheckShape(name + " moment", state->first_moment[k], params[k]->rows(),
               params[k]->cols());
  }

  const AdamConfig &cfg = state->config;
  state->step += 1;
  const double t = static_cast<double>(state->step);
  const Real correction1 = static_cast<Real>(1.0 - std::pow(cfg.beta1, t));
  const Real correction2 = static_cast<Real>(1.0 - std::pow(cfg.beta2, t));
  const Real b1 = static_cast<Real>(cfg.beta1);
  const Real b2 = static_cast<Real>(cfg.beta2);
  const Real lr = static_cast<Real>(cfg.learning_rate);
  const Real eps = static_cast<Real>(cfg.epsilon);

  for (size_t k = 0; k < params.size(); ++k) {
    auto m = state->first_moment[k].array();
    auto v = state->second_moment[k].array();
    const auto g = grads[k]->array();
    m = b1 * m + (Real(1) - b1) * g;
    v = b2 * v + (Real(1) - b2) * g * g;
    params[k]->array() -=
        lr * (m / correction1) / ((v / correction2).sqrt() + eps);
  }
}

template struct AdamState<float>;
template struct AdamState<double>;
template void AdamStep(AdamState<float> *, std::span<Tensor2<float> *const>,
                       std::span<const Tensor2<float> *const>);
template void AdamStep(AdamState<double> *, std::span<Tensor2<double> *const>,
                       std::span<const Tensor2<double> *const>);

}  // namespace csrnnt
