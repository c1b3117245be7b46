// src/nn/lstm.cc

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

#include "csrnnt/nn/lstm.h"

#include <cmath>

namespace csrnnt {

namespace {

template <typename Real>
Real Sigmoid(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

// Applies the gate nonlinearities to a row of pre-activations in place.
template <typename Row>
void ActivateGates(Row &&z, int hidden) {
  using Real = typename std::decay_t<Row>::Scalar;
  for (int j = 0; j < hidden; ++j) {
    z(j) = Sigmoid<Real>(z(j));
    z(hidden + j) = Sigmoid<Real>(z(hidden + j));
    z(2 * hidden + j) = std::tanh(z(2 * hidden + j));
    z(3 * hidden + j) = Sigmoid<Real>(z(3 * hidden + j));
  }
}

template <typename Real>
void CheckParams(const LstmParams<Real> &p) {
  CheckShape("lstm.weight", p.weight, p.input_dim + p.hidden_dim,
             4 * p.hidden_dim);
  CheckShape("lstm.bias", p.bias, 1, 4 * p.hidden_dim);
}

}  // namespace

template <typename Real>
LstmParams<Real> LstmParams<Real>::Zeros(int input_dim, int hidden_dim) {
  LstmParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  p.weight = Tensor2<Real>::Zero(input_dim + hidden_dim, 4 * hidden_dim);
  p.bias = Tensor2<Real>::Zero(1, 4 * hidden_dim);
  return p;
}

template <typename Real>
LstmParams<Real> LstmParams<Real>::Random(int input_dim, int hidden_dim,
                                          std::mt19937_64 &rng) {
  LstmParams p = Zeros(input_dim, hidden_dim);
  const double bound = 1.0 / std::sqrt(double(input_dim + hidden_dim));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < p.weight.size(); ++i) {
    p.weight.data()[i] = static_cast<Real>(dist(rng));
  }
  p.bias.block(0, hidden_dim, 1, hidden_dim).setOnes();
  return p;
}

template <typename Real>
LstmForwardResult<Real> LstmForward(const LstmParams<Real> &params,
                                    const Tensor2<Real> &inputs,
                                    const LstmState<Real> &init_state) {
  CheckParams(params);
  const int in = params.input_dim;
  const int hidden = params.hidden_dim;
  const Eigen::Index steps = inputs.rows();
  if (steps > 0) CheckCols("lstm inputs", inputs, in);
  CheckCols("lstm init_state.h", init_state.h, hidden);
  CheckCols("lstm init_state.c", init_state.c, hidden);

  LstmForwardResult<Real> result;
  LstmCache<Real> &cache = result.cache;
  cache.inputs = inputs;
  cache.h_prev.resize(steps, hidden);
  cache.c_prev.resize(steps, hidden);
  cache.tanh_c.resize(steps, hidden);
  result.outputs.resize(steps, hidden);

  const auto w_x = params.weight.topRows(in);
  const auto w_h = params.weight.bottomRows(hidden);
  if (steps > 0) {
    cache.gates.noalias() = inputs * w_x;
    cache.gates.rowwise() += params.bias.row(0);
  } else {
    cache.gates.resize(0, 4 * hidden);
  }

  RowVec<Real> h = init_state.h;
  RowVec<Real> c = init_state.c;
  for (Eigen::Index t = 0; t < steps; ++t) {
    cache.h_prev.row(t) = h;
    cache.c_prev.row(t) = c;
    auto z = cache.gates.row(t);
    z.noalias() += h * w_h;
    ActivateGates(z, hidden);
    const auto i = z.segment(0, hidden).array();
    const auto f = z.segment(hidden, hidden).array();
    const auto g = z.segment(2 * hidden, hidden).array();
    const auto o = z.segment(3 * hidden, hidden).array();
    c = (f * c.array() + i * g).matrix();
    cache.tanh_c.row(t) = c.array().tanh().matrix();
    h = (o * cache.tanh_c.row(t).array()).matrix();
    result.outputs.row(t) = h;
  }
  result.final_state = {h, c};
  return result;
}

template <typename Real>
LstmGradients<Real> LstmBackward(const LstmParams<Real> &params,
                                 const LstmCache<Real> &cache,
                                 const Tensor2<Real> &grad_outputs,
                                 const LstmState<Real> &grad_final) {
  CheckParams(params);
  const int in = params.input_dim;
  const int hidden = params.hidden_dim;
  const Eigen::Index steps = cache.gates.rows();
  CheckShape("lstm cache.gates", cache.gates, steps, 4 * hidden);
  CheckShape("lstm cache.h_prev", cache.h_prev, steps, hidden);
  CheckShape("lstm cache.c_prev", cache.c_prev, steps, hidden);
  CheckShape("lstm cache.tanh_c", cache.tanh_c, steps, hidden);
  CheckShape("lstm cache.inputs", cache.inputs, steps,
             steps > 0 ? in : cache.inputs.cols());
  CheckShape("lstm grad_outputs", grad_outputs, steps, hidden);
  CheckCols("lstm grad_final.h", grad_final.h, hidden);
  CheckCols("lstm grad_final.c", grad_final.c, hidden);

  const auto w_x = params.weight.topRows(in);
  const auto w_h = params.weight.bottomRows(hidden);

  Tensor2<Real> dz(steps, 4 * hidden);
  RowVec<Real> dh = grad_final.h;
  RowVec<Real> dc = grad_final.c;
  for (Eigen::Index t = steps - 1; t >= 0; --t) {
    dh += grad_outputs.row(t);
    const auto z = cache.gates.row(t);
    const auto i = z.segment(0, hidden).array();
    const auto f = z.segment(hidden, hidden).array();
    const auto g = z.segment(2 * hidden, hidden).array();
    const auto o = z.segment(3 * hidden, hidden).array();
    const auto tc = cache.tanh_c.row(t).array();

    dc.array() += dh.array() * o * (Real(1) - tc * tc);
    auto dzt = dz.row(t);
    dzt.segment(0, hidden).array() = dc.array() * g * i * (Real(1) - i);
    dzt.segment(hidden, hidden).array() =
        dc.array() * cache.c_prev.row(t).array() * f * (Real(1) - f);
    dzt.segment(2 * hidden, hidden).array() =
        dc.array() * i * (Real(1) - g * g);
    dzt.segment(3 * hidden, hidden).array() =
        dh.array() * tc * o * (Real(1) - o);

    dc.array() *= f;
    dh.noalias() = dzt * w_h.transpose();
  }

  LstmGradients<Real> grads;
  grads.params = LstmParams<Real>::Zeros(in, hidden);
  if (steps > 0) {
    grads.params.weight.topRows(in).noalias() = cache.inputs.transpose() * dz;
    grads.params.weight.bottomRows(hidden).noalias() =
        cache.h_prev.transpose() * dz;
    grads.params.bias = dz.colwise().sum();
    grads.inputs.noalias() = dz * w_x.transpose();
  } else {
    grads.inputs.resize(0, in);
  }
  grads.init_state = {dh, dc};
  return grads;
}

template <typename Real>
LstmState<Real> LstmStep(const LstmParams<Real> &params,
                         const RowVec<Real> &input,
                         const LstmState<Real> &state) {
  const int hidden = params.hidden_dim;
  CheckCols("lstm step input", input, params.input_dim);
  RowVec<Real> z = params.bias.row(0);
  z.noalias() += input * params.weight.topRows(params.input_dim);
  z.noalias() += state.h * params.weight.bottomRows(hidden);
  ActivateGates(z, hidden);
  LstmState<Real> next;
  next.c = (z.segment(hidden, hidden).array() * state.c.array() +
            z.segment(0, hidden).array() * z.segment(2 * hidden, hidden).array())
               .matrix();
  next.h = (z.segment(3 * hidden, hidden).array() * next.c.array().tanh())
               .matrix();
  return next;
}

#define CSRNNT_INSTANTIATE_LSTM(Real)                                       \
  template struct LstmParams<Real>;                                         \
  template LstmForwardResult<Real> LstmForward(                             \
      const LstmParams<Real> &, const Tensor2<Real> &,                      \
      const LstmState<Real> &);                                             \
  template LstmGradients<Real> LstmBackward(                                \
      const LstmParams<Real> &, const LstmCache<Real> &,                    \
      const Tensor2<Real> &, const LstmState<Real> &);                      \
  template LstmState<Real> LstmStep(const LstmParams<Real> &,               \
                                    const RowVec<Real> &,                   \
                                    const LstmState<Real> &);

CSRNNT_INSTANTIATE_LSTM(float)
CSRNNT_INSTANTIATE_LSTM(double)

}  // namespace csrnnt
