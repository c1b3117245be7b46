// src/transducer/joint.cc

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

#include "csrnnt/transducer/joint.h"

#include <cmath>
#include <string>

namespace csrnnt {

namespace {

template <typename Real>
void CheckJointInputs(const Tensor2<Real> &enc_proj,
                      const Tensor2<Real> &pred_proj,
                      const Tensor2<Real> &output,
                      const Tensor2<Real> &output_bias) {
  const Eigen::Index joint_dim = output.rows();
  CheckCols("joint enc_proj", enc_proj, joint_dim);
  CheckCols("joint pred_proj", pred_proj, joint_dim);
  CheckShape("joint output_bias", output_bias, 1, output.cols());
  if (pred_proj.rows() < 1) throw ShapeError("joint pred_proj: no rows");
}

// One frame's block: rows [t*(U+1), (t+1)*(U+1)).
template <typename Real>
void JointFrame(Eigen::Index t, const Tensor2<Real> &enc_proj,
                const Tensor2<Real> &pred_proj, const Tensor2<Real> &output,
                const Tensor2<Real> &output_bias, JointGrid<Real> *grid) {
  const Eigen::Index width = pred_proj.rows();
  auto hidden = grid->hidden.middleRows(t * width, width);
  hidden = pred_proj;
  hidden.rowwise() += enc_proj.row(t);
  hidden = hidden.array().tanh().matrix();
  auto logits = grid->log_probs.middleRows(t * width, width);
  logits.noalias() = hidden * output;
  logits.rowwise() += output_bias.row(0);
  for (Eigen::Index r = 0; r < width; ++r) {
    auto row = logits.row(r);
    const Real max = row.maxCoeff();
    const Real log_z = max + std::log((row.array() - max).exp().sum());
    row.array() -= log_z;
  }
}

template <typename Real>
void PrepareGrid(const Tensor2<Real> &enc_proj, const Tensor2<Real> &pred_proj,
                 const Tensor2<Real> &output, JointGrid<Real> *grid) {
  const Eigen::Index nodes = enc_proj.rows() * pred_proj.rows();
  grid->hidden.resize(nodes, output.rows());
  grid->log_probs.resize(nodes, output.cols());
}

}  // namespace

template <typename Real>
void ComputeJointGrid(const Tensor2<Real> &enc_proj,
                      const Tensor2<Real> &pred_proj,
                      const Tensor2<Real> &output,
                      const Tensor2<Real> &output_bias, JointGrid<Real> *grid) {
  CheckJointInputs(enc_proj, pred_proj, output, output_bias);
  PrepareGrid(enc_proj, pred_proj, output, grid);
  const long frames = static_cast<long>(enc_proj.rows());
#pragma omp parallel for schedule(static)
  for (long t = 0; t < frames; ++t) {
    JointFrame(t, enc_proj, pred_proj, output, output_bias, grid);
  }
}

template <typename Real>
void ComputeJointGridSerial(const Tensor2<Real> &enc_proj,
                            const Tensor2<Real> &pred_proj,
                            const Tensor2<Real> &output,
                            const Tensor2<Real> &output_bias,
                            JointGrid<Real> *grid) {
  CheckJointInputs(enc_proj, pred_proj, output, output_bias);
  PrepareGrid(enc_proj, pred_proj, output, grid);
  for (Eigen::Index t = 0; t < enc_proj.rows(); ++t) {
    JointFrame(t, enc_proj, pred_proj, output, output_bias, grid);
  }
}

template <typename Real>
JointGridGrad<Real> JointGridBackward(const JointGrid<Real> &grid,
                                      const Tensor2<Real> &output,
                                      std::span<const int> target, int blank_id,
                                      std::span<const double> grad_blank,
                                      std::span<const double> grad_label,
                                      int frames) {
  const Eigen::Index width = static_cast<Eigen::Index>(target.size()) + 1;
  const Eigen::Index nodes = frames * width;
  const Eigen::Index vocab = output.cols();
  const Eigen::Index joint_dim = output.rows();
  CheckShape("joint grid.log_probs", grid.log_probs, nodes, vocab);
  CheckShape("joint grid.hidden", grid.hidden, nodes, joint_dim);
  if (static_cast<Eigen::Index>(grad_blank.size()) != nodes ||
      static_cast<Eigen::Index>(grad_label.size()) != nodes) {
    throw ShapeError("joint node gradients: expected " +
                     std::to_string(nodes) + " entries");
  }

  // d(log_softmax)/d(logits): dz = g_onehot - softmax * sum(g).
  Tensor2<Real> d_logits(nodes, vocab);
  Tensor2<Real> d_pre(nodes, joint_dim);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < frames; ++t) {
    for (Eigen::Index u = 0; u < width; ++u) {
      const Eigen::Index n = t * width + u;
      const Real gb = static_cast<Real>(grad_blank[n]);
      const Real gl = u + 1 < width ? static_cast<Real>(grad_label[n]) : Real(0);
      auto dz = d_logits.row(n);
      dz = -(gb + gl) * grid.log_probs.row(n).array().exp().matrix();
      dz(blank_id) += gb;
      if (u + 1 < width) dz(target[u]) += gl;
    }
    auto block = d_pre.middleRows(t * width, width);
    block.noalias() = d_logits.middleRows(t * width, width) * output.transpose();
    block.array() *=
        Real(1) - grid.hidden.middleRows(t * width, width).array().square();
  }

  JointGridGrad<Real> g;
  g.output.noalias() = grid.hidden.transpose() * d_logits;
  g.output_bias = d_logits.colwise().sum();
  g.enc_proj.resize(frames, joint_dim);
  g.pred_proj = Tensor2<Real>::Zero(width, joint_dim);
  for (Eigen::Index t = 0; t < frames; ++t) {
    auto block = d_pre.middleRows(t * width, width);
    g.enc_proj.row(t) = block.colwise().sum();
    g.pred_proj += block;
  }
  return g;
}

#define CSRNNT_INSTANTIATE_JOINT(Real)                                         \
  template void ComputeJointGrid(const Tensor2<Real> &, const Tensor2<Real> &, \
                                 const Tensor2<Real> &, const Tensor2<Real> &, \
                                 JointGrid<Real> *);                           \
  template void ComputeJointGridSerial(                                        \
      const Tensor2<Real> &, const Tensor2<Real> &, const Tensor2<Real> &,     \
      const Tensor2<Real> &, JointGrid<Real> *);                               \
  template JointGridGrad<Real> JointGridBackward(                              \
      const JointGrid<Real> &, const Tensor2<Real> &, std::span<const int>,    \
      int, std::span<const double>, std::span<const double>, int);

CSRNNT_INSTANTIATE_JOINT(float)
CSRNNT_INSTANTIATE_JOINT(double)

}  // namespace csrnnt
