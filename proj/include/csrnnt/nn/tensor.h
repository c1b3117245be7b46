// include/csrnnt/nn/tensor.h

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

#ifndef CSRNNT_NN_TENSOR_H_
#define CSRNNT_NN_TENSOR_H_

#include <cmath>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "csrnnt/base/errors.h"

namespace csrnnt {

// Row-major 2-D tensor. Sequences are stored one row per time step and
// biases as 1 x n rows, so every parameter has the same type.
template <typename Real>
using Tensor2 =
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Real>
using RowVec = Eigen::Matrix<Real, 1, Eigen::Dynamic>;

template <typename Derived>
void CheckShape(std::string_view name, const Eigen::DenseBase<Derived> &m,
                Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(std::string(name) + ": expected " + std::to_string(rows) +
                     "x" + std::to_string(cols) + ", got " +
                     std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

template <typename Derived>
void CheckCols(std::string_view name, const Eigen::DenseBase<Derived> &m,
               Eigen::Index cols) {
  if (m.cols() != cols) {
    throw ShapeError(std::string(name) + ": expected width " +
                     std::to_string(cols) + ", got " +
                     std::to_string(m.cols()));
  }
}

template <typename Derived>
bool AllFinite(const Eigen::DenseBase<Derived> &m) {
  return m.derived().array().isFinite().all();
}

}  // namespace csrnnt

#endif  // CSRNNT_NN_TENSOR_H_
