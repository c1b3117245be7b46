// include/csrnnt/base/errors.h

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

#ifndef CSRNNT_BASE_ERRORS_H_
#define CSRNNT_BASE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace csrnnt {

// Tensor or sequence dimensions disagree. The message names the tensor.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain of an operation (empty corpus, invalid
// distribution, blank inside a target, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// NaN or infinity in an input that must be finite. Still a domain error;
// the trainer reports it as a numerical failure of the model.
class NonFiniteInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Instance too large for an enumeration routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NaN / Inf encountered during training or scoring.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csrnnt

#endif  // CSRNNT_BASE_ERRORS_H_
