// include/csrnnt/base/denormals.h

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

#ifndef CSRNNT_BASE_DENORMALS_H_
#define CSRNNT_BASE_DENORMALS_H_

#if defined(__SSE__)
#include <xmmintrin.h>
#endif

namespace csrnnt {

// Flushes denormal results and inputs to zero on this thread while in
// scope. Softmax tails underflow into the denormal range late in training
// and slow float arithmetic down several times over.
class ScopedFlushDenormals {
 public:
#if defined(__SSE__)
  ScopedFlushDenormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~ScopedFlushDenormals() { _mm_setcsr(saved_); }
#else
  ScopedFlushDenormals() = default;
#endif
  ScopedFlushDenormals(const ScopedFlushDenormals &) = delete;
  ScopedFlushDenormals &operator=(const ScopedFlushDenormals &) = delete;

 private:
#if defined(__SSE__)
  unsigned saved_;
#endif
};

}  // namespace csrnnt

#endif  // CSRNNT_BASE_DENORMALS_H_
