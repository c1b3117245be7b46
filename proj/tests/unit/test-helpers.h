// tests/unit/test-helpers.h

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

#ifndef CSRNNT_TESTS_TEST_HELPERS_H_
#define CSRNNT_TESTS_TEST_HELPERS_H_

#include <filesystem>
#include <random>
#include <string>

#include "csrnnt/nn/tensor.h"

namespace csrnnt::testing {

template <typename Real>
void FillUniform(Tensor2<Real> *m, std::mt19937_64 &rng, double bound) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = static_cast<Real>(dist(rng));
}

template <typename Real>
Tensor2<Real> RandomMatrix(int rows, int cols, std::mt19937_64 &rng, double bound = 1.0) {
  Tensor2<Real> m(rows, cols);
  FillUniform(&m, rng, bound);
  return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("csrnnt-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string File(const std::string &name) const { return (path_ / name).string(); }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace csrnnt::testing

#endif  // CSRNNT_TESTS_TEST_HELPERS_H_
