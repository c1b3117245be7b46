// include/csrnnt/nn/tensor-io.h

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

#ifndef CSRNNT_NN_TENSOR_IO_H_
#define CSRNNT_NN_TENSOR_IO_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "csrnnt/nn/tensor.h"

namespace csrnnt {

// Binary tensor container:
//   4-byte magic, u32 format version (1), u32 header length,
//   UTF-8 JSON header, then each tensor as little-endian float32 in the
//   order of header["tensors"] (entries {"name", "rows", "cols"}).
struct TensorFile {
  nlohmann::json header;
  std::vector<std::pair<std::string, Tensor2<float>>> tensors;

  const Tensor2<float> &Get(const std::string &name) const;
};

inline constexpr uint32_t kTensorFileVersion = 1;

// `header` must not contain a "tensors" key; it is generated.
void WriteTensorFile(const std::string &path, std::string_view magic,
                     nlohmann::json header,
                     const std::vector<std::pair<std::string, const Tensor2<float> *>>
                         &tensors);

// Throws IoError on a wrong magic, version or truncated payload.
TensorFile ReadTensorFile(const std::string &path, std::string_view magic);

}  // namespace csrnnt

#endif  // CSRNNT_NN_TENSOR_IO_H_
