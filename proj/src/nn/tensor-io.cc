// src/nn/tensor-io.cc

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

#include "csrnnt/nn/tensor-io.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "csrnnt/base/errors.h"

namespace csrnnt {

static_assert(std::endian::native == std::endian::little,
              "tensor files are written in host order, which must be "
              "little-endian");

namespace {

void WriteU32(std::ostream &os, uint32_t v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

uint32_t ReadU32(std::istream &is, const std::string &path) {
  uint32_t v = 0;
  if (!is.read(reinterpret_cast<char *>(&v), sizeof(v))) {
    throw IoError(path + ": truncated header");
  }
  return v;
}

}  // namespace

const Tensor2<float> &TensorFile::Get(const std::string &name) const {
  for (const auto &[n, t] : tensors) {
    if (n == name) return t;
  }
  throw IoError("tensor file: no tensor named '" + name + "'");
}

void WriteTensorFile(
    const std::string &path, std::string_view magic, nlohmann::json header,
    const std::vector<std::pair<std::string, const Tensor2<float> *>> &tensors) {
  if (magic.size() != 4) throw DomainError("tensor file magic must be 4 bytes");
  nlohmann::json listing = nlohmann::json::array();
  for (const auto &[name, t] : tensors) {
    listing.push_back({{"name", name}, {"rows", t->rows()}, {"cols", t->cols()}});
  }
  header["tensors"] = listing;
  const std::string text = header.dump();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write '" + path + "'");
  os.write(magic.data(), 4);
  WriteU32(os, kTensorFileVersion);
  WriteU32(os, static_cast<uint32_t>(text.size()));
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto &[name, t] : tensors) {
    os.write(reinterpret_cast<const char *>(t->data()),
             static_cast<std::streamsize>(t->size() * sizeof(float)));
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

TensorFile ReadTensorFile(const std::string &path, std::string_view magic) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  char got[4];
  if (!is.read(got, 4) || std::memcmp(got, magic.data(), 4) != 0) {
    throw IoError(path + ": bad magic, expected '" + std::string(magic) + "'");
  }
  const uint32_t version = ReadU32(is, path);
  if (version != kTensorFileVersion) {
    throw IoError(path + ": unsupported version " + std::to_string(version));
  }
  const uint32_t header_len = ReadU32(is, path);
  std::string text(header_len, '\0');
  if (!is.read(text.data(), header_len)) throw IoError(path + ": truncated header");

  TensorFile file;
  try {
    file.header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw IoError(path + ": header is not valid JSON: " + e.what());
  }
  for (const auto &entry : file.header.at("tensors")) {
    Tensor2<float> t(entry.at("rows").get<Eigen::Index>(),
                     entry.at("cols").get<Eigen::Index>());
    if (!is.read(reinterpret_cast<char *>(t.data()),
                 static_cast<std::streamsize>(t.size() * sizeof(float)))) {
      throw IoError(path + ": truncated tensor '" +
                    entry.at("name").get<std::string>() + "'");
    }
    file.tensors.emplace_back(entry.at("name").get<std::string>(), std::move(t));
  }
  return file;
}

}  // namespace csrnnt
