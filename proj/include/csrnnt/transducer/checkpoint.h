// include/csrnnt/transducer/checkpoint.h

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

#ifndef CSRNNT_TRANSDUCER_CHECKPOINT_H_
#define CSRNNT_TRANSDUCER_CHECKPOINT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "csrnnt/nn/adam.h"
#include "csrnnt/transducer/model.h"

namespace csrnnt {

inline constexpr std::string_view kTransducerMagic = "CSRT";

nlohmann::json TransducerConfigToJson(const TransducerConfig &config);
TransducerConfig TransducerConfigFromJson(const nlohmann::json &j);

struct TransducerCheckpoint {
  TransducerModel<float> model;
  uint64_t vocab_hash = 0;
  nlohmann::json extra;  // free-form training metadata
  std::optional<AdamState<float>> optimizer;
};

// Parameters are stored as float32; optimizer moments, when given, follow
// the parameters as "adam.m.<name>" / "adam.v.<name>".
void SaveTransducerCheckpoint(const std::string &path,
                              const TransducerModel<float> &model,
                              uint64_t vocab_hash, const nlohmann::json &extra,
                              const AdamState<float> *optimizer = nullptr);

TransducerCheckpoint LoadTransducerCheckpoint(const std::string &path);

}  // namespace csrnnt

#endif  // CSRNNT_TRANSDUCER_CHECKPOINT_H_
