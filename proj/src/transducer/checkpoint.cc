// src/transducer/checkpoint.cc

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

#include "csrnnt/transducer/checkpoint.h"

#include "csrnnt/base/errors.h"
#include "csrnnt/nn/tensor-io.h"

namespace csrnnt {

namespace {

std::string LanguagesToString(const std::vector<LanguageAttr> &langs) {
  std::string s;
  for (auto l : langs) {
    s += l == LanguageAttr::kMandarin ? 'm' : l == LanguageAttr::kEnglish ? 'e' : 'n';
  }
  return s;
}

std::vector<LanguageAttr> LanguagesFromString(const std::string &s) {
  std::vector<LanguageAttr> out;
  for (char c : s) {
    switch (c) {
      case 'm':
        out.push_back(LanguageAttr::kMandarin);
        break;
      case 'e':
        out.push_back(LanguageAttr::kEnglish);
        break;
      case 'n':
        out.push_back(LanguageAttr::kNeutral);
        break;
      default:
        throw IoError(std::string("checkpoint: bad language code '") + c + "'");
    }
  }
  return out;
}

}  // namespace

nlohmann::json TransducerConfigToJson(const TransducerConfig &c) {
  return {{"input_dim", c.input_dim},
          {"encoder_layers", c.encoder_layers},
          {"encoder_dim", c.encoder_dim},
          {"prediction_layers", c.prediction_layers},
          {"prediction_dim", c.prediction_dim},
          {"joint_dim", c.joint_dim},
          {"embedding_dim", c.embedding_dim},
          {"lid_dim", c.lid_dim},
          {"dropout", c.dropout}};
}

TransducerConfig TransducerConfigFromJson(const nlohmann::json &j) {
  TransducerConfig c;
  c.input_dim = j.value("input_dim", c.input_dim);
  c.encoder_layers = j.value("encoder_layers", c.encoder_layers);
  c.encoder_dim = j.value("encoder_dim", c.encoder_dim);
  c.prediction_layers = j.value("prediction_layers", c.prediction_layers);
  c.prediction_dim = j.value("prediction_dim", c.prediction_dim);
  c.joint_dim = j.value("joint_dim", c.joint_dim);
  c.embedding_dim = j.value("embedding_dim", c.embedding_dim);
  c.lid_dim = j.value("lid_dim", c.lid_dim);
  c.dropout = j.value("dropout", c.dropout);
  return c;
}

void SaveTransducerCheckpoint(const std::string &path,
                              const TransducerModel<float> &model,
                              uint64_t vocab_hash, const nlohmann::json &extra,
                              const AdamState<float> *optimizer) {
  nlohmann::json header;
  header["model"] = TransducerConfigToJson(model.config());
  header["vocab_size"] = model.vocab_size();
  header["vocab_hash"] = std::to_string(vocab_hash);
  header["languages"] = LanguagesToString(model.languages());
  header["extra"] = extra;

  std::vector<std::pair<std::string, const Tensor2<float> *>> tensors;
  const auto names = model.params().TensorNames();
  const auto params = model.params().Tensors();
  for (size_t k = 0; k < params.size(); ++k) tensors.emplace_back(names[k], params[k]);
  if (optimizer != nullptr) {
    if (optimizer->first_moment.size() != params.size()) {
      throw ShapeError("checkpoint: optimizer state does not match model");
    }
    header["adam"] = {{"step", optimizer->step},
                      {"learning_rate", optimizer->config.learning_rate},
                      {"beta1", optimizer->config.beta1},
                      {"beta2", optimizer->config.beta2},
                      {"epsilon", optimizer->config.epsilon}};
    for (size_t k = 0; k < params.size(); ++k) {
      tensors.emplace_back("adam.m." + names[k], &optimizer->first_moment[k]);
      tensors.emplace_back("adam.v." + names[k], &optimizer->second_moment[k]);
    }
  }
  WriteTensorFile(path, kTransducerMagic, header, tensors);
}

TransducerCheckpoint LoadTransducerCheckpoint(const std::string &path) {
  TensorFile file = ReadTensorFile(path, kTransducerMagic);
  const auto &h = file.header;
  const TransducerConfig config = TransducerConfigFromJson(h.at("model"));
  auto languages = LanguagesFromString(h.at("languages").get<std::string>());
  if (static_cast<int>(languages.size()) != h.at("vocab_size").get<int>()) {
    throw IoError(path + ": language table does not match vocab size");
  }
  TransducerParams<float> params =
      ZeroParams<float>(config, static_cast<int>(languages.size()));
  const auto names = params.TensorNames();
  auto tensors = params.Tensors();
  for (size_t k = 0; k < tensors.size(); ++k) {
    const Tensor2<float> &t = file.Get(names[k]);
    CheckShape(path + ": " + names[k], t, tensors[k]->rows(), tensors[k]->cols());
    *tensors[k] = t;
  }
  TransducerCheckpoint ckpt{
      TransducerModel<float>(config, std::move(languages), std::move(params)),
      std::stoull(h.at("vocab_hash").get<std::string>()),
      h.value("extra", nlohmann::json::object()),
      std::nullopt};
  if (h.contains("adam")) {
    AdamState<float> opt;
    const auto &a = h.at("adam");
    opt.step = a.at("step").get<int64_t>();
    opt.config.learning_rate = a.at("learning_rate").get<double>();
    opt.config.beta1 = a.at("beta1").get<double>();
    opt.config.beta2 = a.at("beta2").get<double>();
    opt.config.epsilon = a.at("epsilon").get<double>();
    for (const auto &name : names) {
      opt.first_moment.push_back(file.Get("adam.m." + name));
      opt.second_moment.push_back(file.Get("adam.v." + name));
    }
    ckpt.optimizer = std::move(opt);
  }
  return ckpt;
}

}  // namespace csrnnt
