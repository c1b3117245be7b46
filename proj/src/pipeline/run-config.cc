// src/pipeline/run-config.cc

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

#include "csrnnt/pipeline/run-config.h"

#include <fstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/transducer/checkpoint.h"

namespace csrnnt {

using nlohmann::json;

void RunConfig::Validate() const {
  decode.Validate();
  synth.Validate();
  if (model.input_dim != synth.feature_dim) {
    throw DomainError("config: model.input_dim must equal synth.feature_dim");
  }
  if (model.encoder_layers < 1 || model.prediction_layers < 1) {
    throw DomainError("config: need at least one encoder and prediction layer");
  }
  if (!(model.dropout >= 0 && model.dropout < 1)) {
    throw DomainError("config: model.dropout must be in [0,1)");
  }
  if (nbest < 1) throw DomainError("config: nbest must be >= 1");
  if (num_test < 0) throw DomainError("config: num_test must be >= 0");
  if (train.epochs < 0 || train.batch_size < 1) {
    throw DomainError("config: need epochs >= 0 and batch_size >= 1");
  }
  if (!(train.learning_rate > 0)) throw DomainError("config: learning_rate must be > 0");
  if (!(train.validation_fraction >= 0 && train.validation_fraction < 1)) {
    throw DomainError("config: validation_fraction must be in [0,1)");
  }
  if (train.bpe_merges < 0) throw DomainError("config: bpe_merges must be >= 0");
  for (double r : train.speed_rates) {
    if (!(r > 0.5 && r < 2.0)) throw DomainError("config: speed rates must be in (0.5,2)");
  }
  if (ngram.order < 1) throw DomainError("config: ngram.order must be >= 1");
  if (rescore.nbest < 1) throw DomainError("config: rescore.nbest must be >= 1");
  if (rescore_tuning.enabled &&
      (rescore_tuning.lm_weights.empty() || rescore_tuning.length_penalties.empty())) {
    throw DomainError("config: rescore.tune needs non-empty grids");
  }
}

RunConfig PresetConfig(const std::string &name) {
  RunConfig c;
  c.preset = name;
  if (name == "desk") return c;
  if (name == "seame-paper") {
    c.model = TransducerConfig::SeamePaper();
    c.decode = DecodeConfig::SeamePaper();
    c.nbest = 35;
    c.rescore.nbest = 35;
    c.synth.feature_dim = c.model.input_dim;
    return c;
  }
  throw DomainError("unknown preset '" + name + "' (expected desk or seame-paper)");
}

json RunConfigToJson(const RunConfig &c) {
  json j;
  j["preset"] = c.preset;
  j["model"] = TransducerConfigToJson(c.model);
  j["decode"] = {{"beam_size", c.decode.beam_size},
                 {"lambda_mode", std::string(LambdaModeName(c.decode.lambda_mode))},
                 {"lambda", c.decode.lambda},
                 {"max_symbols_per_frame", c.decode.max_symbols_per_frame},
                 {"nbest", c.nbest}};
  const auto &s = c.synth;
  j["synth"] = {{"seed", s.seed},
                {"num_utterances", s.num_utterances},
                {"num_test", c.num_test},
                {"mandarin_vocab", s.mandarin_vocab},
                {"english_vocab", s.english_vocab},
                {"p_switch", s.p_switch},
                {"min_tokens", s.min_tokens},
                {"max_tokens", s.max_tokens},
                {"mandarin_frames", s.mandarin_frames},
                {"english_frames_per_char", s.english_frames_per_char},
                {"feature_dim", s.feature_dim},
                {"noise", s.noise},
                {"min_anchor_distance", s.min_anchor_distance}};
  const auto &t = c.train;
  j["train"] = {{"epochs", t.epochs},
                {"batch_size", t.batch_size},
                {"learning_rate", t.learning_rate},
                {"seed", t.seed},
                {"clip_norm", t.clip_norm},
                {"validation_fraction", t.validation_fraction},
                {"lr_decay", t.lr_decay},
                {"patience", t.patience},
                {"bpe_merges", t.bpe_merges},
                {"speed_rates", t.speed_rates},
                {"tagged", t.tagged},
                {"parallel", t.parallel}};
  j["lm"] = {{"order", c.ngram.order},
             {"discount", c.ngram.discount},
             {"rnn",
              {{"embedding_dim", c.rnnlm.embedding_dim},
               {"hidden_dim", c.rnnlm.hidden_dim},
               {"epochs", c.rnnlm.epochs},
               {"learning_rate", c.rnnlm.learning_rate},
               {"seed", c.rnnlm.seed}}}};
  j["rescore"] = {{"lm_weight", c.rescore.lm_weight},
                  {"length_penalty", c.rescore.length_penalty},
                  {"nbest", c.rescore.nbest},
                  {"tune",
                   {{"enabled", c.rescore_tuning.enabled},
                    {"lm_weights", c.rescore_tuning.lm_weights},
                    {"length_penalties", c.rescore_tuning.length_penalties}}}};
  return j;
}

namespace {

// Copies j[key] into *out when present.
template <typename T>
void Read(const json &j, const char *key, T *out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

void CheckKeys(const json &j, const json &schema, const std::string &where) {
  if (!j.is_object()) throw DomainError("config: '" + where + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!schema.contains(it.key())) {
      throw DomainError("config: unknown key '" + where + (where.empty() ? "" : ".") +
                        it.key() + "'");
    }
    if (schema.at(it.key()).is_object() && !schema.at(it.key()).empty()) {
      CheckKeys(it.value(), schema.at(it.key()),
                where + (where.empty() ? "" : ".") + it.key());
    }
  }
}

}  // namespace

RunConfig RunConfigFromJson(const json &j) {
  RunConfig c = PresetConfig(j.value("preset", std::string("desk")));
  CheckKeys(j, RunConfigToJson(c), "");
  try {
    if (j.contains("model")) {
      json merged = TransducerConfigToJson(c.model);
      merged.merge_patch(j.at("model"));
      c.model = TransducerConfigFromJson(merged);
    }
    if (j.contains("decode")) {
      const auto &d = j.at("decode");
      Read(d, "beam_size", &c.decode.beam_size);
      if (d.contains("lambda_mode")) {
        c.decode.lambda_mode = ParseLambdaMode(d.at("lambda_mode").get<std::string>());
      }
      Read(d, "lambda", &c.decode.lambda);
      Read(d, "max_symbols_per_frame", &c.decode.max_symbols_per_frame);
      Read(d, "nbest", &c.nbest);
    }
    if (j.contains("synth")) {
      const auto &s = j.at("synth");
      Read(s, "seed", &c.synth.seed);
      Read(s, "num_utterances", &c.synth.num_utterances);
      Read(s, "num_test", &c.num_test);
      Read(s, "mandarin_vocab", &c.synth.mandarin_vocab);
      Read(s, "english_vocab", &c.synth.english_vocab);
      Read(s, "p_switch", &c.synth.p_switch);
      Read(s, "min_tokens", &c.synth.min_tokens);
      Read(s, "max_tokens", &c.synth.max_tokens);
      Read(s, "mandarin_frames", &c.synth.mandarin_frames);
      Read(s, "english_frames_per_char", &c.synth.english_frames_per_char);
      Read(s, "feature_dim", &c.synth.feature_dim);
      Read(s, "noise", &c.synth.noise);
      Read(s, "min_anchor_distance", &c.synth.min_anchor_distance);
    }
    if (j.contains("train")) {
      const auto &t = j.at("train");
      Read(t, "epochs", &c.train.epochs);
      Read(t, "batch_size", &c.train.batch_size);
      Read(t, "learning_rate", &c.train.learning_rate);
      Read(t, "seed", &c.train.seed);
      Read(t, "clip_norm", &c.train.clip_norm);
      Read(t, "validation_fraction", &c.train.validation_fraction);
      Read(t, "lr_decay", &c.train.lr_decay);
      Read(t, "patience", &c.train.patience);
      Read(t, "bpe_merges", &c.train.bpe_merges);
      Read(t, "speed_rates", &c.train.speed_rates);
      Read(t, "tagged", &c.train.tagged);
      Read(t, "parallel", &c.train.parallel);
    }
    if (j.contains("lm")) {
      const auto &l = j.at("lm");
      Read(l, "order", &c.ngram.order);
      Read(l, "discount", &c.ngram.discount);
      if (l.contains("rnn")) {
        const auto &r = l.at("rnn");
        Read(r, "embedding_dim", &c.rnnlm.embedding_dim);
        Read(r, "hidden_dim", &c.rnnlm.hidden_dim);
        Read(r, "epochs", &c.rnnlm.epochs);
        Read(r, "learning_rate", &c.rnnlm.learning_rate);
        Read(r, "seed", &c.rnnlm.seed);
      }
    }
    if (j.contains("rescore")) {
      const auto &r = j.at("rescore");
      Read(r, "lm_weight", &c.rescore.lm_weight);
      Read(r, "length_penalty", &c.rescore.length_penalty);
      Read(r, "nbest", &c.rescore.nbest);
      if (r.contains("tune")) {
        const auto &t = r.at("tune");
        Read(t, "enabled", &c.rescore_tuning.enabled);
        Read(t, "lm_weights", &c.rescore_tuning.lm_weights);
        Read(t, "length_penalties", &c.rescore_tuning.length_penalties);
      }
    }
  } catch (const json::exception &e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

void ApplyOverride(json *tree, const std::string &assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw DomainError("override '" + assignment + "' is not key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json *node = tree;
  size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw DomainError("override '" + assignment + "': empty key part");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

RunConfig ResolveRunConfig(const std::string &preset, const std::string &config_path,
                           const std::vector<std::string> &overrides) {
  json tree = json::object();
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw IoError("cannot read config " + config_path);
    json file = json::parse(is, nullptr, false);
    if (file.is_discarded()) throw DomainError(config_path + ": invalid JSON");
    tree = file;
  }
  if (!preset.empty()) tree["preset"] = preset;
  const std::string name = tree.value("preset", std::string("desk"));
  json full = RunConfigToJson(PresetConfig(name));
  full.merge_patch(tree);
  for (const auto &o : overrides) ApplyOverride(&full, o);
  return RunConfigFromJson(full);
}

}  // namespace csrnnt
