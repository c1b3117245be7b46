// tools/csrnnt.cc

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

// csrnnt: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csrnnt/base/errors.h"
#include "csrnnt/lm/ngram.h"
#include "csrnnt/lm/rescore.h"
#include "csrnnt/lm/rnnlm.h"
#include "csrnnt/metrics/mer.h"
#include "csrnnt/oracle/selftest.h"
#include "csrnnt/pipeline/recognize.h"
#include "csrnnt/pipeline/trainer.h"
#include "csrnnt/transducer/checkpoint.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace csrnnt {
namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Common {
  std::string preset = "desk";
  std::string config_path;
  std::vector<std::string> overrides;

  RunConfig Resolve() const { return ResolveRunConfig(preset, config_path, overrides); }
};

void MakeDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  return os;
}

std::ifstream OpenIn(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  return is;
}

// Every output directory gets the fully resolved config.
void EchoConfig(const std::string &dir, const RunConfig &config) {
  auto os = OpenOut((fs::path(dir) / "config.json").string());
  os << RunConfigToJson(config).dump(2) << "\n";
}

void SaveTextModels(const std::string &dir, const TextModels &text) {
  auto bpe = OpenOut((fs::path(dir) / "bpe.model").string());
  WriteBpeModel(text.bpe, bpe);
  auto vocab = OpenOut((fs::path(dir) / "vocab.txt").string());
  WriteVocabulary(text.vocab, vocab);
}

// A data split on disk: manifest (id, relative feature path) and the
// untagged and tagged transcripts.
void WriteSplit(const std::string &dir, const std::vector<SynthUtterance> &utts) {
  MakeDir((fs::path(dir) / "feats").string());
  std::vector<std::pair<std::string, std::string>> entries;
  Corpus text;
  for (const auto &u : utts) {
    const std::string rel = "feats/" + u.id + ".feat";
    WriteFeatureFile((fs::path(dir) / rel).string(), u.features);
    entries.emplace_back(u.id, rel);
    text.push_back({u.id, u.tokens});
  }
  WriteManifest((fs::path(dir) / "manifest").string(), entries);
  WriteCorpusFile(text, (fs::path(dir) / "text").string());
  WriteCorpusFile(TagCorpus(text), (fs::path(dir) / "text.tagged").string());
}

std::vector<SynthUtterance> ReadSplit(const std::string &dir) {
  const auto entries = ReadManifest((fs::path(dir) / "manifest").string());
  const Corpus text = ReadCorpusFile((fs::path(dir) / "text").string());
  std::map<std::string, const Utterance *> by_id;
  for (const auto &u : text) by_id[u.id] = &u;
  std::vector<SynthUtterance> out;
  out.reserve(entries.size());
  for (const auto &[id, path] : entries) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw DomainError("utterance " + id + " has no transcript in " + dir);
    const fs::path p = fs::path(path).is_absolute() ? fs::path(path) : fs::path(dir) / path;
    out.push_back({id, UntagCorpus({*it->second})[0].tokens, ReadFeatureFile(p.string())});
  }
  return out;
}

std::vector<std::vector<std::string>> Sentences(const Corpus &c) {
  std::vector<std::vector<std::string>> s;
  s.reserve(c.size());
  for (const auto &u : c) s.push_back(u.tokens);
  return s;
}

int CmdSynth(const Common &common, const std::string &out) {
  const RunConfig config = common.Resolve();
  if (config.synth.num_utterances < 1) throw DomainError("synth.num_utterances must be >= 1");
  const SynthData data = GenerateData(config);
  MakeDir(out);
  WriteSplit((fs::path(out) / "train").string(), data.train);
  if (!data.test.empty()) WriteSplit((fs::path(out) / "test").string(), data.test);
  EchoConfig(out, config);
  std::cerr << "wrote " << data.train.size() << " train and " << data.test.size()
            << " test utterances to " << out << "\n";
  return kOk;
}

int CmdTag(const std::string &in, const std::string &out, bool strip) {
  const Corpus c = ReadCorpusFile(in);
  WriteCorpusFile(strip ? UntagCorpus(c) : TagCorpus(c), out);
  return kOk;
}

int CmdBpeTrain(const Common &common, const std::string &text_path, int merges,
                const std::string &out) {
  RunConfig config = common.Resolve();
  if (merges >= 0) config.train.bpe_merges = merges;
  const TextModels text =
      BuildTextModels(UntagCorpus(ReadCorpusFile(text_path)), config.train.bpe_merges,
                      config.train.tagged);
  MakeDir(out);
  SaveTextModels(out, text);
  EchoConfig(out, config);
  std::cerr << text.bpe.merges.size() << " merges, " << text.vocab.size() << " symbols\n";
  return kOk;
}

int CmdTrain(const Common &common, const std::string &data_dir, const std::string &out,
             bool resume) {
  const RunConfig config = common.Resolve();
  const auto utts = ReadSplit(data_dir);
  const bool tagged = config.train.tagged;
  const TextModels text =
      BuildTextModels(TranscriptsOf(utts, false), config.train.bpe_merges, tagged);
  std::vector<Example> fit, valid;
  SplitValidation(MakeExamples(utts, text, tagged), config.train.validation_fraction, &fit,
                  &valid);
  fit = SpeedPerturb(fit, config.train.speed_rates);

  MakeDir(out);
  const std::string last = (fs::path(out) / "last.ckpt").string();
  const std::string best = (fs::path(out) / "best.ckpt").string();
  const uint64_t hash = text.vocab.Hash();
  TrainState state = resume ? LoadTrainState(last, best, hash)
                            : InitTrainState(EffectiveModelConfig(config), text.vocab,
                                             config.train);
  if (resume && state.model.config() != EffectiveModelConfig(config)) {
    throw DomainError("model config differs from the checkpoint in " + out);
  }
  SaveTextModels(out, text);
  EchoConfig(out, config);

  std::ofstream log((fs::path(out) / "train.log").string(),
                    resume ? std::ios::app : std::ios::trunc);
  std::cerr << fit.size() << " training and " << valid.size() << " validation utterances, "
            << text.vocab.size() << " symbols; starting after epoch " << state.epoch << "\n";
  Train(&state, fit, valid, config.train, [&](const EpochLog &e, const TrainState &s) {
    char line[256];
    std::snprintf(line, sizeof(line), "epoch %d train %.6f valid %.6f lr %g%s %.1fs\n", e.epoch,
                  e.train_loss, e.valid_loss, e.learning_rate, e.improved ? " *" : "",
                  e.seconds);
    log << line << std::flush;
    std::cerr << line;
    SaveTrainState(last, best, s, hash, {{"run_config", RunConfigToJson(config)}});
  });
  return kOk;
}

struct LoadedModel {
  Vocabulary vocab;
  TransducerModel<double> model;
};

LoadedModel LoadModel(const std::string &model_dir, const std::string &which) {
  if (which != "best" && which != "last") throw DomainError("--checkpoint must be best or last");
  auto vocab_in = OpenIn((fs::path(model_dir) / "vocab.txt").string());
  const Vocabulary vocab = ReadVocabulary(vocab_in);
  const auto ck = LoadTransducerCheckpoint((fs::path(model_dir) / (which + ".ckpt")).string());
  if (ck.vocab_hash != vocab.Hash()) {
    std::ostringstream msg;
    msg << "vocabulary hash mismatch: checkpoint was trained with " << std::hex << ck.vocab_hash
        << " but vocab.txt hashes to " << vocab.Hash()
        << "; decode with the vocab.txt written next to the checkpoint";
    throw DomainError(msg.str());
  }
  return {vocab, ck.model.Cast<double>()};
}

int CmdDecode(const Common &common, const std::string &model_dir, const std::string &which,
              const std::string &data_dir, const std::string &out) {
  const RunConfig config = common.Resolve();
  const LoadedModel m = LoadModel(model_dir, which);
  const auto utts = ReadSplit(data_dir);
  const auto nbest = DecodeUtterances(m.model, m.vocab, utts, config.decode, config.nbest);
  MakeDir(out);
  auto nbest_out = OpenOut((fs::path(out) / "nbest.txt").string());
  WriteNbest(nbest, nbest_out);
  WriteCorpusFile(OneBest(nbest, true), (fs::path(out) / "hyp.txt").string());
  WriteCorpusFile(OneBest(nbest, false), (fs::path(out) / "hyp.tagged.txt").string());
  EchoConfig(out, config);
  return kOk;
}

int CmdLmTrain(const Common &common, const std::string &text_path, const std::string &type,
               const std::string &out) {
  const RunConfig config = common.Resolve();
  const auto sentences = Sentences(ReadCorpusFile(text_path));
  if (type == "ngram") {
    auto os = OpenOut(out);
    NgramTrain(sentences, config.ngram).WriteArpa(os);
  } else if (type == "rnn") {
    TrainRnnLm(sentences, config.rnnlm).Save(out);
  } else {
    throw DomainError("--type must be ngram or rnn");
  }
  return kOk;
}

std::unique_ptr<LanguageModel> LoadLm(const std::string &path, const std::string &type) {
  if (type == "ngram") {
    auto is = OpenIn(path);
    return std::make_unique<NgramModel>(NgramModel::ReadArpa(is));
  }
  if (type == "rnn") return std::make_unique<RnnLm>(RnnLm::Load(path));
  throw DomainError("--lm-type must be ngram or rnn");
}

std::vector<NbestEntry> LoadNbest(const std::string &path) {
  auto is = OpenIn(path);
  return ReadNbest(is);
}

// Every reference utterance must have hypotheses.
void CheckCoverage(const std::vector<NbestEntry> &nbest, const Corpus &refs) {
  std::set<std::string> have;
  for (const auto &e : nbest) have.insert(e.utt_id);
  std::string missing;
  int count = 0;
  for (const auto &u : refs) {
    if (have.count(u.id)) continue;
    if (++count <= 10) missing += " " + u.id;
  }
  if (count > 0) {
    throw DomainError(std::to_string(count) + " utterance(s) missing from the n-best list:" +
                      missing + (count > 10 ? " ..." : ""));
  }
}

int CmdRescore(const Common &common, const std::string &nbest_path, const std::string &lm_path,
               const std::string &lm_type, const std::string &refs_path,
               const std::string &tune_nbest, const std::string &tune_refs,
               const std::string &out) {
  RunConfig config = common.Resolve();
  const auto nbest = LoadNbest(nbest_path);
  if (!refs_path.empty()) CheckCoverage(nbest, ReadCorpusFile(refs_path));
  const auto lm = LoadLm(lm_path, lm_type);
  if (tune_nbest.empty() != tune_refs.empty()) {
    throw DomainError("--tune-nbest and --tune-refs go together");
  }
  if (!tune_nbest.empty()) {
    const auto held = LoadNbest(tune_nbest);
    const Corpus held_refs = ReadCorpusFile(tune_refs);
    CheckCoverage(held, held_refs);
    double mer = 0;
    config.rescore = TuneRescore(held, held_refs, *lm, config.rescore, config.rescore_tuning, &mer);
    std::cerr << "tuned lm_weight " << config.rescore.lm_weight << " length_penalty "
              << config.rescore.length_penalty << " (held-out MER " << mer << ")\n";
  }
  WriteCorpusFile(RescoreCorpus(nbest, *lm, config.rescore), out);
  return kOk;
}

int CmdScore(const std::string &ref_path, const std::string &hyp_path, bool lid) {
  const Corpus refs = ReadCorpusFile(ref_path);
  const Corpus hyps = ReadCorpusFile(hyp_path);
  WriteMerReport(MerScore(refs, hyps), std::cout);
  if (lid) {
    const auto acc = LanguageIdAccuracy(refs, hyps);
    std::printf("LID_ACC %.2f (%lld/%lld)\n", 100.0 * acc.Rate(),
                static_cast<long long>(acc.correct), static_cast<long long>(acc.total));
  }
  return kOk;
}

int CmdSelftest() {
  bool all = true;
  for (const auto &r : oracle::RunSelfTests()) {
    std::printf("%s %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), r.seconds);
    all &= r.pass;
  }
  return all ? kOk : kNumerical;
}

int Run(int argc, char **argv) {
  CLI::App app{"Code-switching transducer toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--preset", common.preset, "desk or seame-paper")->capture_default_str();
  app.add_option("--config", common.config_path, "JSON config file applied over the preset");
  app.add_option("--set", common.overrides, "override a config key, e.g. decode.beam_size=4");

  std::string out, in, data, model, which = "best", text, type = "ngram", nbest, lm, refs,
                                    tune_nbest, tune_refs, hyp;
  bool strip = false, resume = false, lid = false;
  int merges = -1;

  auto *synth = app.add_subcommand("synth", "generate the synthetic corpus");
  synth->add_option("--out", out, "output directory")->required();

  auto *tag = app.add_subcommand("tag", "insert (or strip) language-ID tokens");
  tag->add_option("--in", in, "transcript file")->required();
  tag->add_option("--out", out, "output transcript file")->required();
  tag->add_flag("--strip", strip, "remove language IDs instead");

  auto *bpe = app.add_subcommand("bpe-train", "learn wordpieces and the output vocabulary");
  bpe->add_option("--text", text, "untagged or tagged transcript file")->required();
  bpe->add_option("--merges", merges, "number of merges (default: train.bpe_merges)");
  bpe->add_option("--out", out, "output directory")->required();

  auto *train = app.add_subcommand("train", "train a transducer");
  train->add_option("--data", data, "training split directory")->required();
  train->add_option("--out", out, "model directory")->required();
  train->add_flag("--resume", resume, "continue from last.ckpt in the model directory");

  auto *decode = app.add_subcommand("decode", "beam-search decode a split");
  decode->add_option("--model", model, "model directory")->required();
  decode->add_option("--checkpoint", which, "best or last")->capture_default_str();
  decode->add_option("--data", data, "split directory")->required();
  decode->add_option("--out", out, "output directory")->required();

  auto *lm_train = app.add_subcommand("lm-train", "train an n-gram or recurrent LM");
  lm_train->add_option("--text", text, "transcript file")->required();
  lm_train->add_option("--type", type, "ngram or rnn")->capture_default_str();
  lm_train->add_option("--out", out, "ARPA file or recurrent LM file")->required();

  auto *rescore = app.add_subcommand("rescore", "rerank an n-best list with an LM");
  rescore->add_option("--nbest", nbest, "n-best file")->required();
  rescore->add_option("--lm", lm, "LM file")->required();
  rescore->add_option("--lm-type", type, "ngram or rnn")->capture_default_str();
  rescore->add_option("--refs", refs, "reference ids that must all be present");
  rescore->add_option("--tune-nbest", tune_nbest, "held-out n-best for weight tuning");
  rescore->add_option("--tune-refs", tune_refs, "references for --tune-nbest");
  rescore->add_option("--out", out, "rescored 1-best transcript file")->required();

  auto *score = app.add_subcommand("score", "mixed error rate report");
  score->add_option("--ref", refs, "reference transcripts")->required();
  score->add_option("--hyp", hyp, "hypothesis transcripts")->required();
  score->add_flag("--lid", lid, "also report language-ID accuracy of a tagged hypothesis");

  auto *selftest = app.add_subcommand("selftest", "run the oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return CmdSynth(common, out);
    if (*tag) return CmdTag(in, out, strip);
    if (*bpe) return CmdBpeTrain(common, text, merges, out);
    if (*train) return CmdTrain(common, data, out, resume);
    if (*decode) return CmdDecode(common, model, which, data, out);
    if (*lm_train) return CmdLmTrain(common, text, type, out);
    if (*rescore) {
      return CmdRescore(common, nbest, lm, type, refs, tune_nbest, tune_refs, out);
    }
    if (*score) return CmdScore(refs, hyp, lid);
    if (*selftest) return CmdSelftest();
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace
}  // namespace csrnnt

int main(int argc, char **argv) { return csrnnt::Run(argc, argv); }
