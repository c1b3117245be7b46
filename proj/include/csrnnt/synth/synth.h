// include/csrnnt/synth/synth.h

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

#ifndef CSRNNT_SYNTH_SYNTH_H_
#define CSRNNT_SYNTH_SYNTH_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "csrnnt/nn/tensor.h"
#include "csrnnt/text/corpus.h"

namespace csrnnt {

struct SynthConfig {
  uint64_t seed = 42;
  int num_utterances = 2000;
  int mandarin_vocab = 30;
  int english_vocab = 30;
  double p_switch = 0.3;
  int min_tokens = 4;
  int max_tokens = 12;
  int mandarin_frames = 8;           // mean frames per character
  int english_frames_per_char = 3;   // mean frames per letter of a word
  int feature_dim = 16;
  double noise = 0.1;                // per-dimension Gaussian sigma
  double min_anchor_distance = 3.0;  // rejection threshold between anchors

  void Validate() const;  // DomainError on out-of-range fields
};

struct SynthUtterance {
  std::string id;
  std::vector<std::string> tokens;  // untagged
  Tensor2<float> features;          // frames x feature_dim
};

// Token pools. The first 30 entries are fixed; larger pools are extended
// with generated tokens.
std::vector<std::string> MandarinPool(int size);
std::vector<std::string> EnglishPool(int size);

// Markov language process: the first token's language is a fair coin; each
// next token keeps the language with prob 1 - p_switch. Tokens are uniform
// within the language pool, lengths uniform in [min_tokens, max_tokens].
std::vector<std::string> GenTranscript(const SynthConfig &config,
                                       std::mt19937_64 &rng);
Corpus GenTranscripts(const SynthConfig &config);

// Anchor vector of every pool token. Each anchor is drawn from a generator
// seeded by (seed, token) and redrawn until it is at least
// min_anchor_distance away from all anchors earlier in pool order.
class AnchorTable {
 public:
  explicit AnchorTable(const SynthConfig &config);

  const RowVec<float> &at(const std::string &token) const;  // DomainError
  bool contains(const std::string &token) const { return anchors_.count(token) > 0; }
  const std::map<std::string, RowVec<float>> &anchors() const { return anchors_; }

 private:
  std::map<std::string, RowVec<float>> anchors_;
};

// Frame range [lo, hi] of a token's duration.
std::pair<int, int> DurationBounds(const SynthConfig &config, const std::string &token);

// Each token emits a uniform duration within DurationBounds; every frame is
// the token's anchor plus N(0, noise^2) per dimension.
Tensor2<float> GenFeatures(const SynthConfig &config, const AnchorTable &anchors,
                           const std::vector<std::string> &tokens,
                           std::mt19937_64 &rng);

// Linear time-axis resampling to round(T / rate) frames: output frame j
// reads source time min(j * rate, T - 1). rate 1 is an exact copy. Throws
// DomainError when T < 2 or rate is outside (0.5, 2).
template <typename Real>
Tensor2<Real> PerturbFeatures(const Tensor2<Real> &features, double rate);

// Full corpus: `count` utterances named <prefix>NNNNN from stream `stream`.
// Generation is parallel over utterances; the serial version is the
// reference and produces identical output.
std::vector<SynthUtterance> GenCorpus(const SynthConfig &config, int count,
                                      const std::string &prefix, uint64_t stream);
std::vector<SynthUtterance> GenCorpusSerial(const SynthConfig &config, int count,
                                            const std::string &prefix,
                                            uint64_t stream);

// Feature file: "CSFT", u32 T, u32 F, then T*F little-endian float32.
void WriteFeatureFile(const std::string &path, const Tensor2<float> &features);
Tensor2<float> ReadFeatureFile(const std::string &path);

// Manifest: utt_id<TAB>path per line.
void WriteManifest(const std::string &path,
                   const std::vector<std::pair<std::string, std::string>> &entries);
std::vector<std::pair<std::string, std::string>> ReadManifest(const std::string &path);

}  // namespace csrnnt

#endif  // CSRNNT_SYNTH_SYNTH_H_
