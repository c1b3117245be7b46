// src/synth/synth.cc

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

#include "csrnnt/synth/synth.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/base/seed.h"
#include "csrnnt/base/utf8.h"
#include "csrnnt/text/language.h"

namespace csrnnt {

namespace {

const char *const kMandarinBase[] = {
    "我", "你", "他", "她", "们", "的", "是", "不", "了", "在",
    "有", "这", "个", "上", "来", "去", "说", "要", "就", "会",
    "好", "吃", "喝", "学", "校", "家", "朋", "友", "工", "作"};

const char *const kEnglishBase[] = {
    "go",      "going",   "sing",    "singing", "dance",  "dancing",
    "play",    "playing", "work",    "working", "read",   "reading",
    "talk",    "talking", "walk",    "walking", "eat",    "eating",
    "cook",    "cooking", "school",  "teacher", "friend", "happy",
    "movie",   "music",   "phone",   "coffee",  "lunch",  "weekend"};

constexpr uint64_t kStreamTranscript = 1;
constexpr uint64_t kStreamFeatures = 2;

uint64_t HashString(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void WriteU32(std::ostream &os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b, 4);
}

uint32_t ReadU32(std::istream &is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char *>(b), 4);
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

}  // namespace

void SynthConfig::Validate() const {
  if (num_utterances < 1) throw DomainError("synth: num_utterances must be >= 1");
  if (mandarin_vocab < 1 || english_vocab < 1) {
    throw DomainError("synth: vocabulary sizes must be >= 1");
  }
  if (!(p_switch > 0 && p_switch < 1)) throw DomainError("synth: p_switch must be in (0,1)");
  if (min_tokens < 1 || max_tokens < min_tokens) {
    throw DomainError("synth: need 1 <= min_tokens <= max_tokens");
  }
  if (mandarin_frames < 2 || english_frames_per_char < 1) {
    throw DomainError("synth: durations too short");
  }
  if (feature_dim < 1) throw DomainError("synth: feature_dim must be >= 1");
  if (!(noise >= 0) || !std::isfinite(noise)) throw DomainError("synth: bad noise");
  if (!(min_anchor_distance >= 0)) throw DomainError("synth: bad min_anchor_distance");
}

std::vector<std::string> MandarinPool(int size) {
  std::vector<std::string> pool;
  std::set<std::string> used;
  for (int i = 0; i < size && i < 30; ++i) {
    pool.emplace_back(kMandarinBase[i]);
    used.insert(pool.back());
  }
  for (char32_t cp = 0x4E00; static_cast<int>(pool.size()) < size; ++cp) {
    std::string ch = EncodeUtf8(cp);
    if (used.insert(ch).second) pool.push_back(ch);
  }
  return pool;
}

std::vector<std::string> EnglishPool(int size) {
  static const char kConsonants[] = "bdfgklmnprstvz";
  static const char kVowels[] = "aeiou";
  std::vector<std::string> pool;
  std::set<std::string> used;
  for (int i = 0; i < size && i < 30; ++i) {
    pool.emplace_back(kEnglishBase[i]);
    used.insert(pool.back());
  }
  for (int k = 0; static_cast<int>(pool.size()) < size; ++k) {
    std::string word;
    for (int n = k + 70;; n /= 70) {
      word += kConsonants[(n % 70) / 5];
      word += kVowels[n % 5];
      if (n < 70) break;
    }
    if (used.insert(word).second) pool.push_back(word);
  }
  return pool;
}

std::vector<std::string> GenTranscript(const SynthConfig &config,
                                       std::mt19937_64 &rng) {
  const auto man = MandarinPool(config.mandarin_vocab);
  const auto eng = EnglishPool(config.english_vocab);
  std::uniform_int_distribution<int> length(config.min_tokens, config.max_tokens);
  std::uniform_int_distribution<int> pick_man(0, config.mandarin_vocab - 1);
  std::uniform_int_distribution<int> pick_eng(0, config.english_vocab - 1);
  std::bernoulli_distribution coin(0.5), flip(config.p_switch);

  const int n = length(rng);
  bool mandarin = coin(rng);
  std::vector<std::string> tokens;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && flip(rng)) mandarin = !mandarin;
    tokens.push_back(mandarin ? man[pick_man(rng)] : eng[pick_eng(rng)]);
  }
  return tokens;
}

Corpus GenTranscripts(const SynthConfig &config) {
  config.Validate();
  Corpus corpus;
  for (int i = 0; i < config.num_utterances; ++i) {
    std::mt19937_64 rng(DeriveSeed(config.seed, kStreamTranscript, i));
    char id[32];
    std::snprintf(id, sizeof(id), "utt%05d", i);
    corpus.push_back({id, GenTranscript(config, rng)});
  }
  return corpus;
}

AnchorTable::AnchorTable(const SynthConfig &config) {
  std::vector<std::string> pool = MandarinPool(config.mandarin_vocab);
  for (auto &w : EnglishPool(config.english_vocab)) pool.push_back(w);
  std::vector<const RowVec<float> *> placed;
  const double min_sq = config.min_anchor_distance * config.min_anchor_distance;
  for (const auto &tok : pool) {
    std::mt19937_64 rng(SplitMix64(config.seed ^ HashString(tok)));
    std::normal_distribution<double> normal(0.0, 1.0);
    RowVec<float> v(config.feature_dim);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 10000) {
        throw DomainError("synth: cannot place anchors; lower min_anchor_distance");
      }
      for (int d = 0; d < config.feature_dim; ++d) v[d] = static_cast<float>(normal(rng));
      bool ok = true;
      for (const auto *p : placed) {
        if ((*p - v).cast<double>().squaredNorm() < min_sq) {
          ok = false;
          break;
        }
      }
      if (ok) break;
    }
    placed.push_back(&(anchors_[tok] = v));
  }
}

const RowVec<float> &AnchorTable::at(const std::string &token) const {
  auto it = anchors_.find(token);
  if (it == anchors_.end()) throw DomainError("synth: unknown token '" + token + "'");
  return it->second;
}

std::pair<int, int> DurationBounds(const SynthConfig &config, const std::string &token) {
  int mean;
  if (ClassifyTokenLanguage(token) == LanguageAttr::kMandarin) {
    mean = config.mandarin_frames * static_cast<int>(SplitUtf8Chars(token).size());
  } else {
    mean = config.english_frames_per_char * static_cast<int>(token.size());
  }
  return {std::max(1, mean - 1), mean + 1};
}

Tensor2<float> GenFeatures(const SynthConfig &config, const AnchorTable &anchors,
                           const std::vector<std::string> &tokens,
                           std::mt19937_64 &rng) {
  std::vector<const RowVec<float> *> rows;
  for (const auto &tok : tokens) {
    const auto &anchor = anchors.at(tok);
    const auto [lo, hi] = DurationBounds(config, tok);
    const int frames = std::uniform_int_distribution<int>(lo, hi)(rng);
    for (int f = 0; f < frames; ++f) rows.push_back(&anchor);
  }
  Tensor2<float> out(static_cast<Eigen::Index>(rows.size()), config.feature_dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (size_t t = 0; t < rows.size(); ++t) {
    out.row(t) = *rows[t];
    if (config.noise > 0) {
      for (int d = 0; d < config.feature_dim; ++d) {
        out(t, d) += static_cast<float>(config.noise * normal(rng));
      }
    }
  }
  return out;
}

template <typename Real>
Tensor2<Real> PerturbFeatures(const Tensor2<Real> &features, double rate) {
  const Eigen::Index frames = features.rows();
  if (frames < 2) throw DomainError("PerturbFeatures: need at least 2 frames");
  if (!(rate > 0.5 && rate < 2.0)) {
    throw DomainError("PerturbFeatures: rate must be in (0.5, 2)");
  }
  const auto n = static_cast<Eigen::Index>(std::llround(double(frames) / rate));
  Tensor2<Real> out(n, features.cols());
  for (Eigen::Index j = 0; j < n; ++j) {
    const double src = std::min(double(j) * rate, double(frames - 1));
    const auto lo = static_cast<Eigen::Index>(std::floor(src));
    const double frac = src - double(lo);
    if (frac == 0.0 || lo + 1 >= frames) {
      out.row(j) = features.row(lo);
    } else {
      out.row(j) = (features.row(lo).template cast<double>() * (1.0 - frac) +
                    features.row(lo + 1).template cast<double>() * frac)
                       .template cast<Real>();
    }
  }
  return out;
}

template Tensor2<float> PerturbFeatures(const Tensor2<float> &, double);
template Tensor2<double> PerturbFeatures(const Tensor2<double> &, double);

namespace {

SynthUtterance GenOne(const SynthConfig &config, const AnchorTable &anchors,
                      const std::string &prefix, uint64_t stream, int i) {
  std::mt19937_64 text_rng(DeriveSeed(config.seed, stream * 16 + kStreamTranscript, i));
  std::mt19937_64 feat_rng(DeriveSeed(config.seed, stream * 16 + kStreamFeatures, i));
  char id[32];
  std::snprintf(id, sizeof(id), "%05d", i);
  SynthUtterance u;
  u.id = prefix + id;
  u.tokens = GenTranscript(config, text_rng);
  u.features = GenFeatures(config, anchors, u.tokens, feat_rng);
  return u;
}

}  // namespace

std::vector<SynthUtterance> GenCorpus(const SynthConfig &config, int count,
                                      const std::string &prefix, uint64_t stream) {
  config.Validate();
  const AnchorTable anchors(config);
  std::vector<SynthUtterance> out(count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) out[i] = GenOne(config, anchors, prefix, stream, i);
  return out;
}

std::vector<SynthUtterance> GenCorpusSerial(const SynthConfig &config, int count,
                                            const std::string &prefix,
                                            uint64_t stream) {
  config.Validate();
  const AnchorTable anchors(config);
  std::vector<SynthUtterance> out;
  for (int i = 0; i < count; ++i) out.push_back(GenOne(config, anchors, prefix, stream, i));
  return out;
}

void WriteFeatureFile(const std::string &path, const Tensor2<float> &features) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os.write("CSFT", 4);
  WriteU32(os, static_cast<uint32_t>(features.rows()));
  WriteU32(os, static_cast<uint32_t>(features.cols()));
  os.write(reinterpret_cast<const char *>(features.data()),
           static_cast<std::streamsize>(features.size() * sizeof(float)));
  if (!os) throw IoError("write failed: " + path);
}

Tensor2<float> ReadFeatureFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "CSFT", 4) != 0) throw IoError(path + ": bad magic");
  const uint32_t rows = ReadU32(is), cols = ReadU32(is);
  if (!is) throw IoError(path + ": truncated header");
  Tensor2<float> out(rows, cols);
  is.read(reinterpret_cast<char *>(out.data()),
          static_cast<std::streamsize>(out.size() * sizeof(float)));
  if (!is) throw IoError(path + ": truncated payload");
  return out;
}

void WriteManifest(const std::string &path,
                   const std::vector<std::pair<std::string, std::string>> &entries) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  for (const auto &[id, p] : entries) os << id << '\t' << p << '\n';
  if (!os) throw IoError("write failed: " + path);
}

std::vector<std::pair<std::string, std::string>> ReadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected utt_id<TAB>path");
    }
    out.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return out;
}

}  // namespace csrnnt
