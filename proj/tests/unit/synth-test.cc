// tests/unit/synth-test.cc

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

#include "doctest.h"

#include <cmath>
#include <fstream>
#include <set>

#include "csrnnt/base/errors.h"
#include "csrnnt/synth/synth.h"
#include "csrnnt/text/language.h"
#include "test-helpers.h"

namespace csrnnt {
namespace {

int CountSwitches(const std::vector<std::string> &tokens, int *transitions) {
  int switches = 0;
  for (size_t i = 1; i < tokens.size(); ++i) {
    ++*transitions;
    switches += ClassifyTokenLanguage(tokens[i]) != ClassifyTokenLanguage(tokens[i - 1]);
  }
  return switches;
}

TEST_CASE("vanishing switch probability gives monolingual utterances") {
  SynthConfig c;
  c.p_switch = 1e-9;
  std::mt19937_64 rng(1);
  int transitions = 0, switches = 0;
  for (int i = 0; i < 1000; ++i) switches += CountSwitches(GenTranscript(c, rng), &transitions);
  CHECK(switches == 0);
  CHECK(transitions > 1000);
}

TEST_CASE("empirical switch rate matches p_switch") {
  SynthConfig c;
  std::mt19937_64 rng(2);
  int transitions = 0, switches = 0;
  while (transitions < 100000) switches += CountSwitches(GenTranscript(c, rng), &transitions);
  CHECK(std::abs(double(switches) / transitions - c.p_switch) <= 0.01);
}

TEST_CASE("transcripts: lengths, pools and determinism") {
  SynthConfig c;
  c.num_utterances = 300;
  const Corpus a = GenTranscripts(c), b = GenTranscripts(c);
  CHECK(a == b);
  const auto man = MandarinPool(c.mandarin_vocab), eng = EnglishPool(c.english_vocab);
  CHECK(man.size() == 30);
  CHECK(eng.size() == 30);
  for (const auto &u : a) {
    CHECK(u.tokens.size() >= 4);
    CHECK(u.tokens.size() <= 12);
    for (const auto &t : u.tokens) {
      const bool known = std::find(man.begin(), man.end(), t) != man.end() ||
                         std::find(eng.begin(), eng.end(), t) != eng.end();
      CHECK(known);
    }
  }
  CHECK(a.front().id == "utt00000");
  SynthConfig other = c;
  other.seed = 43;
  CHECK(GenTranscripts(other) != a);
  // Larger pools are extended with distinct generated tokens.
  const auto big = MandarinPool(100);
  CHECK(std::set<std::string>(big.begin(), big.end()).size() == 100);
  for (const auto &t : big) CHECK(ClassifyTokenLanguage(t) == LanguageAttr::kMandarin);
  for (const auto &t : EnglishPool(80)) CHECK(ClassifyTokenLanguage(t) == LanguageAttr::kEnglish);
}

TEST_CASE("config validation") {
  auto bad = [](auto mutate) {
    SynthConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.Validate(), DomainError);
  };
  bad([](SynthConfig &c) { c.p_switch = 0; });
  bad([](SynthConfig &c) { c.p_switch = 1; });
  bad([](SynthConfig &c) { c.mandarin_vocab = 0; });
  bad([](SynthConfig &c) { c.feature_dim = 0; });
  bad([](SynthConfig &c) { c.min_tokens = 5, c.max_tokens = 4; });
  bad([](SynthConfig &c) { c.noise = -1; });
  SynthConfig ok;
  CHECK_NOTHROW(ok.Validate());
}

TEST_CASE("anchors are separated") {
  const SynthConfig c;
  const AnchorTable table(c);
  CHECK(table.anchors().size() == 60);
  std::vector<RowVec<float>> rows;
  for (const auto &[t, a] : table.anchors()) rows.push_back(a);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      CHECK((rows[i] - rows[j]).norm() >= c.min_anchor_distance);
    }
  }
  CHECK_THROWS_AS(table.at("nope"), DomainError);
}

TEST_CASE("noise-free features equal the anchors and respect durations") {
  SynthConfig c;
  c.noise = 0;
  const AnchorTable table(c);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tokens = GenTranscript(c, rng);
    const auto x = GenFeatures(c, table, tokens, rng);
    int lo = 0, hi = 0;
    for (const auto &t : tokens) {
      lo += DurationBounds(c, t).first;
      hi += DurationBounds(c, t).second;
    }
    CHECK(x.rows() >= lo);
    CHECK(x.rows() <= hi);
    CHECK(x.cols() == c.feature_dim);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      bool matches_some = false;
      for (const auto &t : tokens) matches_some |= x.row(r) == table.at(t);
      CHECK(matches_some);
    }
  }
  CHECK(DurationBounds(c, "我") == std::make_pair(7, 9));
  CHECK(DurationBounds(c, "go") == std::make_pair(5, 7));
  CHECK_THROWS_AS(GenFeatures(c, table, {"nope"}, rng), DomainError);
}

TEST_CASE("nearest-anchor classification recovers the token") {
  const SynthConfig c;
  const AnchorTable table(c);
  std::mt19937_64 rng(4);
  int64_t correct = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto tokens = GenTranscript(c, rng);
    // Single-token features keep the frame-to-token mapping trivial.
    for (const auto &t : tokens) {
      const auto x = GenFeatures(c, table, {t}, rng);
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        std::string best;
        float best_d = std::numeric_limits<float>::infinity();
        for (const auto &[name, a] : table.anchors()) {
          const float d = (x.row(r) - a).squaredNorm();
          if (d < best_d) best_d = d, best = name;
        }
        correct += best == t;
        ++total;
      }
    }
  }
  CHECK(double(correct) / double(total) >= 0.99);
}

TEST_CASE("speed perturbation of a ramp") {
  Tensor2<double> ramp(11, 2);
  for (int t = 0; t < 11; ++t) ramp(t, 0) = t, ramp(t, 1) = 2.0 * t + 1;
  const auto fast = PerturbFeatures(ramp, 1.1);
  REQUIRE(fast.rows() == 10);
  for (int j = 0; j < 10; ++j) {
    CHECK(fast(j, 0) == doctest::Approx(1.1 * j).epsilon(1e-12));
    CHECK(fast(j, 1) == doctest::Approx(2.2 * j + 1).epsilon(1e-12));
  }
  const auto slow = PerturbFeatures(ramp, 0.9);
  REQUIRE(slow.rows() == 12);
  CHECK(slow(11, 0) == doctest::Approx(9.9).epsilon(1e-12));
  const auto same = PerturbFeatures(ramp, 1.0);
  CHECK((same.array() == ramp.array()).all());
  Tensor2<float> noisy(5, 3);
  noisy.setRandom();
  CHECK((PerturbFeatures(noisy, 1.0).array() == noisy.array()).all());
  CHECK_THROWS_AS(PerturbFeatures(Tensor2<double>(1, 2), 1.1), DomainError);
  CHECK_THROWS_AS(PerturbFeatures(ramp, 0.5), DomainError);
  CHECK_THROWS_AS(PerturbFeatures(ramp, 2.0), DomainError);
}

TEST_CASE("corpus generation: parallel equals serial and is repeatable") {
  SynthConfig c;
  const auto par = GenCorpus(c, 40, "utt", 0);
  const auto ser = GenCorpusSerial(c, 40, "utt", 0);
  const auto again = GenCorpus(c, 40, "utt", 0);
  const auto other = GenCorpus(c, 40, "test", 1);
  REQUIRE(par.size() == 40);
  for (size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].id == ser[i].id);
    CHECK(par[i].tokens == ser[i].tokens);
    CHECK((par[i].features.array() == ser[i].features.array()).all());
    CHECK((par[i].features.array() == again[i].features.array()).all());
    CHECK(par[i].features.allFinite());
  }
  CHECK(other[0].id == "test00000");
  CHECK(other[0].tokens != par[0].tokens);
}

TEST_CASE("feature files and manifests round trip") {
  testing::TempDir dir("synth");
  SynthConfig c;
  const auto utts = GenCorpus(c, 3, "utt", 0);
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto &u : utts) {
    const std::string path = dir.File(u.id + ".feat");
    WriteFeatureFile(path, u.features);
    entries.emplace_back(u.id, path);
    const auto back = ReadFeatureFile(path);
    CHECK((back.array() == u.features.array()).all());
  }
  WriteManifest(dir.File("manifest"), entries);
  CHECK(ReadManifest(dir.File("manifest")) == entries);

  // 4-byte magic + two u32 + floats.
  std::ifstream in(entries[0].second, std::ios::binary | std::ios::ate);
  CHECK(static_cast<int64_t>(in.tellg()) == 12 + 4 * utts[0].features.size());

  std::ofstream(dir.File("bad.feat"), std::ios::binary) << "NOPE\x01\x00\x00\x00";
  CHECK_THROWS_AS(ReadFeatureFile(dir.File("bad.feat")), IoError);
  CHECK_THROWS_AS(ReadFeatureFile(dir.File("missing.feat")), IoError);
}

}  // namespace
}  // namespace csrnnt
