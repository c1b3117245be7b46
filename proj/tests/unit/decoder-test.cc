// tests/unit/decoder-test.cc

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
#include <numeric>
#include <random>

#include "csrnnt/base/errors.h"
#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/oracle/reference.h"
#include "csrnnt/text/language.h"
#include "csrnnt/transducer/rnnt-loss.h"
#include "test-helpers.h"

namespace csrnnt {
namespace {

using testing::RandomMatrix;

// {blank, <chn>, <eng>, a (English), b (Mandarin)}
DecoderSymbols FiveSymbols() {
  DecoderSymbols s;
  s.lang = {LanguageAttr::kNeutral, LanguageAttr::kMandarin, LanguageAttr::kEnglish,
            LanguageAttr::kEnglish, LanguageAttr::kMandarin};
  s.kind = {SymbolKind::kBlank, SymbolKind::kLanguageId, SymbolKind::kLanguageId,
            SymbolKind::kEnglishWordpiece, SymbolKind::kMandarinChar};
  return s;
}

// {blank, x (Mandarin), y (English)}: no language-ID symbols.
DecoderSymbols ThreeSymbols() {
  DecoderSymbols s;
  s.lang = {LanguageAttr::kNeutral, LanguageAttr::kMandarin, LanguageAttr::kEnglish};
  s.kind = {SymbolKind::kBlank, SymbolKind::kMandarinChar, SymbolKind::kEnglishWordpiece};
  return s;
}

TransducerConfig TinyConfig(int input_dim) {
  TransducerConfig c;
  c.input_dim = input_dim;
  c.encoder_layers = 1;
  c.encoder_dim = 4;
  c.prediction_layers = 1;
  c.prediction_dim = 4;
  c.joint_dim = 5;
  c.embedding_dim = 3;
  c.lid_dim = 2;
  c.dropout = 0;
  return c;
}

// Random tiny model with weights scaled up so posteriors are peaked.
TransducerModel<double> TinyModel(const DecoderSymbols &symbols, uint64_t seed,
                                  double scale) {
  TransducerModel<double> m(TinyConfig(3), symbols.lang, seed);
  m.params().Scale(scale);
  return m;
}

// Saturating beam for T frames, one label per frame.
DecodeConfig ExhaustiveBeam(LambdaMode mode, double lambda) {
  DecodeConfig c;
  c.beam_size = 1000;
  c.lambda_mode = mode;
  c.lambda = lambda;
  c.max_symbols_per_frame = 1;
  return c;
}

std::vector<double> Uniform(int n) { return std::vector<double>(n, std::log(1.0 / n)); }

TEST_CASE("reweighting with lambda 0 is bit-identical") {
  std::mt19937_64 rng(3);
  const auto symbols = FiveSymbols();
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> z(5);
    for (auto &v : z) v = n(rng);
    const double lse = std::log(std::accumulate(z.begin(), z.end(), 0.0,
                                                [](double a, double b) { return a + std::exp(b); }));
    for (auto &v : z) v -= lse;
    for (auto lang : {LanguageAttr::kEnglish, LanguageAttr::kMandarin, LanguageAttr::kNeutral}) {
      const auto out = ReweightPosteriors(z, symbols, lang, 0.0);
      for (size_t i = 0; i < z.size(); ++i) CHECK(out[i] == z[i]);
    }
  }
}

TEST_CASE("reweighting uniform input toward English") {
  const auto out = ReweightPosteriors(Uniform(5), FiveSymbols(), LanguageAttr::kEnglish, 0.2);
  CHECK(std::exp(out[3]) == doctest::Approx(0.24 / 1.04).epsilon(1e-12));
  CHECK(std::exp(out[3]) == doctest::Approx(0.23077).epsilon(1e-4));
  for (int i : {0, 1, 2, 4}) CHECK(std::exp(out[i]) == doctest::Approx(0.2 / 1.04).epsilon(1e-12));
}

TEST_CASE("reweighting neutral language leaves input unchanged") {
  const auto in = Uniform(5);
  const auto out = ReweightPosteriors(in, FiveSymbols(), LanguageAttr::kNeutral, 0.2);
  CHECK(out == in);
}

TEST_CASE("reweighting properties") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0, 2);
  DecoderSymbols symbols = FiveSymbols();
  // A wider table: a few more symbols of each language.
  for (int i = 0; i < 6; ++i) {
    symbols.lang.push_back(i % 2 ? LanguageAttr::kEnglish : LanguageAttr::kMandarin);
    symbols.kind.push_back(i % 2 ? SymbolKind::kEnglishWordpiece : SymbolKind::kMandarinChar);
  }
  const int V = symbols.size();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> z(V);
    for (auto &v : z) v = n(rng);
    double mx = *std::max_element(z.begin(), z.end()), s = 0;
    for (double v : z) s += std::exp(v - mx);
    for (auto &v : z) v -= mx + std::log(s);
    const auto cur = trial % 2 ? LanguageAttr::kEnglish : LanguageAttr::kMandarin;
    const double lambda = 0.05 * (trial % 20);
    const auto out = ReweightPosteriors(z, symbols, cur, lambda);
    double total = 0;
    for (double v : out) total += std::exp(v);
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (int i = 0; i < V; ++i) {
      for (int j = 0; j < V; ++j) {
        const bool same = symbols.lang[i] == symbols.lang[j] && symbols.kind[i] == symbols.kind[j];
        if (same && z[i] < z[j]) CHECK(out[i] < out[j]);
      }
    }
  }
}

TEST_CASE("reweighting rejects bad input") {
  std::vector<double> bad(5, std::log(0.3));
  CHECK_THROWS_AS(ReweightPosteriors(bad, FiveSymbols(), LanguageAttr::kEnglish, 0.2),
                  DomainError);
  CHECK_THROWS_AS(ReweightPosteriors(Uniform(5), FiveSymbols(), LanguageAttr::kEnglish, -0.1),
                  DomainError);
  DecodeConfig c;
  c.beam_size = 0;
  CHECK_THROWS_AS(c.Validate(), DomainError);
  c.beam_size = 2;
  c.lambda = std::nan("");
  CHECK_THROWS_AS(c.Validate(), DomainError);
}

TEST_CASE("effective lambda per mode") {
  Hypothesis h;
  h.language_id_posterior = 0.7;
  DecodeConfig c;
  c.lambda = 0.2;
  c.lambda_mode = LambdaMode::kOff;
  CHECK(EffectiveLambda(c, h) == 0.0);
  c.lambda_mode = LambdaMode::kFixed;
  CHECK(EffectiveLambda(c, h) == 0.2);
  c.lambda_mode = LambdaMode::kProb;
  CHECK(EffectiveLambda(c, h) == 0.7);
  CHECK(ParseLambdaMode("prob") == LambdaMode::kProb);
  CHECK(LambdaModeName(LambdaMode::kFixed) == "fixed");
  CHECK_THROWS_AS(ParseLambdaMode("sometimes"), DomainError);
}

TEST_CASE("zero frames decode to one empty hypothesis") {
  const auto symbols = ThreeSymbols();
  const auto model = TinyModel(symbols, 1, 1.0);
  const auto hyps = BeamSearchDecode(model, symbols, Tensor2<double>(0, 3), DecodeConfig{});
  REQUIRE(hyps.size() == 1);
  CHECK(hyps[0].tokens.empty());
  CHECK(hyps[0].log_prob == 0.0);
}

// Decoder top-1 against brute force over every emission sequence.
void CheckAgainstExhaustive(const DecoderSymbols &symbols, LambdaMode mode, double lambda,
                            int seeds) {
  int compared = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto model = TinyModel(symbols, 77 + seed, 3.0);
    const int T = 1 + seed % 3;
    const auto x = RandomMatrix<double>(T, 3, rng, 2.0);
    const auto config = ExhaustiveBeam(mode, lambda);
    const auto truth = oracle::ExhaustiveDecode(model, symbols, x, config);
    const auto hyps = BeamSearchDecode(model, symbols, x, config);
    REQUIRE(!hyps.empty());
    INFO("seed ", seed, " T ", T);
    CHECK(hyps[0].log_prob == doctest::Approx(truth.log_prob).epsilon(1e-9));
    CHECK(hyps.size() == static_cast<size_t>(truth.num_sequences));
    if (truth.runner_up_gap > 1e-9) {
      CHECK(hyps[0].tokens == truth.tokens);
      ++compared;
    }
    for (const auto &h : hyps) CHECK(h.log_prob <= 0.0);
  }
  CHECK(compared >= seeds * 9 / 10);
}

TEST_CASE("beam search matches exhaustive search on tiny models") {
  SUBCASE("three symbols, standard decoding") {
    CheckAgainstExhaustive(ThreeSymbols(), LambdaMode::kOff, 0.0, 50);
  }
  SUBCASE("language IDs, fixed re-weighting") {
    CheckAgainstExhaustive(FiveSymbols(), LambdaMode::kFixed, 0.2, 50);
  }
  SUBCASE("language IDs, standard decoding") {
    CheckAgainstExhaustive(FiveSymbols(), LambdaMode::kOff, 0.0, 50);
  }
}

TransducerConfig SmallConfig() {
  TransducerConfig c = TinyConfig(4);
  c.encoder_dim = 8;
  c.prediction_dim = 8;
  c.joint_dim = 8;
  return c;
}

bool SameHypotheses(const std::vector<Hypothesis> &a, const std::vector<Hypothesis> &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].tokens != b[i].tokens || a[i].log_prob != b[i].log_prob) return false;
  }
  return true;
}

TEST_CASE("lambda 0 and mode off give identical beams") {
  const auto symbols = FiveSymbols();
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    TransducerModel<double> model(SmallConfig(), symbols.lang, 500 + seed);
    model.params().Scale(2.0);
    const auto x = RandomMatrix<double>(6, 4, rng, 1.5);
    DecodeConfig off;
    off.beam_size = 4;
    DecodeConfig fixed0 = off;
    fixed0.lambda_mode = LambdaMode::kFixed;
    fixed0.lambda = 0.0;
    CHECK(SameHypotheses(BeamSearchDecode(model, symbols, x, off),
                         BeamSearchDecode(model, symbols, x, fixed0)));
  }
}

TEST_CASE("mode off ignores language metadata of the symbols") {
  const auto symbols = FiveSymbols();
  DecoderSymbols plain = symbols;
  std::fill(plain.lang.begin(), plain.lang.end(), LanguageAttr::kNeutral);
  for (int seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    TransducerModel<double> model(SmallConfig(), symbols.lang, 900 + seed);
    model.params().Scale(2.0);
    const auto x = RandomMatrix<double>(5, 4, rng, 1.5);
    DecodeConfig off;
    off.beam_size = 3;
    CHECK(SameHypotheses(BeamSearchDecode(model, symbols, x, off),
                         BeamSearchDecode(model, plain, x, off)));
  }
}

TEST_CASE("wider beams never lower the best log-prob") {
  const auto symbols = FiveSymbols();
  int violations = 0;
  for (int seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    TransducerModel<double> model(SmallConfig(), symbols.lang, 300 + seed);
    model.params().Scale(2.0);
    const auto x = RandomMatrix<double>(6, 4, rng, 1.5);
    double prev = -std::numeric_limits<double>::infinity();
    for (int beam : {1, 2, 4, 8, 16, 64}) {
      DecodeConfig c;
      c.beam_size = beam;
      c.max_symbols_per_frame = 2;
      const double best = BeamSearchDecode(model, symbols, x, c).front().log_prob;
      if (best < prev - 1e-12) {
        ++violations;
        MESSAGE("seed ", seed, " beam ", beam, " best ", best, " prev ", prev);
      }
      prev = std::max(prev, best);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("hypothesis language follows the last emitted ID") {
  const auto symbols = FiveSymbols();
  std::mt19937_64 rng(4);
  TransducerModel<double> model(SmallConfig(), symbols.lang, 12);
  model.params().Scale(2.0);
  DecodeConfig c;
  c.beam_size = 16;
  c.lambda_mode = LambdaMode::kProb;
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = RandomMatrix<double>(6, 4, rng, 1.5);
    for (const auto &h : BeamSearchDecode(model, symbols, x, c)) {
      LanguageAttr expect = LanguageAttr::kNeutral;
      for (int id : h.tokens) {
        if (symbols.kind[id] == SymbolKind::kLanguageId) expect = symbols.lang[id];
      }
      CHECK(h.current_language == expect);
      CHECK(h.language_id_posterior >= 0.0);
      CHECK(h.language_id_posterior <= 1.0);
      for (int id : h.tokens) CHECK(id != 0);
    }
  }
}

TEST_CASE("batch decoding: parallel and serial agree") {
  const auto symbols = FiveSymbols();
  TransducerModel<double> model(SmallConfig(), symbols.lang, 21);
  model.params().Scale(2.0);
  std::mt19937_64 rng(8);
  std::vector<Tensor2<double>> feats;
  for (int i = 0; i < 12; ++i) feats.push_back(RandomMatrix<double>(2 + i % 5, 4, rng, 1.5));
  DecodeConfig c;
  c.beam_size = 4;
  c.lambda_mode = LambdaMode::kFixed;
  const auto par = DecodeBatch(model, symbols, feats, c);
  const auto ser = DecodeBatchSerial(model, symbols, feats, c);
  REQUIRE(par.size() == ser.size());
  for (size_t i = 0; i < par.size(); ++i) CHECK(SameHypotheses(par[i], ser[i]));
}

TEST_CASE("strip language ids") {
  CHECK(StripLanguageIds({"<chn>", "我", "<eng>", "go"}) == std::vector<std::string>{"我", "go"});
  CHECK(StripLanguageIds({"我", "go"}) == std::vector<std::string>{"我", "go"});
  CHECK(StripLanguageIds({"<chn>", "<eng>"}).empty());
}

TEST_CASE("collapse alignment") {
  CHECK(CollapseAlignment(std::vector<int>{3, 0, 4, 0, 0, 5}, 0) == std::vector<int>{3, 4, 5});
  CHECK(CollapseAlignment(std::vector<int>{0, 0, 0}, 0).empty());
  CHECK(CollapseAlignment(std::vector<int>{3, 3, 4}, 0) == std::vector<int>{3, 3, 4});
}

}  // namespace
}  // namespace csrnnt
