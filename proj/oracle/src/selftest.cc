// oracle/src/selftest.cc

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

#include "csrnnt/oracle/selftest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/lm/ngram.h"
#include "csrnnt/metrics/mer.h"
#include "csrnnt/nn/ops.h"
#include "csrnnt/oracle/mer-fixtures.h"
#include "csrnnt/oracle/reference.h"
#include "csrnnt/text/corpus.h"
#include "csrnnt/transducer/model.h"
#include "csrnnt/transducer/rnnt-loss.h"

namespace csrnnt::oracle {
namespace {

std::string Fmt(const char *format, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

NodeLogProbs RandomNodes(int frames, int labels, int vocab, std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  std::uniform_int_distribution<int> pick(1, vocab - 1);
  std::vector<int> target(labels);
  for (auto &y : target) y = pick(rng);
  std::vector<double> full;
  for (int node = 0; node < frames * (labels + 1); ++node) {
    std::vector<double> z(vocab);
    for (auto &v : z) v = n(rng);
    for (double v : LogSoftmax<double>(z)) full.push_back(v);
  }
  return GatherNodeLogProbs(full, frames, target, vocab, 0);
}

}  // namespace

CheckResult CheckLossOracle() {
  CheckResult o{"loss-oracle equivalence"};
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> t_dist(1, 4), u_dist(0, 3), v_dist(2, 5);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto nodes = RandomNodes(t_dist(rng), u_dist(rng), v_dist(rng), rng);
    worst = std::max(worst, std::abs(RnntLoss(nodes).loss - EnumerateAlignmentsOracle(nodes)));
  }
  o.pass = worst <= 1e-10;
  o.detail = Fmt("200 instances, max |diff| %.3g nats", worst);
  return o;
}

// ---- finite differences

const std::vector<LanguageAttr> kTinyLangs{
    LanguageAttr::kNeutral, LanguageAttr::kMandarin, LanguageAttr::kEnglish,
    LanguageAttr::kMandarin, LanguageAttr::kMandarin, LanguageAttr::kEnglish,
    LanguageAttr::kEnglish};

TransducerConfig TinyModelConfig() {
  TransducerConfig c;
  c.input_dim = 3;
  c.encoder_layers = 2;
  c.encoder_dim = 4;
  c.prediction_layers = 1;
  c.prediction_dim = 3;
  c.joint_dim = 5;
  c.embedding_dim = 3;
  c.lid_dim = 2;
  c.dropout = 0.0;
  return c;
}

CheckResult CheckGradients() {
  CheckResult o{"gradient correctness"};
  std::mt19937_64 rng(20260102);
  double node_worst = 0;
  for (int T = 1; T <= 4; ++T) {
    for (int U = 0; U <= 3; ++U) {
      NodeLogProbs nodes = RandomNodes(T, U, 5, rng);
      const auto r = RnntLoss(nodes);
      auto f = [&] { return RnntLoss(nodes).loss; };
      const auto nb = CentralDifferences(nodes.blank.data(), nodes.blank.size(), f, 1e-5);
      const auto nl = CentralDifferences(nodes.label.data(), nodes.label.size(), f, 1e-5);
      for (size_t i = 0; i < nb.size(); ++i) {
        node_worst = std::max(node_worst, RelativeError(r.grad.blank[i], nb[i], 1e-7));
        node_worst = std::max(node_worst, RelativeError(r.grad.label[i], nl[i], 1e-7));
      }
    }
  }
  double param_worst = 0;
  for (uint64_t seed : {6, 7, 8}) {
    TransducerModel<double> m(TinyModelConfig(), kTinyLangs, seed);
    std::mt19937_64 frng(seed);
    Tensor2<double> x(4, 3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(frng);
    const std::vector<int> target{1, 3, 4, 2, 5};
    std::mt19937_64 unused(0);
    std::function<double()> f = [&] {
      return ComputeLossAndGradient(m, x, std::span<const int>(target), false, unused,
                                    static_cast<TransducerParams<double> *>(nullptr));
    };
    auto grad = ZeroParams<double>(m.config(), m.vocab_size());
    ComputeLossAndGradient(m, x, std::span<const int>(target), false, unused, &grad);
    auto params = m.params().Tensors();
    const auto grads = grad.Tensors();
    for (size_t k = 0; k < params.size(); ++k) {
      const auto numeric =
          CentralDifferences(params[k]->data(), params[k]->size(), f, 1e-4);
      for (Eigen::Index i = 0; i < params[k]->size(); ++i) {
        param_worst = std::max(
            param_worst, RelativeError(grads[k]->data()[i], numeric[i], 1e-6));
      }
    }
  }
  o.pass = node_worst <= 1e-6 && param_worst <= 1e-4;
  o.detail = Fmt("node rel err %.3g (<= 1e-6), parameter rel err %.3g (<= 1e-4)", node_worst,
                 param_worst);
  return o;
}

// ---- beam search versus exhaustive search

CheckResult CheckDecoderOracle() {
  CheckResult o{"decoder oracle"};
  DecoderSymbols symbols;
  symbols.lang = {LanguageAttr::kNeutral, LanguageAttr::kMandarin, LanguageAttr::kEnglish};
  symbols.kind = {SymbolKind::kBlank, SymbolKind::kMandarinChar, SymbolKind::kEnglishWordpiece};
  TransducerConfig c = TinyModelConfig();
  c.encoder_layers = 1;
  c.prediction_dim = 4;
  DecodeConfig dc;
  dc.beam_size = 1000;
  dc.max_symbols_per_frame = 1;
  int matched = 0, ties = 0;
  for (int seed = 0; seed < 50; ++seed) {
    TransducerModel<double> model(c, symbols.lang, 3000 + seed);
    model.params().Scale(3.0);
    std::mt19937_64 rng(4000 + seed);
    std::uniform_real_distribution<double> u(-2, 2);
    Tensor2<double> x(1 + seed % 3, 3);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
    const auto truth = ExhaustiveDecode(model, symbols, x, dc);
    const auto hyps = BeamSearchDecode(model, symbols, x, dc);
    const bool same_score =
        !hyps.empty() &&
        std::abs(hyps[0].log_prob - truth.log_prob) <= 1e-9 * std::max(1.0, std::abs(truth.log_prob));
    // An exact tie between two sequences makes either one the argmax.
    const bool tie = truth.runner_up_gap <= 1e-9;
    ties += tie;
    matched += same_score && (tie || hyps[0].tokens == truth.tokens);
  }
  o.pass = matched == 50;
  o.detail = Fmt("%.0f/50 seeds return the exhaustive argmax (%.0f exact ties)", matched, ties);
  return o;
}

// ---- MER fixtures

CheckResult CheckMerFixtures() {
  CheckResult o{"MER fixtures"};
  int exact = 0, total = 0;
  for (const auto &f : fixtures::MerFixtures()) {
    ++total;
    const MerReport r =
        MerScore({{"u", SplitWhitespace(f.ref)}}, {{"u", SplitWhitespace(f.hyp)}});
    exact += r.errors == EditCounts{f.s, f.i, f.d} && r.ref_units == f.ref_units &&
             r.mandarin.ref_units == f.man_units && r.mandarin.errors.Total() == f.man_errors &&
             r.english.ref_units == f.eng_units && r.english.errors.Total() == f.eng_errors;
  }
  o.pass = total >= 10 && exact == total;
  o.detail = Fmt("%.0f/%.0f hand-scored fixtures match", exact, total);
  return o;
}

// ---- n-gram sanity

CheckResult CheckNgramSanity() {
  CheckResult o{"n-gram sanity"};
  const std::vector<std::vector<std::string>> three{{"a", "b"}, {"a", "a", "b"}, {"b", "a"}};
  const std::string s = kSentenceStart, e = kSentenceEnd;
  const NgramModel m = NgramTrain(three, NgramConfig{2, 0.0});
  struct Expect {
    std::vector<std::string> ctx;
    std::string w;
    double p;
  };
  // Bigram counts: <s> a 2, <s> b 1; a b 2, a a 1, a </s> 1; b </s> 2, b a 1.
  const std::vector<Expect> expect{
      {{s}, "a", 2.0 / 3}, {{s}, "b", 1.0 / 3}, {{"a"}, "b", 2.0 / 4}, {{"a"}, "a", 1.0 / 4},
      {{"a"}, e, 1.0 / 4}, {{"b"}, e, 2.0 / 3}, {{"b"}, "a", 1.0 / 3}, {{"b"}, "b", 0.0}};
  int exact = 0;
  for (const auto &x : expect) exact += m.Prob(x.ctx, x.w) == x.p;
  double worst = 0;
  int contexts = 0;
  for (int order = 1; order <= 4; ++order) {
    const NgramModel d = NgramTrain(three, NgramConfig{order, 0.75});
    for (int len = 0; len < order; ++len) {
      for (const auto &ctx : d.Contexts(len)) {
        double sum = 0;
        for (const auto &w : d.vocab()) sum += d.Prob(ctx, w);
        worst = std::max(worst, std::abs(sum - 1.0));
        ++contexts;
      }
    }
  }
  o.pass = exact == static_cast<int>(expect.size()) && worst <= 1e-9;
  o.detail = Fmt("%.0f/%.0f exact relative frequencies; %.0f contexts sum to 1 within %.2g",
                 exact, expect.size(), contexts, worst);
  return o;
}

std::vector<CheckResult> RunSelfTests() {
  std::vector<CheckResult> out;
  for (auto check : {CheckLossOracle, CheckGradients, CheckDecoderOracle, CheckMerFixtures,
                     CheckNgramSanity}) {
    const auto t0 = std::chrono::steady_clock::now();
    out.push_back(check());
    out.back().seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

}  // namespace csrnnt::oracle
