// tests/unit/lm-test.cc

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
#include <random>
#include <sstream>

#include "csrnnt/base/errors.h"
#include "csrnnt/lm/ngram.h"
#include "csrnnt/lm/rescore.h"
#include "csrnnt/lm/rnnlm.h"
#include "csrnnt/text/corpus.h"
#include "test-helpers.h"

namespace csrnnt {
namespace {

using Sentences = std::vector<std::vector<std::string>>;
using Words = std::vector<std::string>;

// <s> a b </s> / <s> a a b </s> / <s> b a </s>
const Sentences kThree{{"a", "b"}, {"a", "a", "b"}, {"b", "a"}};

NgramModel Train(const Sentences &s, int order, double d) {
  return NgramTrain(s, NgramConfig{order, d});
}

double P(const NgramModel &m, Words ctx, const std::string &w) { return m.Prob(ctx, w); }

TEST_CASE("unigram relative frequencies with discount 0") {
  const NgramModel m = Train({{"a", "a", "b"}}, 1, 0.0);
  CHECK(P(m, {}, "a") == 2.0 / 4.0);
  CHECK(P(m, {}, "b") == 1.0 / 4.0);
  CHECK(P(m, {}, kSentenceEnd) == 1.0 / 4.0);
  CHECK(P(m, {}, "a") / P(m, {}, "b") == 2.0);
  CHECK(P(m, {}, "zzz") == 0.0);
  const double expect = 2 * std::log(0.5) + std::log(0.25) + std::log(0.25);
  CHECK(m.LogProb({"a", "a", "b"}, true) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("bigram relative frequencies on three sentences with discount 0") {
  const NgramModel m = Train(kThree, 2, 0.0);
  const std::string s = kSentenceStart, e = kSentenceEnd;
  CHECK(P(m, {s}, "a") == 2.0 / 3.0);
  CHECK(P(m, {s}, "b") == 1.0 / 3.0);
  CHECK(P(m, {"a"}, "b") == 2.0 / 4.0);
  CHECK(P(m, {"a"}, "a") == 1.0 / 4.0);
  CHECK(P(m, {"a"}, e) == 1.0 / 4.0);
  CHECK(P(m, {"b"}, e) == 2.0 / 3.0);
  CHECK(P(m, {"b"}, "a") == 1.0 / 3.0);
  CHECK(P(m, {"b"}, "b") == 0.0);
  // Only the last token of a longer context matters for a bigram model.
  CHECK(P(m, {"b", "a"}, "b") == 2.0 / 4.0);
}

TEST_CASE("4-gram with discount 0 reproduces long-context counts") {
  const NgramModel m = Train(kThree, 4, 0.0);
  CHECK(P(m, {kSentenceStart, "a", "a"}, "b") == 1.0);
  CHECK(P(m, {kSentenceStart, "a"}, "a") == 1.0 / 2.0);
  CHECK(P(m, {kSentenceStart, "a"}, "b") == 1.0 / 2.0);
  CHECK(P(m, {"a", "a", "b"}, kSentenceEnd) == 1.0);
  // Unseen 4-gram falls back through zero-mass backoff: probability 0.
  CHECK(P(m, {"a", "a", "b"}, "a") == 0.0);
}

TEST_CASE("discounted estimates sum to one in every observed context") {
  const Sentences corpora[] = {
      kThree,
      {{"x", "y", "z", "x"}, {"y", "y"}, {"z", "x", "y", "<chn>", "我"}, {"我", "们"}},
  };
  for (const auto &corpus : corpora) {
    for (int order = 1; order <= 4; ++order) {
      const NgramModel m = Train(corpus, order, 0.75);
      for (int len = 0; len < order; ++len) {
        for (const auto &ctx : m.Contexts(len)) {
          double total = 0;
          for (const auto &w : m.vocab()) total += m.Prob(ctx, w);
          INFO("order ", order, " context ", JoinTokens(ctx));
          CHECK(std::abs(total - 1.0) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("unseen words: zero without discount, positive with it") {
  CHECK(Train(kThree, 3, 0.0).Prob(Words{"a"}, "nope") == 0.0);
  const NgramModel m = Train(kThree, 3, 0.75);
  CHECK(m.Prob(Words{"a"}, "nope") > 0.0);
  CHECK(m.Prob(Words{"a"}, "nope") == m.Prob(Words{"a"}, kUnknownWord));
  CHECK(std::isfinite(Train(kThree, 3, 0.0).LogProb({"nope", "b"}, true)));
}

TEST_CASE("empty sentence scores only the end marker") {
  const NgramModel m = Train(kThree, 4, 0.75);
  CHECK(m.LogProb({}, true) == std::log(m.Prob(Words{kSentenceStart}, kSentenceEnd)));
  CHECK(m.LogProb({}, false) == 0.0);
  CHECK(m.LogProb({}) == m.LogProb({}, true));
}

TEST_CASE("appending a token never raises the prefix log-prob") {
  const NgramModel m = Train(kThree, 4, 0.75);
  const Words pool{"a", "b", "c", kUnknownWord};
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    Words w;
    double prev = 0;
    for (int i = 0; i < 8; ++i) {
      w.push_back(pool[rng() % pool.size()]);
      const double lp = m.LogProb(w, false);
      CHECK(lp <= prev);
      CHECK(std::isfinite(lp));
      prev = lp;
    }
  }
}

TEST_CASE("ngram training errors") {
  CHECK_THROWS_AS(Train({}, 4, 0.75), DomainError);
  CHECK_THROWS_AS(Train(kThree, 0, 0.75), DomainError);
  CHECK_THROWS_AS(Train(kThree, 4, 1.5), DomainError);
  CHECK_THROWS_AS(Train(kThree, 4, -0.1), DomainError);
}

TEST_CASE("ARPA file round trip") {
  const Sentences corpus{{"<chn>", "我", "们", "<eng>", "go"}, {"<eng>", "go", "go"},
                         {"<chn>", "我"}};
  const NgramModel m = Train(corpus, 4, 0.75);
  std::stringstream ss;
  m.WriteArpa(ss);
  CHECK(ss.str().find("\\data\\") != std::string::npos);
  const NgramModel back = NgramModel::ReadArpa(ss);
  CHECK(back.order() == 4);
  CHECK(back.discount() == 0.75);
  std::mt19937_64 rng(6);
  const Words pool{"<chn>", "<eng>", "我", "们", "go", "xx"};
  for (int trial = 0; trial < 100; ++trial) {
    Words w(rng() % 7);
    for (auto &t : w) t = pool[rng() % pool.size()];
    CHECK(back.LogProb(w, true) == doctest::Approx(m.LogProb(w, true)).epsilon(1e-12));
  }
}

TEST_CASE("zero-weight recurrent LM is uniform") {
  const RnnLm lm({"a", "b", "c"}, 4, 5);
  // Symbols: boundary, <unk>, a, b, c.
  REQUIRE(lm.vocab_size() == 5);
  const Words s{"a", "c", "b"};
  // Three tokens plus the end prediction.
  CHECK(lm.LogProb(s) == doctest::Approx(-4 * std::log(5.0)).epsilon(1e-14));
  CHECK(lm.LogProb({}) == doctest::Approx(-std::log(5.0)).epsilon(1e-14));
  CHECK(lm.IdOf("nope") == lm.IdOf(kUnknownWord));
}

TEST_CASE("recurrent LM gradient matches finite differences") {
  RnnLm lm({"a", "b", "c"}, 3, 4);
  std::mt19937_64 rng(5);
  for (auto *t : lm.params().Tensors()) testing::FillUniform(t, rng, 0.5);
  const Words s{"a", "b", "b", "nope"};
  RnnLm::Params grad = lm.params();
  for (auto *t : grad.Tensors()) t->setZero();
  const double loss = lm.LossAndGradient(s, &grad);
  CHECK(loss == doctest::Approx(-lm.LogProb(s)).epsilon(1e-12));
  auto tensors = lm.params().Tensors();
  auto grads = grad.Tensors();
  for (size_t k = 0; k < tensors.size(); ++k) {
    for (Eigen::Index i = 0; i < tensors[k]->size(); ++i) {
      double &x = tensors[k]->data()[i];
      const double keep = x, eps = 1e-5;
      x = keep + eps;
      const double up = -lm.LogProb(s);
      x = keep - eps;
      const double down = -lm.LogProb(s);
      x = keep;
      const double fd = (up - down) / (2 * eps);
      const double an = grads[k]->data()[i];
      CHECK(std::abs(fd - an) <= 1e-6 * std::max({1.0, std::abs(fd), std::abs(an)}));
    }
  }
}

TEST_CASE("recurrent LM overfits one sentence") {
  const Sentences one(1, Words{"<chn>", "我", "们", "<eng>", "go", "home"});
  RnnLmConfig c;
  c.epochs = 200;
  c.learning_rate = 0.02;
  const RnnLm lm = TrainRnnLm(one, c);
  const double per_token = -lm.LogProb(one[0]) / double(one[0].size() + 1);
  CHECK(std::exp(per_token) < 1.5);
}

TEST_CASE("recurrent LM training and scoring are deterministic") {
  const Sentences corpus{{"a", "b", "c"}, {"b", "b"}, {"c", "a"}};
  RnnLmConfig c;
  c.epochs = 3;
  const RnnLm a = TrainRnnLm(corpus, c), b = TrainRnnLm(corpus, c);
  for (const auto &s : corpus) {
    CHECK(a.LogProb(s) == b.LogProb(s));
    CHECK(a.LogProb(s) == a.LogProb(s));
  }
}

TEST_CASE("recurrent LM save and load") {
  testing::TempDir dir("rnnlm");
  RnnLmConfig c;
  c.epochs = 2;
  const RnnLm lm = TrainRnnLm({{"a", "b"}, {"b", "c", "a"}}, c);
  lm.Save(dir.File("lm.bin"));
  const RnnLm back = RnnLm::Load(dir.File("lm.bin"));
  CHECK(back.symbols() == lm.symbols());
  // Parameters are stored as 32-bit floats.
  CHECK(back.LogProb({"a", "c"}) == doctest::Approx(lm.LogProb({"a", "c"})).epsilon(1e-5));
}

// Fixed-score language model for rescoring fixtures.
class TableLm : public LanguageModel {
 public:
  explicit TableLm(std::map<std::string, double> table) : table_(std::move(table)) {}
  double LogProb(const std::vector<std::string> &tokens) const override {
    return table_.at(JoinTokens(tokens));
  }

 private:
  std::map<std::string, double> table_;
};

std::vector<NbestEntry> Fixture() {
  return {{"u", 1, -1.0, {"a", "b"}, 0}, {"u", 2, -1.5, {"a", "c"}, 0},
          {"u", 3, -1.5, {"a", "d", "e"}, 0}};
}

std::vector<int> Ranks(const std::vector<NbestEntry> &v) {
  std::vector<int> r;
  for (const auto &e : v) r.push_back(e.rank);
  return r;
}

TEST_CASE("rescoring with weight 0 keeps the order") {
  const TableLm lm({{"a b", -9}, {"a c", -1}, {"a d e", -1}});
  const auto out = RescoreNbest(Fixture(), lm, {0.0, 0.0, 35});
  CHECK(Ranks(out) == std::vector<int>{1, 2, 3});
  CHECK(out[0].score == -1.0);
}

TEST_CASE("rescoring promotes the LM-preferred hypothesis") {
  const TableLm lm({{"a b", -6}, {"a c", -2}, {"a d e", -5}});
  const auto out = RescoreNbest(Fixture(), lm, {0.5, 0.0, 35});
  // -1 + 0.5*-6 = -4, -1.5 + 0.5*-2 = -2.5, -1.5 + 0.5*-5 = -4.
  CHECK(Ranks(out) == std::vector<int>{2, 1, 3});
  CHECK(out[0].score == -2.5);
  CHECK(out[1].score == -4.0);
  CHECK(out[2].score == -4.0);
}

TEST_CASE("length penalty and N truncation") {
  const TableLm lm({{"a b", -2}, {"a c", -2}, {"a d e", -2}});
  // Bonus of 1 per token lifts the three-token hypothesis: -1.5-1+3 = 0.5.
  const auto out = RescoreNbest(Fixture(), lm, {0.5, 1.0, 35});
  CHECK(Ranks(out) == std::vector<int>{3, 1, 2});
  CHECK(out[0].score == 0.5);
  const auto two = RescoreNbest(Fixture(), lm, {0.5, 1.0, 2});
  CHECK(Ranks(two) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(RescoreNbest(Fixture(), lm, {0.5, 1.0, 0}), DomainError);
}

TEST_CASE("N-best file round trip") {
  auto entries = Fixture();
  entries[0].log_prob = -1.0 / 3.0;
  entries.push_back({"v", 1, -0.25, {}, 0});
  std::stringstream ss;
  WriteNbest(entries, ss);
  const auto back = ReadNbest(ss);
  REQUIRE(back.size() == entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    CHECK(back[i].utt_id == entries[i].utt_id);
    CHECK(back[i].rank == entries[i].rank);
    CHECK(back[i].log_prob == entries[i].log_prob);
    CHECK(back[i].tokens == entries[i].tokens);
  }
}

}  // namespace
}  // namespace csrnnt
