// tests/unit/transducer-test.cc

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

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <random>

#include "csrnnt/nn/ops.h"
#include "csrnnt/oracle/reference.h"
#include "csrnnt/transducer/checkpoint.h"
#include "csrnnt/transducer/joint.h"
#include "csrnnt/transducer/model.h"
#include "csrnnt/transducer/rnnt-loss.h"
#include "test-helpers.h"

namespace csrnnt {
namespace {

using testing::FillUniform;
using testing::RandomMatrix;

// Per-node full distributions [t][u][v] from random logits.
std::vector<double> RandomDistributions(int frames, int labels, int vocab,
                                        std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.5);
  std::vector<double> full;
  for (int node = 0; node < frames * (labels + 1); ++node) {
    std::vector<double> z(vocab);
    for (auto &v : z) v = n(rng);
    for (double v : LogSoftmax<double>(z)) full.push_back(v);
  }
  return full;
}

NodeLogProbs RandomNodes(int frames, int labels, int vocab, std::mt19937_64 &rng,
                         std::vector<int> *target_out = nullptr) {
  std::uniform_int_distribution<int> pick(1, vocab - 1);
  std::vector<int> target(labels);
  for (auto &y : target) y = pick(rng);
  const auto full = RandomDistributions(frames, labels, vocab, rng);
  if (target_out) *target_out = target;
  return GatherNodeLogProbs(full, frames, target, vocab, 0);
}

double Binomial(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST_CASE("single frame, empty target: loss is minus the blank log-prob") {
  NodeLogProbs nodes(1, 0);
  nodes.Blank(0, 0) = std::log(0.3);
  const auto r = RnntLoss(nodes);
  CHECK(r.loss == doctest::Approx(-std::log(0.3)).epsilon(1e-15));
  CHECK(EnumerateAlignmentsOracle(nodes) == doctest::Approx(r.loss).epsilon(1e-15));
}

TEST_CASE("two frames, one label: the two valid alignments") {
  std::mt19937_64 rng(5);
  std::vector<int> target;
  const NodeLogProbs nodes = RandomNodes(2, 1, 4, rng, &target);
  const auto alignments = EnumerateAlignments(2, target, 0);
  // The last symbol must be the blank that leaves frame T-1, so (phi, phi, y)
  // is not an alignment.
  REQUIRE(alignments.size() == 2);
  CHECK(alignments[0] == std::vector<int>{target[0], 0, 0});
  CHECK(alignments[1] == std::vector<int>{0, target[0], 0});
  const double p1 = nodes.Label(0, 0) + nodes.Blank(0, 1) + nodes.Blank(1, 1);
  const double p2 = nodes.Blank(0, 0) + nodes.Label(1, 0) + nodes.Blank(1, 1);
  const double expected = -LogAdd(p1, p2);
  CHECK(std::abs(RnntLoss(nodes).loss - expected) <= 1e-12);
  CHECK(std::abs(EnumerateAlignmentsOracle(nodes) - expected) <= 1e-12);
}

TEST_CASE("alignment counts follow C(T+U-1, U)") {
  for (int T = 1; T <= 5; ++T) {
    for (int U = 0; U <= 3; ++U) {
      std::vector<int> target(U, 1);
      const auto all = EnumerateAlignments(T, target, 0);
      CHECK(double(all.size()) == Binomial(T + U - 1, U));
      for (const auto &a : all) {
        CHECK(a.size() == size_t(T + U));
        CHECK(a.back() == 0);
        CHECK(CollapseAlignment(a, 0) == target);
      }
    }
  }
}

TEST_CASE("lattice loss agrees with enumeration on 100 random instances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int T = 1 + trial % 4, U = trial % 4, V = 2 + trial % 4;
    const auto nodes = RandomNodes(T, U, V, rng);
    const auto r = RnntLoss(nodes);
    CHECK(std::abs(r.loss - EnumerateAlignmentsOracle(nodes)) <= 1e-10);
    CHECK(std::abs(r.loss - r.loss_beta) <= 1e-10);
  }
}

TEST_CASE("node gradients match central finite differences") {
  std::mt19937_64 rng(22);
  for (int T = 1; T <= 4; ++T) {
    for (int U = 0; U <= 3; ++U) {
      NodeLogProbs nodes = RandomNodes(T, U, 5, rng);
      const auto r = RnntLoss(nodes);
      auto f = [&] { return RnntLoss(nodes).loss; };
      const auto nb = oracle::CentralDifferences(nodes.blank.data(), nodes.blank.size(), f, 1e-5);
      const auto nl = oracle::CentralDifferences(nodes.label.data(), nodes.label.size(), f, 1e-5);
      for (size_t i = 0; i < nb.size(); ++i) {
        CHECK(oracle::RelativeError(r.grad.blank[i], nb[i], 1e-7) <= 1e-6);
        CHECK(oracle::RelativeError(r.grad.label[i], nl[i], 1e-7) <= 1e-6);
      }
    }
  }
}

TEST_CASE("blank occupancy sums to one per frame and matches enumeration") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int T = 1 + trial % 4, U = trial % 4;
    std::vector<int> target;
    const auto nodes = RandomNodes(T, U, 5, rng, &target);
    const auto r = RnntLoss(nodes);
    // Posterior of each blank arc from the enumerated alignments.
    std::vector<double> occupancy(nodes.blank.size(), 0.0);
    for (const auto &a : EnumerateAlignments(T, target, 0)) {
      int t = 0, u = 0;
      double lp = 0;
      std::vector<int> used;
      for (int s : a) {
        if (s == 0) {
          lp += nodes.Blank(t, u);
          used.push_back(nodes.Index(t, u));
          ++t;
        } else {
          lp += nodes.Label(t, u);
          ++u;
        }
      }
      for (int idx : used) occupancy[idx] += std::exp(lp + r.loss);
    }
    for (int t = 0; t < T; ++t) {
      double sum = 0;
      for (int u = 0; u <= U; ++u) {
        sum += -r.grad.Blank(t, u);
        CHECK(std::abs(-r.grad.Blank(t, u) - occupancy[nodes.Index(t, u)]) <= 1e-12);
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("loss is invariant to permuting vocabulary indices") {
  std::mt19937_64 rng(24);
  const int T = 3, U = 2, V = 5;
  const std::vector<int> target{2, 4};
  const auto full = RandomDistributions(T, U, V, rng);
  const std::vector<int> perm{0, 3, 1, 4, 2};  // blank stays at 0
  std::vector<double> permuted(full.size());
  for (int node = 0; node < T * (U + 1); ++node) {
    for (int v = 0; v < V; ++v) permuted[node * V + perm[v]] = full[node * V + v];
  }
  const std::vector<int> ptarget{perm[2], perm[4]};
  const double a = RnntLoss(GatherNodeLogProbs(full, T, target, V, 0)).loss;
  const double b = RnntLoss(GatherNodeLogProbs(permuted, T, ptarget, V, 0)).loss;
  CHECK(a == b);
}

TEST_CASE("lattice loss input validation") {
  std::mt19937_64 rng(25);
  const auto full = RandomDistributions(2, 1, 3, rng);
  CHECK_THROWS_AS(GatherNodeLogProbs(full, 2, std::vector<int>{0}, 3, 0), DomainError);
  CHECK_THROWS_AS(GatherNodeLogProbs(full, 2, std::vector<int>{3}, 3, 0), IndexError);
  NodeLogProbs bad(2, 0);
  bad.Blank(1, 0) = NAN;
  CHECK_THROWS_AS(RnntLoss(bad), DomainError);
  CHECK_THROWS_AS(RnntLoss(bad), NonFiniteInputError);
  CHECK_THROWS_AS(RnntLoss(NodeLogProbs(0, 0)), DomainError);
  CHECK_THROWS_AS(EnumerateAlignmentsOracle(NodeLogProbs(7, 0)), SizeError);
  CHECK_THROWS_AS(EnumerateAlignmentsOracle(NodeLogProbs(2, 5)), SizeError);
}

TEST_CASE("collapse removes blanks and keeps repeats") {
  const int y1 = 3, y2 = 5, y3 = 3;
  CHECK(CollapseAlignment(std::vector<int>{y1, 0, y2, 0, 0, y3}, 0) ==
        std::vector<int>{y1, y2, y3});
  CHECK(CollapseAlignment(std::vector<int>{0, 0, 0}, 0).empty());
  CHECK(CollapseAlignment(std::vector<int>{4, 4, 2}, 0) == std::vector<int>{4, 4, 2});
}

// blank, <chn>, <eng>, two Mandarin chars, two English pieces.
const std::vector<LanguageAttr> kLangs{
    LanguageAttr::kNeutral, LanguageAttr::kMandarin, LanguageAttr::kEnglish,
    LanguageAttr::kMandarin, LanguageAttr::kMandarin, LanguageAttr::kEnglish,
    LanguageAttr::kEnglish};

TransducerParams<double> *const kNoGrad = nullptr;

TransducerConfig TinyConfig() {
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

TEST_CASE("embeddings carry the fixed language vector") {
  const TransducerModel<double> m(TinyConfig(), kLangs, 1);
  const int e = m.config().embedding_dim, l = m.config().lid_dim;
  const auto eng = m.Embed(5);
  CHECK(eng.size() == e + l);
  CHECK(eng.head(e) == m.params().embedding.row(5));
  CHECK(eng.tail(l) == RowVec<double>::Ones(l));
  CHECK(m.Embed(2).tail(l) == RowVec<double>::Ones(l));
  CHECK(m.Embed(1).tail(l) == -RowVec<double>::Ones(l));
  CHECK(m.Embed(0).tail(l) == RowVec<double>::Zero(l));
  CHECK(m.Embed(m.start_id()).tail(l) == RowVec<double>::Zero(l));
  // Equal language attribute, equal trailing components.
  for (int a = 0; a < m.vocab_size(); ++a) {
    for (int b = 0; b < m.vocab_size(); ++b) {
      if (kLangs[a] == kLangs[b]) CHECK(m.Embed(a).tail(l) == m.Embed(b).tail(l));
    }
  }
  CHECK_THROWS_AS(m.Embed(-1), IndexError);
  CHECK_THROWS_AS(m.Embed(m.vocab_size() + 1), IndexError);
}

TEST_CASE("joint logits: zero weights give the output bias") {
  TransducerModel<double> m(TinyConfig(), kLangs, 2);
  auto &p = m.params();
  p.joint_enc.setZero();
  p.joint_pred.setZero();
  p.joint_bias.setZero();
  p.output.setZero();
  std::mt19937_64 rng(2);
  FillUniform(&p.output_bias, rng, 1.0);
  const auto z = m.JointLogits(RowVec<double>::Ones(4), RowVec<double>::Ones(3));
  CHECK(z == p.output_bias.row(0));
}

TEST_CASE("joint logits match the scalar oracle") {
  const TransducerModel<double> m(TinyConfig(), kLangs, 3);
  std::mt19937_64 rng(3);
  const RowVec<double> h = RandomMatrix<double>(1, 4, rng);
  const RowVec<double> pu = RandomMatrix<double>(1, 3, rng);
  const auto z = m.JointLogits(h, pu);
  const auto ref = oracle::ScalarJointLogits(m, oracle::Vec(h.data(), h.data() + 4),
                                             oracle::Vec(pu.data(), pu.data() + 3));
  for (int v = 0; v < m.vocab_size(); ++v) CHECK(std::abs(z(v) - ref[v]) < 1e-13);
  CHECK_THROWS_AS(m.JointLogits(RowVec<double>::Ones(3), pu), ShapeError);
}

TEST_CASE("seame-paper preset dimensions") {
  const auto c = TransducerConfig::SeamePaper();
  CHECK(c.encoder_layers == 4);
  CHECK(c.encoder_dim == 512);
  CHECK(c.prediction_layers == 2);
  CHECK(c.joint_dim == 512);
  CHECK(c.dropout == 0.2);
  CHECK(TransducerConfig::Desk().lid_dim == 8);
}

TEST_CASE("joint grid: parallel and serial agree bit for bit") {
  std::mt19937_64 rng(4);
  const auto enc = RandomMatrix<float>(9, 6, rng);
  const auto pred = RandomMatrix<float>(4, 6, rng);
  const auto out = RandomMatrix<float>(6, 11, rng);
  const auto bias = RandomMatrix<float>(1, 11, rng);
  JointGrid<float> a, b;
  ComputeJointGrid(enc, pred, out, bias, &a);
  ComputeJointGridSerial(enc, pred, out, bias, &b);
  CHECK(a.hidden == b.hidden);
  CHECK(a.log_probs == b.log_probs);
}

TEST_CASE("zero-length target: loss is the forced blank path") {
  const TransducerModel<double> m(TinyConfig(), kLangs, 5);
  std::mt19937_64 rng(5);
  const auto x = RandomMatrix<double>(4, 3, rng);
  const double loss =
      ComputeLossAndGradient(m, x, std::span<const int>(), false, rng, kNoGrad);
  const Tensor2<double> enc = m.Encode(x);
  auto state = m.InitialPredictionState();
  const RowVec<double> p0 = m.PredictionStep(m.start_id(), &state);
  double expected = 0;
  for (int t = 0; t < 4; ++t) {
    const RowVec<double> z = m.JointLogits(RowVec<double>(enc.row(t)), p0);
    const auto lp = LogSoftmax<double>(std::span<const double>(z.data(), z.size()));
    expected -= lp[0];
  }
  CHECK(std::abs(loss - expected) < 1e-12);
}

TEST_CASE("model parameter gradients match finite differences") {
  TransducerModel<double> m(TinyConfig(), kLangs, 6);
  std::mt19937_64 rng(6);
  const auto x = RandomMatrix<double>(4, 3, rng);
  const std::vector<int> target{1, 3, 4, 2, 5};
  std::mt19937_64 unused(0);
  std::function<double()> f = [&] {
    return ComputeLossAndGradient(m, x, std::span<const int>(target), false, unused,
                                  kNoGrad);
  };
  auto grad = ZeroParams<double>(m.config(), m.vocab_size());
  ComputeLossAndGradient(m, x, std::span<const int>(target), false, unused, &grad);
  auto params = m.params().Tensors();
  const auto grads = grad.Tensors();
  const auto names = m.params().TensorNames();
  double worst = 0;
  for (size_t k = 0; k < params.size(); ++k) {
    const auto numeric = oracle::CentralDifferences(params[k]->data(), params[k]->size(), f, 1e-4);
    for (Eigen::Index i = 0; i < params[k]->size(); ++i) {
      const double err = oracle::RelativeError(grads[k]->data()[i], numeric[i], 1e-6);
      worst = std::max(worst, err);
      if (err > 1e-4) FAIL_CHECK(names[k] << "[" << i << "] analytic " << grads[k]->data()[i]
                                         << " numeric " << numeric[i]);
    }
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("model forward is deterministic and ModelForward matches accumulation") {
  const TransducerModel<double> m(TinyConfig(), kLangs, 7);
  std::mt19937_64 rng(7);
  const auto x = RandomMatrix<double>(5, 3, rng);
  const std::vector<int> target{2, 6, 1, 3};
  std::mt19937_64 r1(1), r2(1);
  const auto a = ModelForward(m, x, std::span<const int>(target), true, r1);
  const auto b = ModelForward(m, x, std::span<const int>(target), true, r2);
  CHECK(a.loss == b.loss);
  for (size_t k = 0; k < a.grad.Tensors().size(); ++k) {
    CHECK(*a.grad.Tensors()[k] == *b.grad.Tensors()[k]);
  }
  CHECK_THROWS_AS(ModelForward(m, RandomMatrix<double>(5, 4, rng),
                               std::span<const int>(target), false, r1),
                  ShapeError);
  const std::vector<int> with_blank{2, 0};
  CHECK_THROWS_AS(ModelForward(m, x, std::span<const int>(with_blank), false, r1),
                  DomainError);
}

TEST_CASE("fifty ADAM steps overfit one utterance") {
  TransducerConfig c = TinyConfig();
  c.encoder_dim = 16;
  c.prediction_dim = 16;
  c.joint_dim = 16;
  c.embedding_dim = 8;
  TransducerModel<double> m(c, kLangs, 8);
  std::mt19937_64 rng(8);
  const auto x = RandomMatrix<double>(6, 3, rng);
  const std::vector<int> target{1, 3, 2, 6};
  AdamState<double> adam;
  adam.config.learning_rate = 0.05;
  auto params = m.params().Tensors();
  double first = 0, last = 0;
  for (int step = 0; step < 50; ++step) {
    auto g = ModelForward(m, x, std::span<const int>(target), false, rng);
    if (step == 0) first = g.loss;
    last = g.loss;
    auto gt = g.grad.Tensors();
    std::vector<const Tensor2<double> *> grads(gt.begin(), gt.end());
    AdamStep(&adam, std::span<Tensor2<double> *const>(params),
             std::span<const Tensor2<double> *const>(grads));
  }
  last = ComputeLossAndGradient(m, x, std::span<const int>(target), false, rng, kNoGrad);
  CHECK(last < first);
  CHECK(last < 0.1);
}

TEST_CASE("checkpoint round-trips parameters, config and optimizer state") {
  testing::TempDir dir("ckpt");
  TransducerModel<float> m(TinyConfig(), kLangs, 9);
  AdamState<float> adam;
  auto params = m.params().Tensors();
  adam.Init(std::span<Tensor2<float> *const>(params));
  adam.step = 17;
  std::mt19937_64 rng(9);
  for (auto &t : adam.first_moment) FillUniform(&t, rng, 1.0);
  SaveTransducerCheckpoint(dir.File("m.ckpt"), m, 12345678901234567ull, {{"epoch", 3}}, &adam);
  const auto ck = LoadTransducerCheckpoint(dir.File("m.ckpt"));
  CHECK(ck.vocab_hash == 12345678901234567ull);
  CHECK(ck.extra.at("epoch") == 3);
  CHECK(ck.model.config() == m.config());
  CHECK(ck.model.languages() == m.languages());
  for (size_t k = 0; k < params.size(); ++k) CHECK(*ck.model.params().Tensors()[k] == *params[k]);
  REQUIRE(ck.optimizer.has_value());
  CHECK(ck.optimizer->step == 17);
  for (size_t k = 0; k < params.size(); ++k) {
    CHECK(ck.optimizer->first_moment[k] == adam.first_moment[k]);
  }
}

}  // namespace
}  // namespace csrnnt
