// tests/unit/nn-test.cc

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

#include "csrnnt/nn/adam.h"
#include "csrnnt/nn/lstm.h"
#include "csrnnt/nn/ops.h"
#include "csrnnt/nn/tensor-io.h"
#include "csrnnt/oracle/reference.h"
#include "test-helpers.h"

namespace csrnnt {
namespace {

using testing::FillUniform;
using testing::RandomMatrix;

LstmParams<double> RandomLstm(int in, int hid, std::mt19937_64 &rng) {
  LstmParams<double> p = LstmParams<double>::Zeros(in, hid);
  FillUniform(&p.weight, rng, 0.8);
  FillUniform(&p.bias, rng, 0.5);
  return p;
}

TEST_CASE("log_softmax of equal logits is uniform") {
  const std::vector<double> a{0.0, 0.0};
  const auto out = LogSoftmax<double>(a);
  CHECK(out[0] == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("log_softmax is stable under large shifts") {
  const std::vector<double> a{1000.0, 1000.0};
  const auto out = LogSoftmax<double>(a);
  CHECK(std::isfinite(out[0]));
  CHECK(out[0] == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("log_softmax matches the direct formula") {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const auto out = LogSoftmax<double>(a);
  const double denom = std::exp(1.0) + std::exp(2.0) + std::exp(3.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(out[i] == doctest::Approx(std::log(std::exp(a[i]) / denom)).epsilon(1e-14));
  }
}

TEST_CASE("log_softmax rejects empty input") {
  CHECK_THROWS_AS(LogSoftmax<double>(std::vector<double>{}), DomainError);
}

TEST_CASE("log_softmax exp-sums to one") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(1 + trial % 17);
    for (auto &v : a) v = n(rng);
    const auto out = LogSoftmax<double>(a);
    double s = 0;
    for (double v : out) s += std::exp(v);
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("row-wise log_softmax agrees with the vector version") {
  std::mt19937_64 rng(2);
  Tensor2<double> m = RandomMatrix<double>(4, 6, rng, 5.0);
  Tensor2<double> rows = m;
  LogSoftmaxRowsInPlace(&rows);
  for (int r = 0; r < 4; ++r) {
    const auto v = LogSoftmax<double>(std::span<const double>(m.row(r).data(), 6));
    for (int c = 0; c < 6; ++c) CHECK(rows(r, c) == doctest::Approx(v[c]).epsilon(1e-14));
  }
}

TEST_CASE("lstm with zero parameters outputs zeros") {
  const auto p = LstmParams<double>::Zeros(3, 4);
  std::mt19937_64 rng(3);
  const auto x = RandomMatrix<double>(6, 3, rng);
  const auto r = LstmForward(p, x, LstmState<double>::Zeros(4));
  CHECK(r.outputs.rows() == 6);
  CHECK(r.outputs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.final_state.c.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lstm over an empty sequence returns the initial state") {
  std::mt19937_64 rng(4);
  const auto p = RandomLstm(3, 4, rng);
  LstmState<double> init{RandomMatrix<double>(1, 4, rng), RandomMatrix<double>(1, 4, rng)};
  const auto r = LstmForward(p, Tensor2<double>(0, 3), init);
  CHECK(r.outputs.rows() == 0);
  CHECK(r.final_state.h == init.h);
  CHECK(r.final_state.c == init.c);
}

TEST_CASE("lstm forward matches the scalar-loop recurrence") {
  std::mt19937_64 rng(7);
  const auto p = RandomLstm(3, 4, rng);
  const auto x = RandomMatrix<double>(5, 3, rng);
  LstmState<double> init{RandomMatrix<double>(1, 4, rng), RandomMatrix<double>(1, 4, rng)};
  const auto r = LstmForward(p, x, init);

  std::vector<oracle::Vec> xs;
  for (int t = 0; t < 5; ++t) xs.emplace_back(x.row(t).data(), x.row(t).data() + 3);
  const auto ref = oracle::ScalarLstm(p, xs, oracle::Vec(init.h.data(), init.h.data() + 4),
                                      oracle::Vec(init.c.data(), init.c.data() + 4));
  for (int t = 0; t < 5; ++t) {
    for (int j = 0; j < 4; ++j) CHECK(std::abs(r.outputs(t, j) - ref.outputs[t][j]) < 1e-14);
  }
  for (int j = 0; j < 4; ++j) CHECK(std::abs(r.final_state.c(j) - ref.c[j]) < 1e-14);
}

TEST_CASE("lstm step agrees with the sequence forward") {
  std::mt19937_64 rng(8);
  const auto p = RandomLstm(2, 3, rng);
  const auto x = RandomMatrix<double>(4, 2, rng);
  const auto r = LstmForward(p, x, LstmState<double>::Zeros(3));
  auto s = LstmState<double>::Zeros(3);
  for (int t = 0; t < 4; ++t) {
    s = LstmStep(p, RowVec<double>(x.row(t)), s);
    CHECK((s.h - r.outputs.row(t)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("lstm forward names the offending tensor on shape errors") {
  const auto p = LstmParams<double>::Zeros(3, 4);
  try {
    LstmForward(p, Tensor2<double>(Tensor2<double>::Zero(2, 5)), LstmState<double>::Zeros(4));
    FAIL("expected ShapeError");
  } catch (const ShapeError &e) {
    CHECK(std::string(e.what()).find("lstm inputs") != std::string::npos);
  }
  CHECK_THROWS_AS(LstmForward(p, Tensor2<double>(Tensor2<double>::Zero(2, 3)), LstmState<double>::Zeros(5)),
                  ShapeError);
}

TEST_CASE("lstm forward is bit-identical across calls") {
  std::mt19937_64 rng(9);
  const auto p = RandomLstm(3, 5, rng);
  const auto x = RandomMatrix<double>(7, 3, rng);
  const auto a = LstmForward(p, x, LstmState<double>::Zeros(5));
  const auto b = LstmForward(p, x, LstmState<double>::Zeros(5));
  CHECK(a.outputs == b.outputs);
}

TEST_CASE("lstm backward of zero upstream gradient is zero") {
  std::mt19937_64 rng(10);
  const auto p = RandomLstm(2, 3, rng);
  const auto x = RandomMatrix<double>(3, 2, rng);
  const auto fwd = LstmForward(p, x, LstmState<double>::Zeros(3));
  const auto g = LstmBackward(p, fwd.cache, Tensor2<double>(Tensor2<double>::Zero(3, 3)),
                              LstmState<double>::Zeros(3));
  CHECK(g.params.weight.cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.params.bias.cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.inputs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.init_state.h.cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.init_state.c.cwiseAbs().maxCoeff() == 0.0);
}

// Scalar loss L = sum(outputs .* R) + final_h . Rh + final_c . Rc.
struct LstmProbe {
  LstmParams<double> p;
  Tensor2<double> x;
  LstmState<double> init;
  Tensor2<double> r;
  RowVec<double> rh, rc;

  double Loss() const {
    const auto f = LstmForward(p, x, init);
    return (f.outputs.array() * r.array()).sum() + f.final_state.h.dot(rh) +
           f.final_state.c.dot(rc);
  }
};

TEST_CASE("lstm backward matches central finite differences (64-bit)") {
  std::mt19937_64 rng(11);
  LstmProbe probe{RandomLstm(2, 3, rng), RandomMatrix<double>(3, 2, rng),
                  {RandomMatrix<double>(1, 3, rng), RandomMatrix<double>(1, 3, rng)},
                  RandomMatrix<double>(3, 3, rng), RandomMatrix<double>(1, 3, rng),
                  RandomMatrix<double>(1, 3, rng)};
  const auto fwd = LstmForward(probe.p, probe.x, probe.init);
  const auto g = LstmBackward(probe.p, fwd.cache, probe.r, {probe.rh, probe.rc});
  auto f = [&] { return probe.Loss(); };
  auto check = [&](double *data, size_t n, const double *analytic) {
    const auto numeric = oracle::CentralDifferences(data, n, f, 1e-5);
    for (size_t i = 0; i < n; ++i) {
      CHECK(oracle::RelativeError(analytic[i], numeric[i], 1e-7) <= 1e-6);
    }
  };
  check(probe.p.weight.data(), probe.p.weight.size(), g.params.weight.data());
  check(probe.p.bias.data(), probe.p.bias.size(), g.params.bias.data());
  check(probe.x.data(), probe.x.size(), g.inputs.data());
  check(probe.init.h.data(), 3, g.init_state.h.data());
  check(probe.init.c.data(), 3, g.init_state.c.data());
}

TEST_CASE("lstm backward in 32-bit stays within 1e-4 of finite differences") {
  std::mt19937_64 rng(12);
  LstmProbe probe{RandomLstm(2, 3, rng), RandomMatrix<double>(4, 2, rng),
                  LstmState<double>::Zeros(3), RandomMatrix<double>(4, 3, rng),
                  RowVec<double>::Zero(3), RowVec<double>::Zero(3)};
  const auto pf = probe.p.Cast<float>();
  const Tensor2<float> xf = probe.x.cast<float>();
  const auto fwd = LstmForward(pf, xf, LstmState<float>::Zeros(3));
  const auto g = LstmBackward(pf, fwd.cache, Tensor2<float>(probe.r.cast<float>()),
                              LstmState<float>::Zeros(3));
  const auto numeric = oracle::CentralDifferences(
      probe.p.weight.data(), probe.p.weight.size(), [&] { return probe.Loss(); }, 1e-5);
  for (Eigen::Index i = 0; i < probe.p.weight.size(); ++i) {
    CHECK(oracle::RelativeError(g.params.weight.data()[i], numeric[i], 1e-4) <= 1e-4);
  }
}

TEST_CASE("input dimension behind zero weights gets zero gradient") {
  std::mt19937_64 rng(13);
  auto p = RandomLstm(3, 4, rng);
  p.weight.row(1).setZero();
  const auto x = RandomMatrix<double>(5, 3, rng);
  const auto fwd = LstmForward(p, x, LstmState<double>::Zeros(4));
  const auto g = LstmBackward(p, fwd.cache, RandomMatrix<double>(5, 4, rng),
                              LstmState<double>::Zeros(4));
  CHECK(g.inputs.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.inputs.col(0).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("lstm backward rejects a mismatched upstream gradient") {
  std::mt19937_64 rng(14);
  const auto p = RandomLstm(2, 3, rng);
  const auto fwd = LstmForward(p, RandomMatrix<double>(3, 2, rng), LstmState<double>::Zeros(3));
  CHECK_THROWS_AS(LstmBackward(p, fwd.cache, Tensor2<double>(Tensor2<double>::Zero(4, 3)),
                               LstmState<double>::Zeros(3)),
                  ShapeError);
}

TEST_CASE("random lstm init: forget bias one, weights within 1/sqrt(fan_in)") {
  std::mt19937_64 rng(15);
  const auto p = LstmParams<float>::Random(6, 10, rng);
  const double bound = 1.0 / std::sqrt(16.0);
  CHECK(p.weight.cwiseAbs().maxCoeff() <= bound);
  for (int j = 0; j < 40; ++j) CHECK(p.bias(0, j) == (j >= 10 && j < 20 ? 1.0f : 0.0f));
}

TEST_CASE("adam default learning rate is 0.001") {
  CHECK(AdamConfig{}.learning_rate == 0.001);
}

TEST_CASE("adam with zero gradient from fresh state leaves params unchanged") {
  std::mt19937_64 rng(16);
  Tensor2<double> w = RandomMatrix<double>(3, 4, rng);
  const Tensor2<double> before = w;
  Tensor2<double> g = Tensor2<double>::Zero(3, 4);
  AdamState<double> state;
  std::vector<Tensor2<double> *> params{&w};
  std::vector<const Tensor2<double> *> grads{&g};
  for (int i = 0; i < 3; ++i) {
    AdamStep(&state, std::span<Tensor2<double> *const>(params),
             std::span<const Tensor2<double> *const>(grads));
  }
  CHECK(w == before);
  CHECK(state.step == 3);
}

TEST_CASE("adam first step matches the closed form") {
  std::mt19937_64 rng(17);
  Tensor2<double> w = RandomMatrix<double>(2, 3, rng);
  const Tensor2<double> before = w;
  Tensor2<double> g = RandomMatrix<double>(2, 3, rng);
  AdamState<double> state;
  std::vector<Tensor2<double> *> params{&w};
  std::vector<const Tensor2<double> *> grads{&g};
  AdamStep(&state, std::span<Tensor2<double> *const>(params),
           std::span<const Tensor2<double> *const>(grads));
  const AdamConfig c;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double gi = g.data()[i];
    const double m = (1 - c.beta1) * gi / (1 - c.beta1);
    const double v = (1 - c.beta2) * gi * gi / (1 - c.beta2);
    const double expected = -c.learning_rate * m / (std::sqrt(v) + c.epsilon);
    CHECK(std::abs((w.data()[i] - before.data()[i]) - expected) < 1e-15);
  }
  CHECK(state.step == 1);
}

TEST_CASE("adam rejects shape mismatches") {
  Tensor2<double> w = Tensor2<double>::Zero(2, 2);
  Tensor2<double> g = Tensor2<double>::Zero(2, 3);
  AdamState<double> state;
  std::vector<Tensor2<double> *> params{&w};
  std::vector<const Tensor2<double> *> grads{&g};
  CHECK_THROWS_AS(AdamStep(&state, std::span<Tensor2<double> *const>(params),
                           std::span<const Tensor2<double> *const>(grads)),
                  ShapeError);
}

TEST_CASE("dropout identities") {
  std::mt19937_64 rng(18);
  const auto x = RandomMatrix<double>(10, 10, rng);
  CHECK(DropoutApply(x, 0.0, rng, true) == x);
  CHECK(DropoutApply(x, 0.5, rng, false) == x);
  CHECK_THROWS_AS(DropoutApply(x, 1.0, rng, true), DomainError);
  CHECK_THROWS_AS(DropoutApply(x, -0.1, rng, true), DomainError);
}

TEST_CASE("dropout zeroes about rate of a million elements and rescales survivors") {
  std::mt19937_64 rng(3);
  const Tensor2<double> x = Tensor2<double>::Ones(1000, 1000);
  Tensor2<double> mask;
  const auto y = DropoutApply(x, 0.2, rng, true, &mask);
  const double zeroed = double((y.array() == 0.0).count()) / double(y.size());
  CHECK(std::abs(zeroed - 0.2) <= 0.002);
  CHECK(((y.array() == 0.0) || (y.array() == 1.25)).all());
  CHECK(y == mask);
}

TEST_CASE("tensor file round-trips values and header") {
  testing::TempDir dir("tensorio");
  std::mt19937_64 rng(19);
  const Tensor2<float> a = RandomMatrix<float>(3, 5, rng);
  const Tensor2<float> b = RandomMatrix<float>(1, 2, rng);
  nlohmann::json header{{"note", "x"}};
  WriteTensorFile(dir.File("t.bin"), "TEST", header, {{"a", &a}, {"b", &b}});
  const auto f = ReadTensorFile(dir.File("t.bin"), "TEST");
  CHECK(f.header.at("note") == "x");
  CHECK(f.Get("a") == a);
  CHECK(f.Get("b") == b);
  CHECK_THROWS_AS(ReadTensorFile(dir.File("t.bin"), "NOPE"), IoError);
  CHECK_THROWS_AS(f.Get("c"), IoError);
}

}  // namespace
}  // namespace csrnnt
