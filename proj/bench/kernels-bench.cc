// bench/kernels-bench.cc

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

// OpenMP kernels against their serial references.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "csrnnt/decoder/beam-search.h"
#include "csrnnt/pipeline/recognize.h"
#include "csrnnt/pipeline/trainer.h"
#include "csrnnt/synth/synth.h"
#include "csrnnt/transducer/joint.h"

namespace csrnnt {
namespace {

Tensor2<float> Random(int rows, int cols, std::mt19937_64 &rng) {
  std::uniform_real_distribution<float> u(-1, 1);
  Tensor2<float> m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

// Desk-sized joint grid: 150 frames, 20 labels, joint 64, 160 symbols.
template <bool kParallel>
void BM_JointGrid(benchmark::State &state) {
  std::mt19937_64 rng(1);
  const auto enc = Random(150, 64, rng), pred = Random(21, 64, rng);
  const auto out = Random(64, 160, rng), bias = Random(1, 160, rng);
  JointGrid<float> grid;
  for (auto _ : state) {
    if (kParallel) {
      ComputeJointGrid(enc, pred, out, bias, &grid);
    } else {
      ComputeJointGridSerial(enc, pred, out, bias, &grid);
    }
    benchmark::DoNotOptimize(grid.log_probs.data());
  }
}
BENCHMARK(BM_JointGrid<true>)->Name("joint_grid/omp")->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_JointGrid<false>)->Name("joint_grid/serial")->Unit(benchmark::kMicrosecond);

template <bool kParallel>
void BM_GenCorpus(benchmark::State &state) {
  SynthConfig c;
  for (auto _ : state) {
    auto utts = kParallel ? GenCorpus(c, 200, "utt", 0) : GenCorpusSerial(c, 200, "utt", 0);
    benchmark::DoNotOptimize(utts.data());
  }
}
BENCHMARK(BM_GenCorpus<true>)->Name("synth_200/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenCorpus<false>)->Name("synth_200/serial")->Unit(benchmark::kMillisecond);

RunConfig SmallRun() {
  RunConfig c = PresetConfig("desk");
  c.synth.num_utterances = 64;
  c.num_test = 16;
  return c;
}

struct Fixture {
  RunConfig config = SmallRun();
  SynthData data = GenerateData(config);
  TextModels text =
      BuildTextModels(TranscriptsOf(data.train, false), config.train.bpe_merges, true);
  std::vector<Example> examples = MakeExamples(data.train, text, true);
  TrainState state = InitTrainState(config.model, text.vocab, config.train);
};

const Fixture &Shared() {
  static const Fixture f;
  return f;
}

template <bool kParallel>
void BM_BatchGradient(benchmark::State &state) {
  const Fixture &f = Shared();
  std::vector<size_t> idx(16);
  std::iota(idx.begin(), idx.end(), 0);
  auto grad = ZeroParams<float>(f.state.model.config(), f.text.vocab.size());
  for (auto _ : state) {
    const double loss =
        kParallel ? BatchLossAndGradient(f.state.model, f.examples, idx, true, 42, 1, &grad)
                  : BatchLossAndGradientSerial(f.state.model, f.examples, idx, true, 42, 1,
                                               &grad);
    benchmark::DoNotOptimize(loss);
  }
}
BENCHMARK(BM_BatchGradient<true>)->Name("batch_gradient_16/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchGradient<false>)
    ->Name("batch_gradient_16/serial")
    ->Unit(benchmark::kMillisecond);

template <bool kParallel>
void BM_Decode(benchmark::State &state) {
  const Fixture &f = Shared();
  const auto model = f.state.model.Cast<double>();
  const auto symbols = DecoderSymbols::FromVocabulary(f.text.vocab);
  std::vector<Tensor2<double>> feats;
  for (const auto &u : f.data.test) feats.push_back(u.features.cast<double>());
  for (auto _ : state) {
    auto out = kParallel ? DecodeBatch(model, symbols, feats, f.config.decode)
                         : DecodeBatchSerial(model, symbols, feats, f.config.decode);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Decode<true>)->Name("decode_16/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decode<false>)->Name("decode_16/serial")->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace csrnnt

BENCHMARK_MAIN();
