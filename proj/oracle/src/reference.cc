// oracle/src/reference.cc

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

#include "csrnnt/oracle/reference.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "csrnnt/transducer/rnnt-loss.h"

namespace csrnnt::oracle {

namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

ScalarLstmResult ScalarLstm(const LstmParams<double> &params,
                            const std::vector<Vec> &inputs, const Vec &h0,
                            const Vec &c0) {
  const int in = params.input_dim, hid = params.hidden_dim;
  ScalarLstmResult r{{}, h0, c0};
  for (const Vec &x : inputs) {
    Vec gate_i(hid), gate_f(hid), gate_g(hid), gate_o(hid);
    for (int j = 0; j < hid; ++j) {
      double pre[4];
      for (int g = 0; g < 4; ++g) {
        double s = params.bias(0, g * hid + j);
        for (int k = 0; k < in; ++k) s += x[k] * params.weight(k, g * hid + j);
        for (int k = 0; k < hid; ++k) s += r.h[k] * params.weight(in + k, g * hid + j);
        pre[g] = s;
      }
      gate_i[j] = Sigmoid(pre[0]);
      gate_f[j] = Sigmoid(pre[1]);
      gate_g[j] = std::tanh(pre[2]);
      gate_o[j] = Sigmoid(pre[3]);
    }
    for (int j = 0; j < hid; ++j) {
      r.c[j] = gate_f[j] * r.c[j] + gate_i[j] * gate_g[j];
      r.h[j] = gate_o[j] * std::tanh(r.c[j]);
    }
    r.outputs.push_back(r.h);
  }
  return r;
}

Vec ScalarJointLogits(const TransducerModel<double> &model, const Vec &enc,
                      const Vec &pred) {
  const auto &p = model.params();
  const int joint = static_cast<int>(p.joint_bias.cols());
  Vec hidden(joint);
  for (int j = 0; j < joint; ++j) {
    double s = p.joint_bias(0, j);
    for (size_t k = 0; k < enc.size(); ++k) s += enc[k] * p.joint_enc(k, j);
    for (size_t k = 0; k < pred.size(); ++k) s += pred[k] * p.joint_pred(k, j);
    hidden[j] = std::tanh(s);
  }
  Vec z(p.output.cols());
  for (size_t v = 0; v < z.size(); ++v) {
    double s = p.output_bias(0, v);
    for (int j = 0; j < joint; ++j) s += hidden[j] * p.output(j, v);
    z[v] = s;
  }
  return z;
}

namespace {

struct Walker {
  const TransducerModel<double> &model;
  const DecoderSymbols &symbols;
  const DecodeConfig &config;
  Tensor2<double> enc;
  std::map<std::vector<int>, double> totals;

  std::vector<double> LogProbs(int t, const RowVec<double> &pred,
                               LanguageAttr lang) const {
    const Vec z = ScalarJointLogits(model, Vec(enc.row(t).data(), enc.row(t).data() + enc.cols()),
                                    Vec(pred.data(), pred.data() + pred.size()));
    double mx = *std::max_element(z.begin(), z.end());
    double sum = 0;
    for (double v : z) sum += std::exp(v - mx);
    Vec lp(z.size());
    for (size_t v = 0; v < z.size(); ++v) lp[v] = z[v] - mx - std::log(sum);
    const double lambda =
        config.lambda_mode == LambdaMode::kFixed ? config.lambda : 0.0;
    if (lambda == 0.0 || lang == LanguageAttr::kNeutral) return lp;
    double norm = 0;
    for (size_t v = 0; v < lp.size(); ++v) {
      if (symbols.Boostable(static_cast<int>(v)) && symbols.lang[v] == lang) {
        lp[v] += std::log1p(lambda);
      }
      norm += std::exp(lp[v]);
    }
    for (double &v : lp) v -= std::log(norm);
    return lp;
  }

  void Walk(int t, int emitted, std::vector<int> &tokens, double log_prob,
            const PredictionState<double> &state, const RowVec<double> &pred,
            LanguageAttr lang) {
    if (t == enc.rows()) {
      auto [it, inserted] = totals.emplace(tokens, log_prob);
      if (!inserted) it->second = LogAdd(it->second, log_prob);
      return;
    }
    const auto lp = LogProbs(t, pred, lang);
    Walk(t + 1, 0, tokens, log_prob + lp[Vocabulary::kBlank], state, pred, lang);
    if (emitted == config.max_symbols_per_frame) return;
    for (int k = 0; k < symbols.size(); ++k) {
      if (k == Vocabulary::kBlank) continue;
      PredictionState<double> next = state;
      const RowVec<double> out = model.PredictionStep(k, &next);
      tokens.push_back(k);
      const LanguageAttr next_lang =
          symbols.kind[k] == SymbolKind::kLanguageId ? symbols.lang[k] : lang;
      Walk(t, emitted + 1, tokens, log_prob + lp[k], next, out, next_lang);
      tokens.pop_back();
    }
  }
};

}  // namespace

ExhaustiveResult ExhaustiveDecode(const TransducerModel<double> &model,
                                  const DecoderSymbols &symbols,
                                  const Tensor2<double> &features,
                                  const DecodeConfig &config) {
  Walker w{model, symbols, config, model.Encode(features), {}};
  PredictionState<double> state = model.InitialPredictionState();
  const RowVec<double> pred = model.PredictionStep(model.start_id(), &state);
  std::vector<int> tokens;
  w.Walk(0, 0, tokens, 0.0, state, pred, LanguageAttr::kNeutral);
  if (features.rows() == 0) w.totals[{}] = 0.0;

  ExhaustiveResult best;
  best.num_sequences = static_cast<int>(w.totals.size());
  double second = -INFINITY;
  bool have = false;
  for (const auto &[seq, lp] : w.totals) {  // lexicographic order
    if (!have || lp > best.log_prob) {
      if (have) second = std::max(second, best.log_prob);
      best.tokens = seq;
      best.log_prob = lp;
      have = true;
    } else {
      second = std::max(second, lp);
    }
  }
  best.runner_up_gap = best.log_prob - second;
  return best;
}

std::vector<double> CentralDifferences(double *x, size_t n,
                                       const std::function<double()> &f,
                                       double eps) {
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double up = f();
    x[i] = saved - eps;
    const double down = f();
    x[i] = saved;
    out[i] = (up - down) / (2 * eps);
  }
  return out;
}

double RelativeError(double a, double b, double floor) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < floor) return std::abs(a - b) / floor;
  return std::abs(a - b) / scale;
}

}  // namespace csrnnt::oracle
