// src/transducer/rnnt-loss.cc

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

#include "csrnnt/transducer/rnnt-loss.h"

#include <cmath>
#include <limits>
#include <string>

#include "csrnnt/base/errors.h"

namespace csrnnt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

NodeLogProbs::NodeLogProbs(int frames, int labels)
    : frames(frames),
      labels(labels),
      blank(static_cast<size_t>(frames) * (labels + 1), 0.0),
      label(static_cast<size_t>(frames) * (labels + 1), 0.0) {}

NodeLogProbs GatherNodeLogProbs(std::span<const double> full, int frames,
                                std::span<const int> target, int vocab_size,
                                int blank_id) {
  const int labels = static_cast<int>(target.size());
  for (int y : target) {
    if (y == blank_id) throw DomainError("rnnt target contains blank");
    if (y < 0 || y >= vocab_size) {
      throw IndexError("rnnt target id " + std::to_string(y) +
                       " outside vocabulary of size " +
                       std::to_string(vocab_size));
    }
  }
  const size_t expected =
      static_cast<size_t>(frames) * (labels + 1) * vocab_size;
  if (full.size() != expected) {
    throw ShapeError("rnnt node log-probs: expected " +
                     std::to_string(expected) + " values, got " +
                     std::to_string(full.size()));
  }
  NodeLogProbs nodes(frames, labels);
  for (int t = 0; t < frames; ++t) {
    for (int u = 0; u <= labels; ++u) {
      const double *row = full.data() + static_cast<size_t>(nodes.Index(t, u)) * vocab_size;
      nodes.Blank(t, u) = row[blank_id];
      if (u < labels) nodes.Label(t, u) = row[target[u]];
    }
  }
  return nodes;
}

RnntLossResult RnntLoss(const NodeLogProbs &nodes) {
  const int T = nodes.frames;
  const int U = nodes.labels;
  if (T < 1) throw DomainError("rnnt loss needs at least one frame");
  if (U < 0) throw DomainError("rnnt loss: negative target length");
  const size_t n = static_cast<size_t>(T) * (U + 1);
  if (nodes.blank.size() != n || nodes.label.size() != n) {
    throw ShapeError("rnnt node log-probs: expected " + std::to_string(n) +
                     " nodes");
  }
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (!std::isfinite(nodes.Blank(t, u)) ||
          (u < U && !std::isfinite(nodes.Label(t, u)))) {
        throw NonFiniteInputError("rnnt loss: non-finite log-prob at node (" +
                          std::to_string(t) + ", " + std::to_string(u) + ")");
      }
    }
  }

  RnntLossResult result;
  AlignmentLattice &lat = result.lattice;
  lat.frames = T;
  lat.labels = U;
  lat.log_alpha.assign(n, kNegInf);
  lat.log_beta.assign(n, kNegInf);
  auto alpha = [&](int t, int u) -> double & {
    return lat.log_alpha[nodes.Index(t, u)];
  };
  auto beta = [&](int t, int u) -> double & {
    return lat.log_beta[nodes.Index(t, u)];
  };

  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      if (t == 0 && u == 0) {
        alpha(0, 0) = 0.0;
        continue;
      }
      double a = kNegInf;
      if (t > 0) a = alpha(t - 1, u) + nodes.Blank(t - 1, u);
      if (u > 0) a = LogAdd(a, alpha(t, u - 1) + nodes.Label(t, u - 1));
      alpha(t, u) = a;
    }
  }

  for (int t = T - 1; t >= 0; --t) {
    for (int u = U; u >= 0; --u) {
      if (t == T - 1 && u == U) {
        beta(t, u) = nodes.Blank(t, u);
        continue;
      }
      double b = kNegInf;
      if (t < T - 1) b = beta(t + 1, u) + nodes.Blank(t, u);
      if (u < U) b = LogAdd(b, beta(t, u + 1) + nodes.Label(t, u));
      beta(t, u) = b;
    }
  }

  const double log_like = alpha(T - 1, U) + nodes.Blank(T - 1, U);
  result.loss = -log_like;
  result.loss_beta = -beta(0, 0);

  result.grad = NodeLogProbs(T, U);
  for (int t = 0; t < T; ++t) {
    for (int u = 0; u <= U; ++u) {
      const double a = alpha(t, u);
      double next = kNegInf;
      if (t < T - 1) {
        next = beta(t + 1, u);
      } else if (u == U) {
        next = 0.0;  // terminal blank
      }
      if (next != kNegInf) {
        result.grad.Blank(t, u) =
            -std::exp(a + nodes.Blank(t, u) + next - log_like);
      }
      if (u < U) {
        result.grad.Label(t, u) =
            -std::exp(a + nodes.Label(t, u) + beta(t, u + 1) - log_like);
      }
    }
  }
  return result;
}

namespace {

void EnumerateFrom(int t, int u, int frames, std::span<const int> target,
                   int blank_id, std::vector<int> *prefix,
                   std::vector<std::vector<int>> *out) {
  const int U = static_cast<int>(target.size());
  if (t == frames - 1 && u == U) {
    prefix->push_back(blank_id);
    out->push_back(*prefix);
    prefix->pop_back();
    return;
  }
  if (u < U) {
    prefix->push_back(target[u]);
    EnumerateFrom(t, u + 1, frames, target, blank_id, prefix, out);
    prefix->pop_back();
  }
  if (t < frames - 1) {
    prefix->push_back(blank_id);
    EnumerateFrom(t + 1, u, frames, target, blank_id, prefix, out);
    prefix->pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> EnumerateAlignments(int frames,
                                                  std::span<const int> target,
                                                  int blank_id) {
  std::vector<std::vector<int>> out;
  if (frames < 1) return out;
  std::vector<int> prefix;
  EnumerateFrom(0, 0, frames, target, blank_id, &prefix, &out);
  return out;
}

double EnumerateAlignmentsOracle(const NodeLogProbs &nodes) {
  const int T = nodes.frames;
  const int U = nodes.labels;
  if (T > 6 || U > 4) {
    throw SizeError("alignment enumeration limited to T <= 6, U <= 4 (got T=" +
                    std::to_string(T) + ", U=" + std::to_string(U) + ")");
  }
  if (T < 1) throw DomainError("alignment enumeration needs T >= 1");
  // Labels are encoded as their position so each alignment can be replayed
  // against the per-node table.
  constexpr int kBlankMarker = -1;
  std::vector<int> positions(U);
  for (int u = 0; u < U; ++u) positions[u] = u;
  double total = kNegInf;
  for (const auto &alignment : EnumerateAlignments(T, positions, kBlankMarker)) {
    int t = 0;
    int u = 0;
    double path = 0.0;
    for (int sym : alignment) {
      if (sym == kBlankMarker) {
        path += nodes.Blank(t, u);
        ++t;
      } else {
        path += nodes.Label(t, u);
        ++u;
      }
    }
    total = LogAdd(total, path);
  }
  return -total;
}

std::vector<int> CollapseAlignment(std::span<const int> alignment,
                                   int blank_id) {
  std::vector<int> out;
  for (int s : alignment) {
    if (s != blank_id) out.push_back(s);
  }
  return out;
}

}  // namespace csrnnt
