// Copyright 2026 The dpfreq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPFREQ_GENERATORS_HPP_
#define DPFREQ_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dpfreq/stream.hpp"

namespace dpfreq {

enum class GeneratorKind {
  kUniform,
  kZipf,
  kBursty,
  kHardRange,
  kHardMarginal,
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniform;
  int horizon = 0;   // T
  int universe = 0;  // U (ignored by the hard embeddings, which fix U)
  int k = 1;
  Regime regime = Regime::kBundle;
  uint64_t seed = 0;
  // uniform / zipf / bursty
  double event_prob = 0.5;   // per-step event probability
  double zipf_exponent = 1.0;
  int burst_length = 8;
  // hard-range-embedding: 1d points over [1, T]
  std::vector<int> embed_points;
  // hard-marginal-embedding: one bit vector per item, all of equal length d
  std::vector<std::vector<int>> embed_bits;
  int embed_window = 0;  // W for the marginal embedding
};

// Deterministic stream for a fixed seed; output always passes ValidateStream
// for the declared regime. Throws on infeasible specs.
EventStream Generate(const GeneratorSpec& spec);

// The cumulative lower-bound embedding: every item gets count k-1 at t=1 and
// point x^j increments item j at step x^j, so the exact cumulative Freq>=k
// at t equals the prefix count r_{0,t} of the point set.
EventStream GenerateHardRange(const std::vector<int>& points, int k, int T);

// The fixed-window marginal embedding: item j gets count k*x^j_l at step
// W(l-1)+1, so the exact fixed-window Freq>=k on [W(l-1)+1, Wl] equals the
// l-th marginal sum_j x^j_l. Requires T >= W*d.
EventStream GenerateHardMarginal(const std::vector<std::vector<int>>& bits,
                                 int window, int k, int T);

}  // namespace dpfreq

#endif  // DPFREQ_GENERATORS_HPP_
