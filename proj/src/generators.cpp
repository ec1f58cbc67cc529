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

#include "dpfreq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpfreq/privacy.hpp"

namespace dpfreq {
namespace {

int SampleZipf(int universe, double exponent, SeededRng& rng) {
  // Inverse-CDF over the finite support; fine at the universe sizes the
  // harness uses.
  double total = 0.0;
  for (int u = 1; u <= universe; ++u) total += std::pow(u, -exponent);
  double target = rng.NextUnit() * total;
  for (int u = 1; u <= universe; ++u) {
    target -= std::pow(u, -exponent);
    if (target <= 0) return u;
  }
  return universe;
}

int UniformItem(int universe, SeededRng& rng) {
  return 1 + static_cast<int>(rng.NextUnit() * universe);
}

}  // namespace

EventStream Generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kHardRange:
      return GenerateHardRange(spec.embed_points, spec.k, spec.horizon);
    case GeneratorKind::kHardMarginal:
      return GenerateHardMarginal(spec.embed_bits, spec.embed_window, spec.k,
                                  spec.horizon);
    default:
      break;
  }
  if (spec.horizon < 1 || spec.universe < 1)
    throw std::invalid_argument("generator needs T >= 1 and U >= 1");
  if (spec.event_prob < 0 || spec.event_prob > 1)
    throw std::invalid_argument("event probability outside [0, 1]");
  EventStream stream;
  stream.horizon = spec.horizon;
  stream.universe = spec.universe;
  stream.regime = spec.regime;
  SeededRng rng(spec.seed);
  const bool singleton = spec.regime == Regime::kSingleton;
  switch (spec.kind) {
    case GeneratorKind::kUniform:
      if (singleton) {
        for (int t = 1; t <= spec.horizon; ++t)
          if (rng.NextUnit() < spec.event_prob)
            stream.Add(t, UniformItem(spec.universe, rng));
      } else {
        for (int t = 1; t <= spec.horizon; ++t)
          for (int u = 1; u <= spec.universe; ++u)
            if (rng.NextUnit() < spec.event_prob) stream.Add(t, u);
      }
      break;
    case GeneratorKind::kZipf:
      for (int t = 1; t <= spec.horizon; ++t)
        if (rng.NextUnit() < spec.event_prob)
          stream.Add(t, SampleZipf(spec.universe, spec.zipf_exponent, rng));
      break;
    case GeneratorKind::kBursty: {
      if (spec.burst_length < 1)
        throw std::invalid_argument("burst length must be >= 1");
      int t = 1;
      while (t <= spec.horizon) {
        const int hot = UniformItem(spec.universe, rng);
        const int end = std::min(spec.horizon, t + spec.burst_length - 1);
        for (; t <= end; ++t)
          if (rng.NextUnit() < spec.event_prob) stream.Add(t, hot);
      }
      break;
    }
    default:
      throw std::invalid_argument("unhandled generator kind");
  }
  if (auto violation = ValidateStream(stream))
    throw std::logic_error("generator produced invalid stream: " + *violation);
  return stream;
}

EventStream GenerateHardRange(const std::vector<int>& points, int k, int T) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  EventStream stream;
  stream.horizon = T;
  stream.universe = std::max<int>(1, points.size());
  stream.regime = Regime::kBundle;
  for (size_t j = 0; j < points.size(); ++j) {
    if (points[j] < 1 || points[j] > T)
      throw std::invalid_argument("embedded point outside [1, T]");
    if (k > 1) stream.Add(1, static_cast<int>(j + 1), k - 1);
    stream.Add(points[j], static_cast<int>(j + 1));
  }
  return stream;
}

EventStream GenerateHardMarginal(const std::vector<std::vector<int>>& bits,
                                 int window, int k, int T) {
  if (bits.empty()) throw std::invalid_argument("need at least one vector");
  if (window < 1) throw std::invalid_argument("W must be >= 1");
  const int d = static_cast<int>(bits.front().size());
  if (d < 1) throw std::invalid_argument("vectors must be nonempty");
  if (T < window * d)
    throw std::invalid_argument("marginal embedding needs T >= W*d");
  EventStream stream;
  stream.horizon = T;
  stream.universe = static_cast<int>(bits.size());
  stream.regime = Regime::kBundle;
  for (size_t j = 0; j < bits.size(); ++j) {
    if (static_cast<int>(bits[j].size()) != d)
      throw std::invalid_argument("bit vectors must share one dimension");
    for (int l = 1; l <= d; ++l) {
      const int bit = bits[j][l - 1];
      if (bit != 0 && bit != 1)
        throw std::invalid_argument("embedded vectors must be 0/1");
      if (bit == 1)
        stream.Add(window * (l - 1) + 1, static_cast<int>(j + 1), k);
    }
  }
  return stream;
}

}  // namespace dpfreq
