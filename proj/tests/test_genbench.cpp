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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dpfreq/experiment.hpp"
#include "dpfreq/generators.hpp"
#include "dpfreq/io.hpp"
#include "dpfreq/occurrence.hpp"
#include "test_util.hpp"

using namespace dpfreq;

namespace {

GeneratorSpec UniformSpec(int horizon, int universe, uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kUniform;
  spec.horizon = horizon;
  spec.universe = universe;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("generators are deterministic and valid for every kind") {
  for (GeneratorKind kind :
       {GeneratorKind::kUniform, GeneratorKind::kZipf, GeneratorKind::kBursty}) {
    GeneratorSpec spec = UniformSpec(100, 10, 7);
    spec.kind = kind;
    if (kind != GeneratorKind::kUniform) spec.regime = Regime::kSingleton;
    const EventStream a = Generate(spec);
    const EventStream b = Generate(spec);
    CHECK(StreamCsv(a) == StreamCsv(b));
    CHECK_FALSE(ValidateStream(a).has_value());
  }
}

TEST_CASE("singleton uniform with event probability one fills every step") {
  GeneratorSpec spec = UniformSpec(50, 5, 3);
  spec.regime = Regime::kSingleton;
  spec.event_prob = 1.0;
  const EventStream s = Generate(spec);
  CHECK(s.TotalEvents() == 50);
  CHECK_FALSE(ValidateStream(s).has_value());
}

TEST_CASE("zipf exponent zero is statistically uniform") {
  GeneratorSpec spec = UniformSpec(20000, 8, 5);
  spec.kind = GeneratorKind::kZipf;
  spec.regime = Regime::kSingleton;
  spec.zipf_exponent = 0.0;
  spec.event_prob = 1.0;
  const EventStream s = Generate(spec);
  std::vector<long long> freq(spec.universe, 0);
  for (const auto& [t, step] : s.entries)
    for (const auto& [u, c] : step) freq[u - 1] += c;
  const double expected = 20000.0 / spec.universe;
  double chi2 = 0.0;
  for (long long f : freq)
    chi2 += (f - expected) * (f - expected) / expected;
  // 7 degrees of freedom; 24.3 is the 0.001 tail.
  CHECK(chi2 < 24.3);
}

TEST_CASE("infeasible generator specs are rejected") {
  GeneratorSpec spec = UniformSpec(0, 5, 1);
  CHECK_THROWS_AS(Generate(spec), std::invalid_argument);
  spec = UniformSpec(10, 5, 1);
  spec.event_prob = 1.5;
  CHECK_THROWS_AS(Generate(spec), std::invalid_argument);
}

TEST_CASE("hard-range embedding reproduces the prefix-count identity") {
  const EventStream s = GenerateHardRange({2, 2, 5}, 3, 6);
  const std::vector<long long> expected{0, 2, 2, 2, 3, 3};
  for (int t = 1; t <= 6; ++t)
    CHECK(ExactFreqAtLeast(s, 3, 1, t) == expected[t - 1]);
}

TEST_CASE("hard-range embedding with k=1 is exactly the point list") {
  const EventStream s = GenerateHardRange({3, 5}, 1, 6);
  CHECK(s.TotalEvents() == 2);
  CHECK(s.Count(3, 1) == 1);
  CHECK(s.Count(5, 2) == 1);
  const EventStream empty = GenerateHardRange({}, 2, 6);
  for (int t = 1; t <= 6; ++t) CHECK(ExactFreqAtLeast(empty, 2, 1, t) == 0);
}

TEST_CASE("hard-range identity holds for random parameters") {
  SeededRng rng(61);
  for (int i = 0; i < 100; ++i) {
    const int horizon = testutil::UniformInt(rng, 1, 64);
    const int k = testutil::UniformInt(rng, 1, 4);
    std::vector<int> points(testutil::UniformInt(rng, 0, 12));
    for (auto& p : points) p = testutil::UniformInt(rng, 1, horizon);
    const EventStream s = GenerateHardRange(points, k, horizon);
    for (int t = 1; t <= horizon; ++t) {
      long long prefix = 0;
      for (int p : points)
        if (p <= t) ++prefix;
      CHECK(ExactFreqAtLeast(s, k, 1, t) == prefix);
    }
  }
}

TEST_CASE("hard-marginal embedding recovers the marginals") {
  const EventStream s = GenerateHardMarginal({{1, 0}, {1, 1}}, 3, 2, 6);
  CHECK(ExactFreqAtLeast(s, 2, 1, 3) == 2);
  CHECK(ExactFreqAtLeast(s, 2, 4, 6) == 1);

  const EventStream zero = GenerateHardMarginal({{0, 0}, {0, 0}}, 3, 2, 6);
  CHECK(ExactFreqAtLeast(zero, 2, 1, 3) == 0);
  CHECK(ExactFreqAtLeast(zero, 2, 4, 6) == 0);

  const EventStream single = GenerateHardMarginal({{1}, {0}, {1}}, 4, 1, 4);
  CHECK(ExactFreqAtLeast(single, 1, 1, 4) == 2);
}

TEST_CASE("hard-marginal identity holds for random parameters") {
  SeededRng rng(62);
  for (int i = 0; i < 100; ++i) {
    const int w = testutil::UniformInt(rng, 1, 8);
    const int d = testutil::UniformInt(rng, 1, 6);
    const int n = testutil::UniformInt(rng, 1, 8);
    const int k = testutil::UniformInt(rng, 1, 4);
    const int horizon = w * d + testutil::UniformInt(rng, 0, 4);
    std::vector<std::vector<int>> bits(n, std::vector<int>(d));
    for (auto& row : bits)
      for (auto& bit : row) bit = rng.NextUnit() < 0.5 ? 1 : 0;
    const EventStream s = GenerateHardMarginal(bits, w, k, horizon);
    for (int l = 1; l <= d; ++l) {
      long long marginal = 0;
      for (const auto& row : bits) marginal += row[l - 1];
      CHECK(ExactFreqAtLeast(s, k, w * (l - 1) + 1, w * l) == marginal);
    }
  }
}

TEST_CASE("hard-marginal embedding rejects mismatched dimensions") {
  CHECK_THROWS_AS(GenerateHardMarginal({{1, 0}, {1}}, 3, 1, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(GenerateHardMarginal({{1, 0}}, 4, 1, 6),
                  std::invalid_argument);
}

TEST_CASE("no-noise experiments report zero error for any trial count") {
  const EventStream s = Generate(UniformSpec(40, 6, 9));
  EstimatorConfig config;
  config.query = QueryKind::kFixedWindow;
  config.k = 2;
  config.window = 8;
  config.noise = NoiseKind::kNone;
  const ErrorReport report = RunExperiment(s, config, 3);
  CHECK(report.max_abs_error == 0.0);
  CHECK(report.mean_abs_error == 0.0);
  CHECK(report.rows.size() == 3u * (40 - 8 + 1));
}

TEST_CASE("experiments are reproducible under a fixed master seed") {
  const EventStream s = Generate(UniformSpec(40, 6, 9));
  EstimatorConfig config;
  config.query = QueryKind::kCumulative;
  config.k = 1;
  config.budget = {1.0, 0.0};
  config.seed = 17;
  const ErrorReport a = RunExperiment(s, config, 2);
  const ErrorReport b = RunExperiment(s, config, 2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i)
    CHECK(a.rows[i].estimate == b.rows[i].estimate);
}

TEST_CASE("report summaries are recomputable from the rows") {
  const EventStream s = Generate(UniformSpec(64, 8, 10));
  EstimatorConfig config;
  config.query = QueryKind::kCumulative;
  config.k = 1;
  config.budget = {0.5, 0.0};
  config.seed = 4;
  ErrorReport report = RunExperiment(s, config, 5);
  const double max = report.max_abs_error;
  const double mean = report.mean_abs_error;
  const double alpha = report.empirical_alpha;
  CHECK(max > 0.0);
  Summarize(report);
  CHECK(report.max_abs_error == max);
  CHECK(report.mean_abs_error == mean);
  CHECK(report.empirical_alpha == alpha);
  CHECK(alpha <= max);
  CHECK(mean <= max);
}

TEST_CASE("query subsampling is deterministic and bounded") {
  const EventStream s = Generate(UniformSpec(30, 5, 11));
  EstimatorConfig config;
  config.query = QueryKind::kTimeWindow;
  config.k = 1;
  config.noise = NoiseKind::kNone;
  const ErrorReport a = RunExperiment(s, config, 1, 20);
  CHECK(a.rows.size() == 20);
  const ErrorReport b = RunExperiment(s, config, 1, 20);
  for (size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].t1 == b.rows[i].t1);
    CHECK(a.rows[i].t2 == b.rows[i].t2);
  }
}

TEST_CASE("sweeps produce one deterministic summary per value") {
  GeneratorSpec base = UniformSpec(32, 6, 12);
  EstimatorConfig config;
  config.query = QueryKind::kCumulative;
  config.k = 1;
  config.budget = {1.0, 0.0};
  config.seed = 3;
  const std::vector<double> values{16, 32, 64};
  const auto points = Sweep(SweepAxis::kHorizon, values, base, config, 2);
  REQUIRE(points.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(points[i].value == values[i]);
  const auto again = Sweep(SweepAxis::kHorizon, values, base, config, 2);
  CHECK(SweepCsv(SweepAxis::kHorizon, points) ==
        SweepCsv(SweepAxis::kHorizon, again));
  CHECK_THROWS_AS(Sweep(SweepAxis::kHorizon, {64, 16}, base, config, 1),
                  std::invalid_argument);
}
