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
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dpfreq/privacy.hpp"

using namespace dpfreq;

namespace {

constexpr int kDraws = 100000;

double SampleVariance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return var / (xs.size() - 1);
}

}  // namespace

TEST_CASE("laplace draws match the analytic variance and are symmetric") {
  SeededRng rng(42);
  std::vector<double> xs(kDraws);
  for (auto& x : xs) x = SampleLaplace(1.0, rng);
  CHECK(SampleVariance(xs) == doctest::Approx(2.0).epsilon(0.05));
  std::nth_element(xs.begin(), xs.begin() + kDraws / 2, xs.end());
  CHECK(std::abs(xs[kDraws / 2]) <= 0.02);
}

TEST_CASE("laplace sampling is deterministic under a fixed seed") {
  SeededRng a(42), b(42);
  for (int i = 0; i < 10; ++i)
    CHECK(SampleLaplace(1.0, a) == SampleLaplace(1.0, b));
  CHECK_THROWS_AS(SampleLaplace(0.0, a), std::invalid_argument);
}

TEST_CASE("gaussian draws match the analytic variance and are symmetric") {
  SeededRng rng(43);
  std::vector<double> xs(kDraws);
  int nonpositive = 0;
  for (auto& x : xs) {
    x = SampleGaussian(2.0, rng);
    if (x <= 0) ++nonpositive;
  }
  CHECK(SampleVariance(xs) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(std::abs(nonpositive / static_cast<double>(kDraws) - 0.5) <= 0.01);
}

TEST_CASE("gaussian sampling is deterministic under a fixed seed") {
  SeededRng a(7), b(7);
  for (int i = 0; i < 10; ++i)
    CHECK(SampleGaussian(1.0, a) == SampleGaussian(1.0, b));
  CHECK_THROWS_AS(SampleGaussian(-1.0, a), std::invalid_argument);
}

TEST_CASE("derived seeds decorrelate sample streams") {
  SeededRng a(DeriveSeed(5, 0)), b(DeriveSeed(5, 1));
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (a.NextU64() == b.NextU64()) ++equal;
  CHECK(equal == 0);
  CHECK(DeriveSeed(5, 0) != DeriveSeed(5, 1));
  CHECK(DeriveSeed(5, 3) == DeriveSeed(5, 3));
}

TEST_CASE("basic_split divides both parameters by m") {
  const PrivacyBudget a = BasicSplit({1.0, 0.1}, 4);
  CHECK(a.epsilon == 0.25);
  CHECK(a.delta == 0.025);
  const PrivacyBudget b = BasicSplit({0.7, 0.02}, 1);
  CHECK(b.epsilon == 0.7);
  CHECK(b.delta == 0.02);
  const PrivacyBudget c = BasicSplit({2.0, 0.0}, 8);
  CHECK(c.epsilon == 0.25);
  CHECK(c.delta == 0.0);
}

TEST_CASE("advanced_split matches its closed form") {
  const PrivacyBudget a = AdvancedSplit({1.0, 0.1}, 16);
  CHECK(a.epsilon ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(32.0 * std::log(20.0))))
            .epsilon(1e-12));
  CHECK(a.epsilon == doctest::Approx(0.0510).epsilon(1e-2));
  CHECK(a.delta == 0.003125);
  const PrivacyBudget b = AdvancedSplit({0.5, 0.01}, 100);
  CHECK(b.delta == doctest::Approx(5e-5).epsilon(1e-12));
  const PrivacyBudget c = AdvancedSplit({0.8, 0.2}, 1);
  CHECK(c.epsilon < 0.8);
  CHECK_THROWS_AS(AdvancedSplit({1.0, 0.0}, 4), std::invalid_argument);
}

TEST_CASE("advanced_split stays below the basic rate for delta <= 0.25") {
  // Only for m <= 8 ln(2/delta); the ordering flips for larger m and is not
  // asserted there.
  for (double delta : {0.25, 0.1, 0.01})
    for (int m : {2, 4, 16}) {
      const PrivacyBudget split = AdvancedSplit({0.9, delta}, m);
      CHECK(split.epsilon <= 0.9 / m);
    }
}

TEST_CASE("group_invert round-trips through the forward map") {
  CHECK(GroupInvert({1.0, 0.1}, 1).epsilon == 1.0);
  const PrivacyBudget g = GroupInvert({1.0, 0.1}, 2);
  CHECK(g.epsilon == 0.5);
  CHECK(g.delta == doctest::Approx(0.1 * (std::exp(0.5) - 1.0) /
                                   (std::exp(1.0) - 1.0))
                       .epsilon(1e-12));
  SeededRng rng(44);
  for (int i = 0; i < 200; ++i) {
    const PrivacyBudget target{0.05 + 3.0 * rng.NextUnit(),
                               rng.NextUnit() * 0.5};
    const int m = 1 + static_cast<int>(rng.NextUnit() * 12);
    const PrivacyBudget back = GroupForward(GroupInvert(target, m), m);
    CHECK(back.epsilon == doctest::Approx(target.epsilon).epsilon(1e-12));
    CHECK(back.delta == doctest::Approx(target.delta).epsilon(1e-12));
  }
}

TEST_CASE("splits are monotone in m") {
  const PrivacyBudget target{0.9, 0.1};
  for (int m = 1; m < 40; ++m) {
    CHECK(BasicSplit(target, m + 1).epsilon <= BasicSplit(target, m).epsilon);
    CHECK(BasicSplit(target, m + 1).delta <= BasicSplit(target, m).delta);
    CHECK(AdvancedSplit(target, m + 1).epsilon <=
          AdvancedSplit(target, m).epsilon);
    CHECK(AdvancedSplit(target, m + 1).delta <=
          AdvancedSplit(target, m).delta);
    CHECK(GroupInvert(target, m + 1).epsilon <=
          GroupInvert(target, m).epsilon);
    CHECK(GroupInvert(target, m + 1).delta <= GroupInvert(target, m).delta);
  }
}

TEST_CASE("gaussian calibration evaluates the classical formula") {
  CHECK(GaussianSigmaFor({1.0, 1e-5}, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * std::log(125000.0))).epsilon(1e-12));
  CHECK(GaussianSigmaFor({1.0, 1e-5}, 1.0) ==
        doctest::Approx(4.84).epsilon(1e-2));
  CHECK(GaussianSigmaFor({1.0, 1e-5}, 2.0) ==
        doctest::Approx(2.0 * GaussianSigmaFor({1.0, 1e-5}, 1.0))
            .epsilon(1e-12));
  CHECK(GaussianSigmaFor({0.5, 1e-5}, 1.0) ==
        doctest::Approx(2.0 * GaussianSigmaFor({1.0, 1e-5}, 1.0))
            .epsilon(1e-12));
  CHECK_THROWS_AS(GaussianSigmaFor({1.0, 0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianSigmaFor({2.0, 1e-5}, 1.0), std::invalid_argument);
}
