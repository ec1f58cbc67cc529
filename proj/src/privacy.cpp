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

#include "dpfreq/privacy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpfreq {
namespace {

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

SeededRng::SeededRng(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : s_) s = SplitMix64(sm);
}

uint64_t SeededRng::NextU64() {
  const uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double SeededRng::NextUnit() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint64_t DeriveSeed(uint64_t seed, uint64_t index) {
  uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1342543de82ef95ULL);
  return SplitMix64(state);
}

double SampleLaplace(double scale, SeededRng& rng) {
  if (scale <= 0) throw std::invalid_argument("laplace scale must be positive");
  double u;
  do {
    u = rng.NextUnit() - 0.5;  // [-0.5, 0.5)
  } while (u == -0.5);
  const double sign = u < 0 ? -1.0 : 1.0;
  return -scale * sign * std::log1p(-2.0 * std::abs(u));
}

double SampleGaussian(double sigma, SeededRng& rng) {
  if (sigma <= 0) throw std::invalid_argument("gaussian sigma must be positive");
  const double u1 = 1.0 - rng.NextUnit();  // (0, 1]
  const double u2 = rng.NextUnit();
  return sigma * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

PrivacyBudget BasicSplit(const PrivacyBudget& target, int m) {
  if (m < 1) throw std::invalid_argument("split count must be >= 1");
  return {target.epsilon / m, target.delta / m};
}

PrivacyBudget AdvancedSplit(const PrivacyBudget& target, int m) {
  if (m < 1) throw std::invalid_argument("split count must be >= 1");
  if (target.epsilon <= 0)
    throw std::invalid_argument("advanced composition requires eps > 0");
  if (target.delta <= 0 || target.delta >= 1)
    throw std::invalid_argument("advanced composition requires delta in (0, 1)");
  const double eps =
      target.epsilon / (2.0 * std::sqrt(2.0 * m * std::log(2.0 / target.delta)));
  return {eps, target.delta / (2.0 * m)};
}

PrivacyBudget GroupInvert(const PrivacyBudget& target, int m) {
  if (m < 1) throw std::invalid_argument("group multiplicity must be >= 1");
  if (m == 1) return target;
  const double eps = target.epsilon / m;
  const double delta =
      target.delta * std::expm1(eps) / std::expm1(target.epsilon);
  return {eps, delta};
}

PrivacyBudget GroupForward(const PrivacyBudget& per_step, int m) {
  if (m < 1) throw std::invalid_argument("group multiplicity must be >= 1");
  if (m == 1) return per_step;
  const double eps = m * per_step.epsilon;
  const double delta =
      per_step.delta * std::expm1(eps) / std::expm1(per_step.epsilon);
  return {eps, delta};
}

double GaussianSigmaFor(const PrivacyBudget& budget, double l2_sensitivity) {
  if (budget.epsilon <= 0 || budget.epsilon > 1)
    throw std::invalid_argument("gaussian calibration requires eps in (0, 1]");
  if (budget.delta <= 0 || budget.delta >= 1)
    throw std::invalid_argument("gaussian calibration requires delta in (0, 1)");
  if (l2_sensitivity <= 0)
    throw std::invalid_argument("l2 sensitivity must be positive");
  return l2_sensitivity * std::sqrt(2.0 * std::log(1.25 / budget.delta)) /
         budget.epsilon;
}

}  // namespace dpfreq
