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

#ifndef DPFREQ_PRIVACY_HPP_
#define DPFREQ_PRIVACY_HPP_

#include <cstdint>

namespace dpfreq {

// An (epsilon, delta) differential-privacy budget. delta == 0 marks pure DP.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;

  bool pure() const { return delta == 0.0; }
};

// Deterministic 64-bit generator (xoshiro256++ seeded via splitmix64).
// Identical seeds produce bitwise-identical sample streams on every platform,
// which std:: distributions do not guarantee.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed);

  uint64_t NextU64();
  // Uniform draw in [0, 1) with 53 bits of precision.
  double NextUnit();

 private:
  uint64_t s_[4];
};

// Mixes a stream/derivation index into a seed. Used to derive independent
// per-trial, per-run, and per-node seeds from one master seed.
uint64_t DeriveSeed(uint64_t seed, uint64_t index);

// Mean-0 Laplace draw with density (1/2b) exp(-|x|/b); variance 2 b^2.
double SampleLaplace(double scale, SeededRng& rng);

// Mean-0 Gaussian draw with standard deviation sigma.
double SampleGaussian(double sigma, SeededRng& rng);

// Basic composition (each of m mechanisms gets (eps/m, delta/m)).
PrivacyBudget BasicSplit(const PrivacyBudget& target, int m);

// Advanced composition: (eps / (2 sqrt(2 m ln(2/delta))), delta / (2m)).
// Requires eps > 0 and delta in (0, 1).
PrivacyBudget AdvancedSplit(const PrivacyBudget& target, int m);

// Exact inversion of the group-privacy degradation: returns (eps', delta')
// with eps' = eps/m and delta' = delta (e^{eps'} - 1) / (e^{m eps'} - 1), so
// that GroupForward(GroupInvert(b, m), m) == b.
PrivacyBudget GroupInvert(const PrivacyBudget& target, int m);

// The forward group-privacy map: (m eps, (e^{m eps}-1)/(e^{eps}-1) delta).
PrivacyBudget GroupForward(const PrivacyBudget& per_step, int m);

// Classical Gaussian-mechanism calibration
// sigma = l2_sensitivity sqrt(2 ln(1.25/delta)) / eps. Requires eps in (0, 1]
// and delta in (0, 1).
double GaussianSigmaFor(const PrivacyBudget& budget, double l2_sensitivity);

}  // namespace dpfreq

#endif  // DPFREQ_PRIVACY_HPP_
