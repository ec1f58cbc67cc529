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

#ifndef DPFREQ_RANGE_TREE_HPP_
#define DPFREQ_RANGE_TREE_HPP_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpfreq/privacy.hpp"

namespace dpfreq {

enum class NoiseKind { kNone, kLaplace, kGaussian };

// Private orthogonal range-count structure over the integer domain
// {0, ..., bound} (padded internally to a power of two). dim 1 is the dyadic
// tree mechanism; dim 2 is the product hierarchy (a dyadic tree on the first
// coordinate, each of whose nodes owns a dyadic tree on the second).
//
// Every dyadic node holds its true point count plus one independent noise
// draw. True counts are stored sparsely; noise is derived deterministically
// per node from a base seed drawn at build time, so node values are
// reproducible and independent of query order, and empty regions cost
// nothing. Noise is added at every level including root and leaves; no
// consistency post-processing. Estimates are raw reals, never rounded.
//
// Each 1d point contributes to depth()+1 node counts; each 2d point to
// (depth()+1)^2. Laplace scale is (L+1)/eps per node in 1d and (L+1)^2/eps
// in 2d; Gaussian sigma is calibrated at l2 sensitivity sqrt(L+1) (1d) or
// L+1 (2d).
//
// Immutable after build; safe for concurrent queries.
class NoisyRangeTree {
 public:
  static NoisyRangeTree Build1D(std::span<const int> points, int bound,
                                const PrivacyBudget& budget, NoiseKind noise,
                                SeededRng& rng);
  static NoisyRangeTree Build2D(std::span<const std::pair<int, int>> points,
                                int bound, const PrivacyBudget& budget,
                                NoiseKind noise, SeededRng& rng);

  // Sum of noisy node counts over the canonical dyadic decomposition of
  // [y1, y2] (at most 2(depth()+1) disjoint nodes whose union is exactly the
  // interval). Requires dim() == 1 and 0 <= y1 <= y2 <= bound().
  double Query1D(int y1, int y2) const;

  // Noisy count of points in the rectangle [x1, x2] x [y1, y2]; at most
  // 4(depth()+1)^2 nodes. Requires dim() == 2.
  double Query2D(int x1, int y1, int x2, int y2) const;

  int dim() const { return dim_; }
  int bound() const { return bound_; }
  int depth() const { return depth_; }  // L = ceil(log2(bound + 1))
  NoiseKind noise_kind() const { return noise_; }
  // Laplace scale or Gaussian sigma per node (0 for kNone).
  double node_scale() const { return scale_; }
  const PrivacyBudget& budget() const { return budget_; }

  // Test hooks: canonical decomposition node ids, and per-node values.
  std::vector<uint64_t> Decompose1D(int y1, int y2) const;
  std::vector<uint64_t> Decompose2D(int x1, int y1, int x2, int y2) const;
  double NodeTrueCount(uint64_t node_id) const;
  double NodeNoise(uint64_t node_id) const;
  // All node ids on the insertion path(s) of a point; size (L+1) or (L+1)^2.
  std::vector<uint64_t> PathIds1D(int coordinate) const;

 private:
  NoisyRangeTree() = default;

  void CoverInterval(uint64_t node, int lo, int hi, int y1, int y2,
                     std::vector<uint64_t>& out) const;

  int dim_ = 1;
  int bound_ = 0;
  int depth_ = 0;
  int leaves_ = 1;  // 2^depth_
  NoiseKind noise_ = NoiseKind::kNone;
  double scale_ = 0.0;
  PrivacyBudget budget_;
  uint64_t noise_seed_ = 0;
  std::unordered_map<uint64_t, long long> counts_;
};

}  // namespace dpfreq

#endif  // DPFREQ_RANGE_TREE_HPP_
