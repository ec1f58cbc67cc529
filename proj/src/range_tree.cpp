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

#include "dpfreq/range_tree.hpp"

#include <cmath>
#include <stdexcept>

namespace dpfreq {
namespace {

int DepthFor(int bound) {
  int depth = 0;
  while ((1 << depth) < bound + 1) ++depth;
  return depth;
}

// Inner tree node ids occupy [1, 2*leaves); pack (outer, inner) pairs above
// that range so 1d and 2d share one id space.
uint64_t PackNode(uint64_t outer, uint64_t inner, uint64_t leaves) {
  return outer * 2 * leaves + inner;
}

}  // namespace

NoisyRangeTree NoisyRangeTree::Build1D(std::span<const int> points, int bound,
                                       const PrivacyBudget& budget,
                                       NoiseKind noise, SeededRng& rng) {
  if (bound < 0) throw std::invalid_argument("domain bound must be >= 0");
  NoisyRangeTree tree;
  tree.dim_ = 1;
  tree.bound_ = bound;
  tree.depth_ = DepthFor(bound);
  tree.leaves_ = 1 << tree.depth_;
  tree.noise_ = noise;
  tree.budget_ = budget;
  tree.noise_seed_ = rng.NextU64();
  const int levels = tree.depth_ + 1;
  switch (noise) {
    case NoiseKind::kNone:
      tree.scale_ = 0.0;
      break;
    case NoiseKind::kLaplace:
      if (budget.epsilon <= 0)
        throw std::invalid_argument("epsilon must be positive");
      tree.scale_ = levels / budget.epsilon;
      break;
    case NoiseKind::kGaussian:
      tree.scale_ = GaussianSigmaFor(budget, std::sqrt(levels));
      break;
  }
  for (int p : points) {
    if (p < 0 || p > bound)
      throw std::out_of_range("point coordinate outside domain");
    for (uint64_t node = tree.leaves_ + p; node >= 1; node >>= 1)
      ++tree.counts_[node];
  }
  return tree;
}

NoisyRangeTree NoisyRangeTree::Build2D(
    std::span<const std::pair<int, int>> points, int bound,
    const PrivacyBudget& budget, NoiseKind noise, SeededRng& rng) {
  if (bound < 0) throw std::invalid_argument("domain bound must be >= 0");
  NoisyRangeTree tree;
  tree.dim_ = 2;
  tree.bound_ = bound;
  tree.depth_ = DepthFor(bound);
  tree.leaves_ = 1 << tree.depth_;
  tree.noise_ = noise;
  tree.budget_ = budget;
  tree.noise_seed_ = rng.NextU64();
  const int levels = tree.depth_ + 1;
  switch (noise) {
    case NoiseKind::kNone:
      tree.scale_ = 0.0;
      break;
    case NoiseKind::kLaplace:
      if (budget.epsilon <= 0)
        throw std::invalid_argument("epsilon must be positive");
      tree.scale_ = static_cast<double>(levels) * levels / budget.epsilon;
      break;
    case NoiseKind::kGaussian:
      tree.scale_ = GaussianSigmaFor(budget, levels);
      break;
  }
  for (const auto& [a, b] : points) {
    if (a < 0 || a > bound || b < 0 || b > bound)
      throw std::out_of_range("point coordinate outside domain");
    for (uint64_t outer = tree.leaves_ + a; outer >= 1; outer >>= 1)
      for (uint64_t inner = tree.leaves_ + b; inner >= 1; inner >>= 1)
        ++tree.counts_[PackNode(outer, inner, tree.leaves_)];
  }
  return tree;
}

void NoisyRangeTree::CoverInterval(uint64_t node, int lo, int hi, int y1,
                                   int y2, std::vector<uint64_t>& out) const {
  if (y2 < lo || hi < y1) return;
  if (y1 <= lo && hi <= y2) {
    out.push_back(node);
    return;
  }
  const int mid = lo + (hi - lo) / 2;
  CoverInterval(2 * node, lo, mid, y1, y2, out);
  CoverInterval(2 * node + 1, mid + 1, hi, y1, y2, out);
}

std::vector<uint64_t> NoisyRangeTree::Decompose1D(int y1, int y2) const {
  if (dim_ != 1) throw std::logic_error("Decompose1D on a 2d tree");
  if (y1 < 0 || y2 > bound_ || y1 > y2)
    throw std::out_of_range("interval [" + std::to_string(y1) + ", " +
                            std::to_string(y2) + "] invalid for bound " +
                            std::to_string(bound_));
  std::vector<uint64_t> nodes;
  CoverInterval(1, 0, leaves_ - 1, y1, y2, nodes);
  return nodes;
}

std::vector<uint64_t> NoisyRangeTree::Decompose2D(int x1, int y1, int x2,
                                                  int y2) const {
  if (dim_ != 2) throw std::logic_error("Decompose2D on a 1d tree");
  if (x1 < 0 || x2 > bound_ || x1 > x2 || y1 < 0 || y2 > bound_ || y1 > y2)
    throw std::out_of_range("malformed query rectangle");
  std::vector<uint64_t> outer, inner;
  CoverInterval(1, 0, leaves_ - 1, x1, x2, outer);
  CoverInterval(1, 0, leaves_ - 1, y1, y2, inner);
  std::vector<uint64_t> nodes;
  nodes.reserve(outer.size() * inner.size());
  for (uint64_t o : outer)
    for (uint64_t i : inner) nodes.push_back(PackNode(o, i, leaves_));
  return nodes;
}

double NoisyRangeTree::NodeTrueCount(uint64_t node_id) const {
  auto it = counts_.find(node_id);
  return it == counts_.end() ? 0.0 : static_cast<double>(it->second);
}

double NoisyRangeTree::NodeNoise(uint64_t node_id) const {
  if (noise_ == NoiseKind::kNone) return 0.0;
  SeededRng node_rng(DeriveSeed(noise_seed_, node_id));
  return noise_ == NoiseKind::kLaplace ? SampleLaplace(scale_, node_rng)
                                       : SampleGaussian(scale_, node_rng);
}

std::vector<uint64_t> NoisyRangeTree::PathIds1D(int coordinate) const {
  if (coordinate < 0 || coordinate > bound_)
    throw std::out_of_range("coordinate outside domain");
  std::vector<uint64_t> ids;
  for (uint64_t node = leaves_ + coordinate; node >= 1; node >>= 1)
    ids.push_back(node);
  return ids;
}

double NoisyRangeTree::Query1D(int y1, int y2) const {
  double total = 0.0;
  for (uint64_t node : Decompose1D(y1, y2))
    total += NodeTrueCount(node) + NodeNoise(node);
  return total;
}

double NoisyRangeTree::Query2D(int x1, int y1, int x2, int y2) const {
  double total = 0.0;
  for (uint64_t node : Decompose2D(x1, y1, x2, y2))
    total += NodeTrueCount(node) + NodeNoise(node);
  return total;
}

}  // namespace dpfreq
