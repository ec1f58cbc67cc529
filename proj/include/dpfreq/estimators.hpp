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

#ifndef DPFREQ_ESTIMATORS_HPP_
#define DPFREQ_ESTIMATORS_HPP_

#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dpfreq/occurrence.hpp"
#include "dpfreq/privacy.hpp"
#include "dpfreq/range_tree.hpp"
#include "dpfreq/stream.hpp"

namespace dpfreq {

enum class QueryKind { kCumulative, kFixedWindow, kTimeWindow };
enum class DpLevel { kEvent, kItem };
enum class CompositionKind { kBasic, kAdvanced };

struct EstimatorConfig {
  QueryKind query = QueryKind::kCumulative;
  int k = 1;
  int window = 0;  // W; fixed-window only
  DpLevel level = DpLevel::kEvent;
  PrivacyBudget budget{1.0, 0.0};
  CompositionKind composition = CompositionKind::kBasic;  // item-level only
  NoiseKind noise = NoiseKind::kLaplace;
  uint64_t seed = 0;
  // Wrap with the singleton time-compression transform (singleton streams
  // only; cumulative and time-window kinds). 0 picks the default block
  // length: ceil(sqrt(T/eps)) for pure DP, ceil((T/eps^2)^(1/3)) otherwise.
  bool singleton_wrapper = false;
  int singleton_block = 0;
};

// One subinstance's budget: the closed-form nominal split and the exact
// group-privacy inversion actually applied.
struct BudgetLedgerEntry {
  std::string label;
  PrivacyBudget nominal;
  PrivacyBudget used;
};

struct EstimateTable {
  QueryKind kind = QueryKind::kCumulative;
  int k = 1;
  int horizon = 0;
  int window = 0;
  std::vector<std::tuple<int, int, double>> rows;  // (t1, t2, estimate)
  std::vector<BudgetLedgerEntry> ledger;
};

// A built private Freq>=k estimator. Estimate() answers any query of the
// configured family; internal subinstances may be instantiated lazily but
// every answer is a pure function of (stream, config), independent of the
// order queries are asked in.
class Estimator {
 public:
  virtual ~Estimator() = default;

  virtual double Estimate(int t1, int t2) = 0;

  QueryKind kind() const { return kind_; }
  int k() const { return k_; }
  int horizon() const { return horizon_; }
  int window() const { return window_; }
  const std::vector<BudgetLedgerEntry>& Ledger() const { return ledger_; }

  // The full query family implied by the kind.
  std::vector<std::pair<int, int>> Queries() const;
  EstimateTable Table();

 protected:
  void CheckQuery(int t1, int t2) const;

  QueryKind kind_ = QueryKind::kCumulative;
  int k_ = 1;
  int horizon_ = 0;
  int window_ = 0;
  std::vector<BudgetLedgerEntry> ledger_;
};

// Builds the estimator selected by the config; validates config against the
// stream (regime, window range, delta requirements) and throws
// std::invalid_argument on mismatch.
std::unique_ptr<Estimator> MakeEstimator(const EventStream& stream,
                                         const EstimatorConfig& config);

// Freq=k via the difference of Freq>=k and Freq>=k+1, each at half budget.
std::unique_ptr<Estimator> MakeFreqEqualEstimator(const EventStream& stream,
                                                  const EstimatorConfig& config);

// Default singleton block length for the wrapper.
int DefaultSingletonBlock(int horizon, const PrivacyBudget& budget);

// --- Point-set reductions (exposed for sensitivity and identity tests) ---

// One 1d point per item with >= k unpadded occurrences, at the time of its
// k-th occurrence; items with fewer occurrences contribute no point.
std::vector<int> CumulativePoints(const EventStream& stream, int k);

struct FixedWindowPointSets {
  std::vector<int> x;
  std::vector<int> x_prime;
};

// For every item u and l in [1, m_u - k] with t^{l+k} - t^l > W: t^l + 1 goes
// to x and min{t^{l+1} + 1, t^{l+k} - W + 1} to x'. The shifts turn the
// interval indicator 1[t^l < i <= min{t^{l+1}, t^{l+k} - W}] into an exact
// difference of prefix counts at i.
FixedWindowPointSets BuildFixedWindowPoints(const OccurrenceIndex& index,
                                            int window);

struct TimeWindowPointSets {
  std::vector<std::pair<int, int>> x;
  std::vector<std::pair<int, int>> x_prime;
};

// For every item u and l in [1, m_u - k]: (t^l + 1, t^{l+k} - 1) goes to x
// and (t^{l+1} + 1, t^{l+k} - 1) to x', first coordinates clamped to
// M = T + 1 (clamped points are never counted by any valid query).
TimeWindowPointSets BuildTimeWindowPoints(const OccurrenceIndex& index);

}  // namespace dpfreq

#endif  // DPFREQ_ESTIMATORS_HPP_
