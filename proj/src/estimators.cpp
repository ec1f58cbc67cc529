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

#include "dpfreq/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace dpfreq {
namespace {

EventStream Slice(const EventStream& stream, int lo, int hi) {
  EventStream out;
  out.horizon = hi - lo + 1;
  out.universe = stream.universe;
  out.regime = stream.regime;
  for (auto it = stream.entries.lower_bound(lo);
       it != stream.entries.end() && it->first <= hi; ++it)
    for (const auto& [u, c] : it->second) out.Add(it->first - lo + 1, u, c);
  return out;
}

void ValidateConfig(const EventStream& stream, const EstimatorConfig& config) {
  if (auto violation = ValidateStream(stream))
    throw std::invalid_argument("invalid stream: " + *violation);
  if (config.k < 1) throw std::invalid_argument("k must be >= 1");
  if (config.noise != NoiseKind::kNone && config.budget.epsilon <= 0)
    throw std::invalid_argument("epsilon must be positive");
  if (config.noise == NoiseKind::kGaussian && config.budget.delta <= 0)
    throw std::invalid_argument("gaussian noise requires delta > 0");
  if (config.level == DpLevel::kItem &&
      config.composition == CompositionKind::kAdvanced &&
      config.budget.delta <= 0)
    throw std::invalid_argument("advanced composition requires delta > 0");
  if (config.query == QueryKind::kFixedWindow &&
      (config.window < 1 || config.window > stream.horizon))
    throw std::invalid_argument("fixed-window needs 1 <= W <= T");
  if (config.singleton_wrapper) {
    if (stream.regime != Regime::kSingleton)
      throw std::invalid_argument("singleton wrapper rejects bundle streams");
    if (config.query == QueryKind::kFixedWindow)
      throw std::invalid_argument(
          "singleton wrapper supports cumulative and time-window kinds");
  }
}

PrivacyBudget SplitBudget(const PrivacyBudget& budget, CompositionKind kind,
                          int m) {
  return kind == CompositionKind::kBasic ? BasicSplit(budget, m)
                                         : AdvancedSplit(budget, m);
}

// The fixed-window reduction for one horizon-<=2W subinstance: two 1d trees
// over the padded occurrence lists, each at group_invert(half the budget, 2k).
class FixedWindowCore {
 public:
  FixedWindowCore(const EventStream& stream, int k, int window,
                  const PrivacyBudget& budget, NoiseKind noise, SeededRng& rng,
                  const std::string& label,
                  std::vector<BudgetLedgerEntry>& ledger) {
    if (stream.horizon > 2 * window)
      throw std::invalid_argument("fixed-window core requires T <= 2W");
    universe_ = stream.universe;
    const PrivacyBudget half{budget.epsilon / 2, budget.delta / 2};
    const PrivacyBudget per_tree = GroupInvert(half, 2 * k);
    const PrivacyBudget nominal{budget.epsilon / (4.0 * k),
                                budget.delta / (8.0 * k)};
    ledger.push_back({label, nominal, per_tree});
    const auto points = BuildFixedWindowPoints(BuildIndex(stream, k), window);
    const int bound = stream.horizon + 1;
    x_tree_ = NoisyRangeTree::Build1D(points.x, bound, per_tree, noise, rng);
    xp_tree_ =
        NoisyRangeTree::Build1D(points.x_prime, bound, per_tree, noise, rng);
  }

  // Estimate for the window starting at local step i.
  double Answer(int i) const {
    return universe_ - x_tree_->Query1D(0, i) + xp_tree_->Query1D(0, i);
  }

 private:
  int universe_ = 0;
  std::optional<NoisyRangeTree> x_tree_, xp_tree_;
};

class CumulativeEstimator : public Estimator {
 public:
  CumulativeEstimator(const EventStream& stream, int k,
                      const PrivacyBudget& budget, NoiseKind noise,
                      SeededRng& rng) {
    kind_ = QueryKind::kCumulative;
    k_ = k;
    horizon_ = stream.horizon;
    ledger_.push_back({"cumulative", budget, budget});
    tree_ = NoisyRangeTree::Build1D(CumulativePoints(stream, k),
                                    stream.horizon + 1, budget, noise, rng);
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    return tree_->Query1D(0, t2);
  }

 private:
  std::optional<NoisyRangeTree> tree_;
};

class FixedWindowEstimator : public Estimator {
 public:
  FixedWindowEstimator(const EventStream& stream,
                       const EstimatorConfig& config) {
    kind_ = QueryKind::kFixedWindow;
    k_ = config.k;
    horizon_ = stream.horizon;
    window_ = config.window;
    const int w = config.window;
    const int tiles = (stream.horizon + w - 1) / w;
    PrivacyBudget per_tile;
    if (config.level == DpLevel::kEvent) {
      // Parallel composition over odd tiles and over even tiles, then basic
      // composition of the two classes.
      per_tile = {config.budget.epsilon / 2, config.budget.delta / 2};
    } else {
      per_tile = SplitBudget(config.budget, config.composition, tiles);
    }
    SeededRng rng(config.seed);
    cores_.reserve(tiles);
    for (int j = 1; j <= tiles; ++j) {
      const int lo = (j - 1) * w + 1;
      const int hi = std::min((j + 1) * w, stream.horizon);
      cores_.emplace_back(Slice(stream, lo, hi), config.k, w, per_tile,
                          config.noise, rng, "tile " + std::to_string(j),
                          ledger_);
    }
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    const int tile = (t1 - 1) / window_;
    return cores_[tile].Answer(t1 - tile * window_);
  }

 private:
  std::vector<FixedWindowCore> cores_;
};

class TimeWindowEventEstimator : public Estimator {
 public:
  TimeWindowEventEstimator(const EventStream& stream,
                           const EstimatorConfig& config) {
    kind_ = QueryKind::kTimeWindow;
    k_ = config.k;
    horizon_ = stream.horizon;
    universe_ = stream.universe;
    bound_ = stream.horizon + 1;
    const PrivacyBudget half{config.budget.epsilon / 2,
                             config.budget.delta / 2};
    const PrivacyBudget per_tree = GroupInvert(half, 2 * config.k + 1);
    // Closed-form nominal split recorded for the ledger; the exact
    // group-privacy inversion above is what actually runs.
    const PrivacyBudget nominal{
        config.budget.epsilon / (2.0 * (2 * config.k + 1)),
        config.budget.delta /
            (4.0 * config.budget.epsilon * (2 * config.k + 1))};
    ledger_.push_back({"2d instance x", nominal, per_tree});
    ledger_.push_back({"2d instance x'", nominal, per_tree});
    const auto points = BuildTimeWindowPoints(BuildIndex(stream, config.k));
    SeededRng rng(config.seed);
    x_tree_ = NoisyRangeTree::Build2D(points.x, bound_, per_tree, config.noise,
                                      rng);
    xp_tree_ = NoisyRangeTree::Build2D(points.x_prime, bound_, per_tree,
                                       config.noise, rng);
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    // Points with first coordinate <= t1 and second coordinate >= t2 mark
    // items NOT reaching k occurrences in the window.
    return universe_ - x_tree_->Query2D(0, t2, t1, bound_) +
           xp_tree_->Query2D(0, t2, t1, bound_);
  }

 private:
  int universe_ = 0;
  int bound_ = 0;
  std::optional<NoisyRangeTree> x_tree_, xp_tree_;
};

class TimeWindowItemEstimator : public Estimator {
 public:
  TimeWindowItemEstimator(const EventStream& stream,
                          const EstimatorConfig& config)
      : stream_(stream), config_(config) {
    kind_ = QueryKind::kTimeWindow;
    k_ = config.k;
    horizon_ = stream.horizon;
    per_run_ =
        SplitBudget(config.budget, config.composition, stream.horizon);
    const PrivacyBudget nominal =
        BasicSplit(config.budget, stream.horizon);
    for (int t1 = 1; t1 <= stream.horizon; ++t1)
      ledger_.push_back({"cumulative run t1=" + std::to_string(t1),
                         config.composition == CompositionKind::kBasic
                             ? nominal
                             : per_run_,
                         per_run_});
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    auto it = runs_.find(t1);
    if (it == runs_.end()) {
      SeededRng rng(DeriveSeed(config_.seed, static_cast<uint64_t>(t1)));
      it = runs_
               .emplace(t1, CumulativeEstimator(Slice(stream_, t1,
                                                      stream_.horizon),
                                                config_.k, per_run_,
                                                config_.noise, rng))
               .first;
    }
    return it->second.Estimate(1, t2 - t1 + 1);
  }

 private:
  EventStream stream_;
  EstimatorConfig config_;
  PrivacyBudget per_run_;
  std::map<int, CumulativeEstimator> runs_;  // built on first use
};

class SingletonWrapperEstimator : public Estimator {
 public:
  SingletonWrapperEstimator(const EventStream& stream,
                            const EstimatorConfig& config) {
    kind_ = config.query;
    k_ = config.k;
    horizon_ = stream.horizon;
    block_ = config.singleton_block > 0
                 ? config.singleton_block
                 : DefaultSingletonBlock(stream.horizon, config.budget);
    EstimatorConfig inner_config = config;
    inner_config.singleton_wrapper = false;
    inner_config.level = DpLevel::kItem;
    inner_ = MakeEstimator(CompressTime(stream, block_), inner_config);
    ledger_.push_back({"singleton wrapper T'=" + std::to_string(block_),
                       config.budget, config.budget});
    for (const auto& entry : inner_->Ledger()) ledger_.push_back(entry);
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    auto [b1, b2] = CompressedWindow(t1, t2, block_);
    if (b1 > b2) return 0.0;
    return inner_->Estimate(b1, b2);
  }

  int block() const { return block_; }

 private:
  int block_ = 1;
  std::unique_ptr<Estimator> inner_;
};

class FreqEqualEstimator : public Estimator {
 public:
  FreqEqualEstimator(const EventStream& stream,
                     const EstimatorConfig& config) {
    kind_ = config.query;
    k_ = config.k;
    horizon_ = stream.horizon;
    window_ = config.window;
    EstimatorConfig half = config;
    half.budget = {config.budget.epsilon / 2, config.budget.delta / 2};
    half.seed = DeriveSeed(config.seed, 1);
    at_least_k_ = MakeEstimator(stream, half);
    half.k = config.k + 1;
    half.seed = DeriveSeed(config.seed, 2);
    at_least_k1_ = MakeEstimator(stream, half);
    ledger_.push_back({"freq>=k at half budget", half.budget, half.budget});
    ledger_.push_back({"freq>=k+1 at half budget", half.budget, half.budget});
    for (const auto* inner : {at_least_k_.get(), at_least_k1_.get()})
      for (const auto& entry : inner->Ledger()) ledger_.push_back(entry);
  }

  double Estimate(int t1, int t2) override {
    CheckQuery(t1, t2);
    return at_least_k_->Estimate(t1, t2) - at_least_k1_->Estimate(t1, t2);
  }

 private:
  std::unique_ptr<Estimator> at_least_k_, at_least_k1_;
};

}  // namespace

std::vector<std::pair<int, int>> Estimator::Queries() const {
  std::vector<std::pair<int, int>> queries;
  switch (kind_) {
    case QueryKind::kCumulative:
      for (int t = 1; t <= horizon_; ++t) queries.emplace_back(1, t);
      break;
    case QueryKind::kFixedWindow:
      for (int i = 1; i + window_ - 1 <= horizon_; ++i)
        queries.emplace_back(i, i + window_ - 1);
      break;
    case QueryKind::kTimeWindow:
      for (int t1 = 1; t1 <= horizon_; ++t1)
        for (int t2 = t1; t2 <= horizon_; ++t2) queries.emplace_back(t1, t2);
      break;
  }
  return queries;
}

EstimateTable Estimator::Table() {
  EstimateTable table;
  table.kind = kind_;
  table.k = k_;
  table.horizon = horizon_;
  table.window = window_;
  for (auto [t1, t2] : Queries())
    table.rows.emplace_back(t1, t2, Estimate(t1, t2));
  table.ledger = ledger_;
  return table;
}

void Estimator::CheckQuery(int t1, int t2) const {
  if (t1 < 1 || t2 > horizon_ || t1 > t2)
    throw std::out_of_range("query [" + std::to_string(t1) + ", " +
                            std::to_string(t2) + "] outside [1, " +
                            std::to_string(horizon_) + "]");
  switch (kind_) {
    case QueryKind::kCumulative:
      if (t1 != 1)
        throw std::out_of_range("cumulative queries require t1 = 1");
      break;
    case QueryKind::kFixedWindow:
      if (t2 - t1 + 1 != window_)
        throw std::out_of_range("fixed-window queries require t2-t1+1 = W");
      break;
    case QueryKind::kTimeWindow:
      break;
  }
}

std::unique_ptr<Estimator> MakeEstimator(const EventStream& stream,
                                         const EstimatorConfig& config) {
  ValidateConfig(stream, config);
  if (config.singleton_wrapper)
    return std::make_unique<SingletonWrapperEstimator>(stream, config);
  switch (config.query) {
    case QueryKind::kCumulative: {
      SeededRng rng(config.seed);
      return std::make_unique<CumulativeEstimator>(
          stream, config.k, config.budget, config.noise, rng);
    }
    case QueryKind::kFixedWindow:
      return std::make_unique<FixedWindowEstimator>(stream, config);
    case QueryKind::kTimeWindow:
      if (config.level == DpLevel::kEvent)
        return std::make_unique<TimeWindowEventEstimator>(stream, config);
      return std::make_unique<TimeWindowItemEstimator>(stream, config);
  }
  throw std::logic_error("unreachable");
}

std::unique_ptr<Estimator> MakeFreqEqualEstimator(
    const EventStream& stream, const EstimatorConfig& config) {
  ValidateConfig(stream, config);
  return std::make_unique<FreqEqualEstimator>(stream, config);
}

int DefaultSingletonBlock(int horizon, const PrivacyBudget& budget) {
  const double t = horizon;
  const double block =
      budget.pure() ? std::sqrt(t / budget.epsilon)
                    : std::cbrt(t / (budget.epsilon * budget.epsilon));
  return std::max(1, static_cast<int>(std::ceil(block)));
}

std::vector<int> CumulativePoints(const EventStream& stream, int k) {
  std::map<int, int> seen;  // item -> occurrences so far
  std::vector<int> points;
  for (const auto& [t, step] : stream.entries) {
    for (const auto& [u, c] : step) {
      auto& n = seen[u];
      if (n < k && n + c >= k) points.push_back(t);
      n += static_cast<int>(std::min<long long>(c, k));
    }
  }
  return points;
}

FixedWindowPointSets BuildFixedWindowPoints(const OccurrenceIndex& index,
                                            int window) {
  FixedWindowPointSets out;
  const int k = index.k;
  for (const auto& times : index.times) {
    const int m = static_cast<int>(times.size());
    for (int l = 0; l + k < m; ++l) {
      if (times[l + k] - times[l] > window) {
        // The pair encodes the indicator 1[t^l < i <= min(t^{l+1},
        // t^{l+k} - W)] as a difference of prefix counts at i, so both
        // endpoints shift by one; duplicate occurrence times yield equal
        // points in x and x' that cancel for every query.
        out.x.push_back(times[l] + 1);
        out.x_prime.push_back(
            std::min(times[l + 1] + 1, times[l + k] - window + 1));
      }
    }
  }
  return out;
}

TimeWindowPointSets BuildTimeWindowPoints(const OccurrenceIndex& index) {
  TimeWindowPointSets out;
  const int k = index.k;
  const int bound = index.horizon + 1;
  for (const auto& times : index.times) {
    const int m = static_cast<int>(times.size());
    for (int l = 0; l + k < m; ++l) {
      out.x.emplace_back(times[l] + 1, times[l + k] - 1);
      // First coordinate can reach T+2 when t^{l+1} = T+1; clamped points
      // fall outside every valid query rectangle.
      out.x_prime.emplace_back(std::min(times[l + 1] + 1, bound),
                               times[l + k] - 1);
    }
  }
  return out;
}

}  // namespace dpfreq
