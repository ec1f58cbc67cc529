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

#include "dpfreq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dpfreq {
namespace {

// Deterministic subsample without replacement (partial Fisher-Yates).
std::vector<std::pair<int, int>> SubsampleQueries(
    std::vector<std::pair<int, int>> queries, int max_queries, uint64_t seed) {
  if (max_queries <= 0 ||
      static_cast<size_t>(max_queries) >= queries.size())
    return queries;
  SeededRng rng(DeriveSeed(seed, 0x5eedU));
  for (int i = 0; i < max_queries; ++i) {
    const size_t j =
        i + static_cast<size_t>(rng.NextUnit() * (queries.size() - i));
    std::swap(queries[i], queries[j]);
  }
  queries.resize(max_queries);
  return queries;
}

}  // namespace

void Summarize(ErrorReport& report) {
  report.max_abs_error = 0.0;
  report.mean_abs_error = 0.0;
  report.empirical_alpha = 0.0;
  if (report.rows.empty()) return;
  double total = 0.0;
  std::vector<double> errors;
  errors.reserve(report.rows.size());
  for (const auto& row : report.rows) {
    report.max_abs_error = std::max(report.max_abs_error, row.abs_error);
    total += row.abs_error;
    errors.push_back(row.abs_error);
  }
  report.mean_abs_error = total / errors.size();
  // Empirical alpha at beta = 0.1: the 0.9-quantile of |error|.
  const size_t idx = static_cast<size_t>(
      std::min<double>(errors.size() - 1, std::ceil(0.9 * errors.size()) - 1));
  std::nth_element(errors.begin(), errors.begin() + idx, errors.end());
  report.empirical_alpha = errors[idx];
}

ErrorReport RunExperiment(const EventStream& stream,
                          const EstimatorConfig& config, int trials,
                          int max_queries) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  ErrorReport report;
  report.trials = trials;

  std::vector<std::pair<int, int>> queries;
  std::vector<double> exact;
  for (int trial = 0; trial < trials; ++trial) {
    EstimatorConfig trial_config = config;
    trial_config.seed = DeriveSeed(config.seed, static_cast<uint64_t>(trial));
    auto estimator = MakeEstimator(stream, trial_config);
    if (trial == 0) {
      queries = SubsampleQueries(estimator->Queries(), max_queries,
                                 config.seed);
      exact.reserve(queries.size());
      for (auto [t1, t2] : queries)
        exact.push_back(static_cast<double>(
            ExactFreqAtLeast(stream, config.k, t1, t2)));
    }
    for (size_t q = 0; q < queries.size(); ++q) {
      const auto [t1, t2] = queries[q];
      const double estimate = estimator->Estimate(t1, t2);
      report.rows.push_back({trial, t1, t2, estimate, exact[q],
                             std::abs(estimate - exact[q])});
    }
  }
  Summarize(report);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::vector<SweepPoint> Sweep(SweepAxis axis,
                              const std::vector<double>& values,
                              const GeneratorSpec& base_spec,
                              const EstimatorConfig& base_config, int trials,
                              int max_queries) {
  if (!std::is_sorted(values.begin(), values.end()))
    throw std::invalid_argument("sweep values must be ascending");
  std::vector<SweepPoint> points;
  for (double value : values) {
    GeneratorSpec spec = base_spec;
    EstimatorConfig config = base_config;
    switch (axis) {
      case SweepAxis::kHorizon:
        spec.horizon = static_cast<int>(value);
        break;
      case SweepAxis::kWindow:
        config.window = static_cast<int>(value);
        break;
      case SweepAxis::kThreshold:
        spec.k = static_cast<int>(value);
        config.k = static_cast<int>(value);
        break;
      case SweepAxis::kEpsilon:
        config.budget.epsilon = value;
        break;
    }
    const EventStream stream = Generate(spec);
    SweepPoint point;
    point.value = value;
    point.report = RunExperiment(stream, config, trials, max_queries);
    points.push_back(std::move(point));
  }
  return points;
}

std::string SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kHorizon: return "T";
    case SweepAxis::kWindow: return "W";
    case SweepAxis::kThreshold: return "k";
    case SweepAxis::kEpsilon: return "epsilon";
  }
  return "?";
}

}  // namespace dpfreq
