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

#ifndef DPFREQ_EXPERIMENT_HPP_
#define DPFREQ_EXPERIMENT_HPP_

#include <string>
#include <vector>

#include "dpfreq/estimators.hpp"
#include "dpfreq/generators.hpp"

namespace dpfreq {

struct ErrorRow {
  int trial = 0;
  int t1 = 0;
  int t2 = 0;
  double estimate = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
};

// Per-query estimates vs. exact values across trials. empirical_alpha is the
// 0.9-quantile of per-query |error| (beta fixed at 0.1); rows retain the full
// error distribution so any beta can be recomputed.
struct ErrorReport {
  std::vector<ErrorRow> rows;
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double empirical_alpha = 0.0;
  int trials = 0;
  double wall_seconds = 0.0;
};

// Runs the configured estimator `trials` times with counter-derived seeds and
// compares each answer to the exact oracle. When max_queries > 0 and the
// query family is larger, a deterministic seed-derived subsample of the
// family is evaluated instead of every query.
ErrorReport RunExperiment(const EventStream& stream,
                          const EstimatorConfig& config, int trials,
                          int max_queries = 0);

// Recomputes the summary statistics from the rows (self-consistency hook).
void Summarize(ErrorReport& report);

enum class SweepAxis { kHorizon, kWindow, kThreshold, kEpsilon };

struct SweepPoint {
  double value = 0.0;
  ErrorReport report;
};

// One experiment per axis value (ascending), regenerating the stream per
// value where the axis changes it. Deterministic under a fixed master seed.
std::vector<SweepPoint> Sweep(SweepAxis axis, const std::vector<double>& values,
                              const GeneratorSpec& base_spec,
                              const EstimatorConfig& base_config, int trials,
                              int max_queries = 0);

std::string SweepAxisName(SweepAxis axis);

}  // namespace dpfreq

#endif  // DPFREQ_EXPERIMENT_HPP_
