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

#ifndef DPFREQ_OCCURRENCE_HPP_
#define DPFREQ_OCCURRENCE_HPP_

#include <vector>

#include "dpfreq/stream.hpp"

namespace dpfreq {

// Per-item sorted occurrence-time sequences over {0, ..., T+1}, padded with
// k sentinel occurrences at 0 and k at T+1. Each t in [1, T] appears exactly
// S^t_u times in item u's list; every item, occurring or not, gets a list of
// length 2k + sum_t S^t_u.
struct OccurrenceIndex {
  int k = 1;
  int horizon = 0;
  // times[u - 1] holds item u's padded list.
  std::vector<std::vector<int>> times;
};

OccurrenceIndex BuildIndex(const EventStream& stream, int k);

// |{u : S^{[t1,t2]}_u >= k}| from raw counts; the brute-force oracle every
// estimator is tested against. Sentinels play no role here.
long long ExactFreqAtLeast(const EventStream& stream, int k, int t1, int t2);

// |{u : S^{[t1,t2]}_u == k}| exactly.
long long ExactFreqEqual(const EventStream& stream, int k, int t1, int t2);

}  // namespace dpfreq

#endif  // DPFREQ_OCCURRENCE_HPP_
