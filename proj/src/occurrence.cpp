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

#include "dpfreq/occurrence.hpp"

#include <stdexcept>
#include <unordered_map>

namespace dpfreq {
namespace {

void CheckWindow(const EventStream& stream, int k, int t1, int t2) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (t1 < 1 || t2 > stream.horizon || t1 > t2)
    throw std::out_of_range("window [" + std::to_string(t1) + ", " +
                            std::to_string(t2) + "] outside [1, " +
                            std::to_string(stream.horizon) + "]");
}

std::unordered_map<int, long long> WindowCounts(const EventStream& stream,
                                                int t1, int t2) {
  std::unordered_map<int, long long> sums;
  for (auto it = stream.entries.lower_bound(t1);
       it != stream.entries.end() && it->first <= t2; ++it)
    for (const auto& [u, c] : it->second) sums[u] += c;
  return sums;
}

}  // namespace

OccurrenceIndex BuildIndex(const EventStream& stream, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  OccurrenceIndex index;
  index.k = k;
  index.horizon = stream.horizon;
  index.times.assign(stream.universe, {});
  for (auto& list : index.times) list.assign(k, 0);
  for (const auto& [t, step] : stream.entries)
    for (const auto& [u, c] : step)
      index.times[u - 1].insert(index.times[u - 1].end(), c, t);
  for (auto& list : index.times)
    list.insert(list.end(), k, stream.horizon + 1);
  return index;
}

long long ExactFreqAtLeast(const EventStream& stream, int k, int t1, int t2) {
  CheckWindow(stream, k, t1, t2);
  long long count = 0;
  for (const auto& [u, sum] : WindowCounts(stream, t1, t2))
    if (sum >= k) ++count;
  return count;
}

long long ExactFreqEqual(const EventStream& stream, int k, int t1, int t2) {
  CheckWindow(stream, k, t1, t2);
  long long count = 0;
  for (const auto& [u, sum] : WindowCounts(stream, t1, t2))
    if (sum == k) ++count;
  return count;
}

}  // namespace dpfreq
